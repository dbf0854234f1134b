#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bigrady/error.h"
#include "bigrady/sorting.h"
#include "oracles/brute_sorts.h"
#include "oracles/random_bigraph.h"

namespace bigrady {
namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidModel;
}

SortExpr child_expr(const SortScheme& s, const char* sort) { return *s.find(sort)->members[0].children; }

TEST(ParseScheme, PaperExamples) {
  SortScheme s = parse_sort_scheme("sort sr = Cont; sort srt = SRType sr × sr*; sort e = ExpiryDate");
  EXPECT_EQ(to_string(child_expr(s, "srt")), "sr × sr*");
  EXPECT_FALSE(s.find("e")->members[0].children);
  EXPECT_EQ(kind_of([] { parse_sort_scheme("sort y; sort x = A y**"); }), ErrorKind::kSyntaxError);
}

TEST(ParseScheme, PortsParametersAndAliases) {
  SortScheme s = parse_sort_scheme(R"(
    sort a, sort p, sort tp, sort sy, sort et
    sort sr = Cont{a -> (p + tp) & sy + et} | Proc{a → (p + tp) × sy + et}
    sort cr = C(1) | C(2)
    sort l = L(Ireland) cr* | L cr
  )");
  const SortDecl* sr = s.find("sr");
  ASSERT_EQ(sr->members.size(), 2u);
  EXPECT_EQ(sr->members[1].ports[0].port_sort, "a");
  EXPECT_EQ(to_string(sr->members[0].ports[0].peers), "(p + tp) × sy + et");
  EXPECT_EQ(*s.find("cr")->members[1].param, "2");
  Control ireland{"L", std::string("Ireland"), 0, false};
  Control us{"L", std::string("US"), 0, false};
  EXPECT_EQ(to_string(*s.member_for(ireland).second->children), "cr*");
  EXPECT_EQ(to_string(*s.member_for(us).second->children), "cr");
  EXPECT_TRUE(s.warnings.empty());
}

TEST(ParseScheme, Errors) {
  EXPECT_EQ(kind_of([] { parse_sort_scheme("sort a = A; sort b = B | A"); }), ErrorKind::kDuplicateControlSort);
  EXPECT_EQ(kind_of([] { parse_sort_scheme("sort a = A zz*"); }), ErrorKind::kUndeclaredSort);
  EXPECT_EQ(kind_of([] { parse_sort_scheme("sort a = A b +"); }), ErrorKind::kSyntaxError);
  EXPECT_EQ(kind_of([] { parse_sort_scheme("sort = A"); }), ErrorKind::kSyntaxError);
  try {
    parse_sort_scheme("sort a = A\n  sort b = B q", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndeclaredSort);
    EXPECT_EQ(e.pos().line, 11);
    EXPECT_EQ(e.pos().column, 14);
  }
}

TEST(ParseScheme, Warnings) {
  SortScheme s = parse_sort_scheme("sort c, sort st; sort scm = Scheme{sc -> c*}; sort certf = Cert{c -> sc}");
  ASSERT_EQ(s.warnings.size(), 2u);
  EXPECT_NE(s.warnings[0].find("'sc'"), std::string::npos);
  EXPECT_NE(s.warnings[1].find("'st'"), std::string::npos);
  EXPECT_TRUE(s.find("sc")->implicit);
}

TEST(ParseScheme, ExpressionsRoundTrip) {
  for (const char* text : {"s*", "s × s*", "s + 1", "(s + t) × u*", "(s × t)*", "(s + t)* × (u + 1)", "1"}) {
    SortScheme s = parse_sort_scheme(std::string("sort s, sort t, sort u; sort z = Z ") + text);
    EXPECT_EQ(to_string(child_expr(s, "z")), text);
  }
}

SortExpr expr(const char* text) {
  return child_expr(parse_sort_scheme(std::string("sort s, sort t, sort u; sort z = Z ") + text), "z");
}

TEST(Satisfies, TableOfCombinators) {
  EXPECT_TRUE(satisfies(expr("s*"), {}, false));
  EXPECT_TRUE(satisfies(expr("s*"), {"s", "s"}, false));
  EXPECT_FALSE(satisfies(expr("s × s*"), {}, false));
  EXPECT_TRUE(satisfies(expr("s × s*"), {"s"}, false));
  EXPECT_TRUE(satisfies(expr("s × t"), {"t", "s"}, false));
  EXPECT_FALSE(satisfies(expr("s × t"), {"s"}, false));
  EXPECT_TRUE(satisfies(expr("s × t"), {"s"}, true));
  EXPECT_TRUE(satisfies(expr("s + t"), {"t"}, false));
  EXPECT_FALSE(satisfies(expr("s + t"), {"s", "t"}, false));
  EXPECT_TRUE(satisfies(expr("s + 1"), {}, false));
  EXPECT_FALSE(satisfies(expr("s + 1"), {"u"}, true));
  EXPECT_FALSE(satisfies(expr("1"), {"s"}, true));
}

SortExpr random_expr(std::mt19937& rng, int depth, const std::vector<std::string>& sorts) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (depth == 0 || pick(0, 3) == 0) {
    int r = pick(0, static_cast<int>(sorts.size()));
    return r == static_cast<int>(sorts.size()) ? SortExpr::one() : SortExpr::named(sorts[r]);
  }
  switch (pick(0, 2)) {
    case 0: {
      SortExpr inner = random_expr(rng, depth - 1, sorts);
      if (inner.kind == SortExpr::Kind::kStar) return inner;
      return SortExpr::star(std::move(inner));
    }
    case 1:
      return {SortExpr::Kind::kProd, {}, {random_expr(rng, depth - 1, sorts), random_expr(rng, depth - 1, sorts)}};
    default:
      return {SortExpr::Kind::kSum, {}, {random_expr(rng, depth - 1, sorts), random_expr(rng, depth - 1, sorts)}};
  }
}

TEST(Satisfies, AgreesWithEnumeration) {
  std::mt19937 rng(31);
  std::vector<std::string> sorts{"s", "t", "u"};
  int accepted = 0;
  for (int trial = 0; trial < 600; ++trial) {
    SortExpr e = random_expr(rng, 2, sorts);
    const bool open = trial % 2;
    testing::Multiset m;
    const int size = std::uniform_int_distribution<int>(0, open ? 3 : 4)(rng);
    for (int i = 0; i < size; ++i) m.push_back(sorts[std::uniform_int_distribution<int>(0, 2)(rng)]);
    const bool want = testing::brute_satisfies(e, m, open ? 6 : 0);
    accepted += want;
    ASSERT_EQ(satisfies(e, m, open), want) << to_string(e) << " open=" << open << " size=" << size;
  }
  EXPECT_GT(accepted, 100);
}

// Five sorts: three place sorts over A/B/C/D and two port sorts.
SortScheme random_scheme(std::mt19937& rng) {
  std::vector<std::string> place{"sA", "sB", "sCD"};
  std::vector<std::string> port{"x", "y"};
  auto pick_port = [&] { return port[std::uniform_int_distribution<int>(0, 1)(rng)]; };
  auto peer = [&] { return random_expr(rng, 2, port); };
  SortScheme s;
  s.decls.push_back({"x", {}, false});
  s.decls.push_back({"y", {}, false});
  s.decls.push_back({"sA", {{"A", std::nullopt, {}, random_expr(rng, 2, place)}}, false});
  s.decls.push_back({"sB", {{"B", std::nullopt, {{pick_port(), peer()}}, random_expr(rng, 2, place)}}, false});
  s.decls.push_back({"sCD",
                     {{"C", std::nullopt, {{pick_port(), peer()}, {pick_port(), peer()}}, random_expr(rng, 2, place)},
                      {"D", std::nullopt, {{pick_port(), peer()}}, std::nullopt}},
                     false});
  return s;
}

TEST(CheckSorts, AgreesWithBruteForceOnSmallInstances) {
  std::mt19937 rng(37);
  int flagged = 0;
  int clean = 0;
  for (int trial = 0; trial < 400; ++trial) {
    SortScheme scheme = random_scheme(rng);
    testing::RandomShape shape;
    shape.max_nodes = 6;
    shape.alphabet = 4;
    shape.open_prob = 0;
    Bigraph b = testing::random_bigraph(rng, shape);
    auto got = check_sorts(scheme, b);
    std::set<std::tuple<bool, int, std::string>> got_set;
    for (const auto& d : got) got_set.insert({d.where == SortDiagnostic::Where::kLink, d.index, d.constraint});
    auto want = testing::brute_diagnostics(scheme, b);
    ASSERT_EQ(got_set, want) << to_string(b);
    (want.empty() ? clean : flagged)++;
  }
  EXPECT_GT(flagged, 50);
  EXPECT_GT(clean, 20);
}

TEST(CheckSorts, DiagnosticsPointAtOffender) {
  SortScheme s = parse_sort_scheme(R"(
    sort c, sort p, sort d
    sort cr = C(1) | C(2)
    sort scm = Scheme{sc -> c*} cr × cr*
    sort ad = Adeq{d -> p × p*}
    sort pnt = P{p -> d + 1}
    sort sr = Cont{a -> p}
  )");
  Signature sig;
  sig.add(ControlDecl{"C", 0, true, true, {"1", "2"}});
  sig.add("Scheme", 1);
  sig.add("Adeq", 1, true);
  sig.add("P", 1, true);
  sig.add("Cont", 1, true);

  BigraphSpec nested;
  int sc = nested.add_node("Scheme", Parent::region(0), {"s"});
  nested.add_node("C", Parent::node(sc), {}, std::string("1"));
  int adeq = nested.add_node("Adeq", Parent::node(sc), {"a"});
  nested.add_node("P", Parent::region(0), {"a"});
  nested.closed = {"s", "a"};
  auto d1 = check_sorts(s, build_bigraph(sig, nested));
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1[0].where, SortDiagnostic::Where::kNode);
  EXPECT_EQ(d1[0].index, adeq);
  EXPECT_EQ(d1[0].constraint, "Scheme cr × cr*");

  BigraphSpec linked;
  int sc2 = linked.add_node("Scheme", Parent::region(0), {"s"});
  linked.add_node("C", Parent::node(sc2), {}, std::string("2"));
  linked.add_node("Cont", Parent::region(0), {"s"});
  linked.closed = {"s"};
  Bigraph b2 = build_bigraph(sig, linked);
  auto d2 = check_sorts(s, b2);
  ASSERT_EQ(d2.size(), 2u);
  for (const auto& d : d2) {
    EXPECT_EQ(d.where, SortDiagnostic::Where::kLink);
    EXPECT_EQ(d.index, b2.link_of(0, 0));
  }
  EXPECT_EQ(d2[1].constraint, "Cont{a → p}");

  BigraphSpec empty_scheme;
  empty_scheme.add_node("Scheme", Parent::region(0), {"s"});
  empty_scheme.closed = {"s"};
  auto d3 = check_sorts(s, build_bigraph(sig, empty_scheme));
  ASSERT_EQ(d3.size(), 1u);
  EXPECT_EQ(d3[0].index, 0);
}

TEST(CheckSorts, UnsortedControl) {
  SortScheme s = parse_sort_scheme("sort a = A");
  Signature sig;
  sig.add("B", 0);
  BigraphSpec spec;
  spec.add_node("B", Parent::region(0));
  EXPECT_EQ(kind_of([&] { check_sorts(s, build_bigraph(sig, spec)); }), ErrorKind::kUnsortedControl);
}

TEST(CheckRules, SitesAndNamesAreWildcards) {
  SortScheme s = parse_sort_scheme(R"(
    sort c, sort t
    sort cr = Crit
    sort scm = Scheme{sc -> c*} cr × cr*
    sort ctr = Contract{t -> t × t*} s + 1
    sort s = SCCs
    sort sys = FB cr*
  )");
  Signature sig;
  sig.add("Crit", 0, true);
  sig.add("Scheme", 1);
  sig.add("Contract", 1);
  sig.add("SCCs", 0, true);
  sig.add("FB", 0);
  // Scheme{s}.id -> Scheme{s}.id: a site may stand for the criteria.
  BigraphSpec l;
  int sc = l.add_node("Scheme", Parent::region(0), {"s"});
  l.add_site(Parent::node(sc));
  Bigraph side = build_bigraph(sig, l);
  EXPECT_TRUE(check_rules(s, {make_rule("keep", side, side)}).empty());
  // Contract{t} with an open name: its peers are outside the rule.
  BigraphSpec c;
  c.add_node("Contract", Parent::region(0), {"t"});
  Bigraph contract = build_bigraph(sig, c);
  EXPECT_TRUE(check_rules(s, {make_rule("c", contract, contract)}).empty());
  // Nesting a Contract in FB is wrong whatever the site holds.
  BigraphSpec r;
  int fb = r.add_node("FB", Parent::region(0));
  r.add_node("Contract", Parent::node(fb), {"t"});
  r.add_site(Parent::node(fb));
  BigraphSpec l2;
  int fb2 = l2.add_node("FB", Parent::region(0));
  l2.add_site(Parent::node(fb2));
  l2.add_node("Contract", Parent::region(0), {"t"});
  auto d = check_rules(s, {make_rule("bad", build_bigraph(sig, l2), build_bigraph(sig, r))});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].context, "rule bad reactum");
  EXPECT_EQ(d[0].index, 1);
}

}  // namespace
}  // namespace bigrady
