#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>
#include <tuple>

#include "bigrady/canonical.h"
#include "bigrady/engine.h"
#include "bigrady/error.h"
#include "whatsapp_example.h"
#include "oracles/brute_iso.h"
#include "oracles/brute_match.h"
#include "oracles/random_bigraph.h"

namespace bigrady {
namespace {

Signature toy_signature() {
  Signature sig;
  sig.add("A", 0);
  sig.add("B", 1);
  sig.add("C", 2);
  sig.add("D", 1, true);
  sig.add("Zero", 0, true);
  sig.add("One", 0, true);
  sig.add("Two", 0, true);
  sig.add("Seed", 0, true);
  sig.add("Dup", 0);
  sig.add("Box", 0);
  sig.add("T", 1, true);
  return sig;
}

Bigraph single(const char* control) {
  BigraphSpec s;
  s.add_node(control, Parent::region(0));
  return build_bigraph(toy_signature(), s);
}

ReactionRule swap_rule(const char* name, const char* from, const char* to) {
  return make_rule(name, single(from), single(to));
}

TEST(Rewrite, TransDTurnsWhatsappaIntoWhatsappc) {
  ReactionRule rule = testing::trans_d();
  auto next = apply_rule(rule, testing::whatsapp_before());
  ASSERT_EQ(next.size(), 1u);
  EXPECT_TRUE(is_isomorphic(next[0], testing::whatsapp_after())) << to_string(next[0]);
  EXPECT_TRUE(testing::brute_isomorphic(next[0], testing::whatsapp_after()));
}

TEST(Rewrite, IdentityRuleIsASelfLoop) {
  ReactionRule rule = make_rule("same", testing::trans_d().redex, testing::trans_d().redex);
  TransitionSystem ts = build_transition_system(testing::whatsapp_before(), {{rule}}, {});
  EXPECT_EQ(ts.states.size(), 1u);
  ASSERT_EQ(ts.transitions.size(), 1u);
  EXPECT_EQ(ts.transitions[0], (Transition{0, "same", 0}));
}

TEST(Rewrite, EtaDuplicatesClosedEdgesAndSharesNames) {
  Signature sig = toy_signature();
  BigraphSpec l;
  int d = l.add_node("Dup", Parent::region(0));
  l.add_site(Parent::node(d));
  BigraphSpec r;
  int b0 = r.add_node("Box", Parent::region(0));
  r.add_site(Parent::node(b0));
  int b1 = r.add_node("Box", Parent::region(0));
  r.add_site(Parent::node(b1));
  ReactionRule rule = make_rule("dup", build_bigraph(sig, l), build_bigraph(sig, r), {0, 0});

  BigraphSpec t;
  int td = t.add_node("Dup", Parent::region(0));
  t.add_node("T", Parent::node(td), {"e"});
  t.add_node("T", Parent::node(td), {"e"});
  t.add_node("T", Parent::node(td), {"o"});
  t.closed = {"e"};
  auto next = apply_rule(rule, build_bigraph(sig, t));
  ASSERT_EQ(next.size(), 1u);

  BigraphSpec want;
  for (const char* e : {"e1", "e2"}) {
    int b = want.add_node("Box", Parent::region(0));
    want.add_node("T", Parent::node(b), {e});
    want.add_node("T", Parent::node(b), {e});
    want.add_node("T", Parent::node(b), {"o"});
  }
  want.closed = {"e1", "e2"};
  Bigraph expected = build_bigraph(sig, want);
  EXPECT_TRUE(testing::brute_isomorphic(next[0], expected)) << to_string(next[0]);
  EXPECT_EQ(next[0].outer_names().size(), 1u);
}

TEST(Rewrite, InvalidRules) {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidModel;
  };
  Signature sig = toy_signature();
  Bigraph empty = build_bigraph(sig, BigraphSpec{});
  EXPECT_EQ(kind([&] { make_rule("r", empty, empty); }), ErrorKind::kInvalidRule);
  EXPECT_EQ(kind([&] { make_rule("r", single("A"), testing::whatsapp_before()); }), ErrorKind::kInvalidRule);
  EXPECT_EQ(kind([&] { make_rule("r", single("A"), single("One"), {3}); }), ErrorKind::kInvalidRule);
}

TEST(Explore, CounterHasThreeStates) {
  PriorityClasses classes{{swap_rule("inc", "Zero", "One"), swap_rule("inc2", "One", "Two")}};
  std::vector<Predicate> preds{{"done", single("Two")}};
  TransitionSystem ts = build_transition_system(single("Zero"), classes, preds);
  ASSERT_EQ(ts.states.size(), 3u);
  ASSERT_EQ(ts.transitions.size(), 3u);
  EXPECT_EQ(ts.transitions[0], (Transition{0, "inc", 1}));
  EXPECT_EQ(ts.transitions[1], (Transition{1, "inc2", 2}));
  EXPECT_EQ(ts.transitions[2], (Transition{2, kDeadlockRule, 2}));
  EXPECT_TRUE(ts.has_label(2, "done"));
  EXPECT_FALSE(ts.has_label(0, "done"));
}

TEST(Explore, NoRulesGivesOneDeadlockedState) {
  TransitionSystem ts = build_transition_system(single("Zero"), {}, {});
  EXPECT_EQ(ts.states.size(), 1u);
  ASSERT_EQ(ts.transitions.size(), 1u);
  EXPECT_EQ(ts.transitions[0].rule, kDeadlockRule);
}

TEST(Explore, HigherClassPreemptsLower) {
  PriorityClasses classes{{swap_rule("hi", "Zero", "One")}, {swap_rule("lo", "Zero", "Two")}};
  TransitionSystem ts = build_transition_system(single("Zero"), classes, {});
  EXPECT_EQ(ts.states.size(), 2u);
  for (const Transition& t : ts.transitions) EXPECT_NE(t.rule, "lo");
  // The lower class runs once nothing above it applies.
  PriorityClasses flipped{{swap_rule("hi", "One", "Two")}, {swap_rule("lo", "Zero", "One")}};
  TransitionSystem ts2 = build_transition_system(single("Zero"), flipped, {});
  EXPECT_EQ(ts2.states.size(), 3u);
}

TEST(Explore, SameClassIsAUnion) {
  PriorityClasses classes{{swap_rule("a", "Zero", "One"), swap_rule("b", "Zero", "Two")}};
  TransitionSystem ts = build_transition_system(single("Zero"), classes, {});
  EXPECT_EQ(ts.states.size(), 3u);
  auto out = ts.outgoing();
  EXPECT_EQ(out[0].size(), 2u);
}

TEST(Explore, BudgetExceeded) {
  Signature sig = toy_signature();
  BigraphSpec r;
  r.add_node("Seed", Parent::region(0));
  r.add_node("A", Parent::region(0));
  PriorityClasses classes{{make_rule("grow", single("Seed"), build_bigraph(sig, r))}};
  ExploreOptions opts;
  opts.max_states = 20;
  try {
    build_transition_system(single("Seed"), classes, {}, opts);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStateBudgetExceeded);
    EXPECT_EQ(e.limit(), 20u);
    EXPECT_GT(e.states(), 20u);
  }
}

// Random rule set over the generator's alphabet.
PriorityClasses random_rules() {
  Signature sig = toy_signature();
  // B{y}.id -> A.id
  BigraphSpec l1;
  int b = l1.add_node("B", Parent::region(0), {"y"});
  l1.add_site(Parent::node(b));
  BigraphSpec r1;
  int a = r1.add_node("A", Parent::region(0));
  r1.add_site(Parent::node(a));
  // A.(D{x} | id) -> A.id | D{x}
  BigraphSpec l2;
  int a2 = l2.add_node("A", Parent::region(0));
  l2.add_node("D", Parent::node(a2), {"x"});
  l2.add_site(Parent::node(a2));
  BigraphSpec r2;
  int a3 = r2.add_node("A", Parent::region(0));
  r2.add_site(Parent::node(a3));
  r2.add_node("D", Parent::region(0), {"x"});
  // C{p,q} -> C{q,p}
  BigraphSpec l3;
  l3.add_node("C", Parent::region(0), {"p", "q"});
  BigraphSpec r3;
  r3.add_node("C", Parent::region(0), {"q", "p"});
  return {{make_rule("unB", build_bigraph(sig, l1), build_bigraph(sig, r1))},
          {make_rule("dropD", build_bigraph(sig, l2), build_bigraph(sig, r2)),
           make_rule("flipC", build_bigraph(sig, l3), build_bigraph(sig, r3))}};
}

struct NaiveLts {
  std::vector<Bigraph> states;
  std::set<std::tuple<int, std::string, int>> transitions;
};

// Breadth-first exploration using the exhaustive matcher and permutation isomorphism.
NaiveLts naive_lts(const Bigraph& init, const PriorityClasses& classes) {
  NaiveLts lts;
  lts.states.push_back(init);
  std::deque<int> queue{0};
  auto find = [&](const Bigraph& b) {
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
      if (testing::brute_isomorphic(lts.states[i], b)) return static_cast<int>(i);
    }
    lts.states.push_back(b);
    queue.push_back(static_cast<int>(lts.states.size()) - 1);
    return static_cast<int>(lts.states.size()) - 1;
  };
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    bool any = false;
    for (const auto& cls : classes) {
      for (const ReactionRule& rule : cls) {
        for (const Occurrence& occ : testing::brute_match(rule.redex, lts.states[s])) {
          Bigraph next = rewrite(rule, lts.states[s], occ);
          lts.transitions.insert({s, rule.name, find(next)});
          any = true;
        }
      }
      if (any) break;
    }
    if (!any) lts.transitions.insert({s, kDeadlockRule, s});
    if (lts.states.size() > 50) break;
  }
  return lts;
}

TEST(Explore, AgreesWithNaiveExploration) {
  std::mt19937 rng(17);
  PriorityClasses classes = random_rules();
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    testing::RandomShape shape;
    shape.max_nodes = 5;
    shape.max_regions = 1;
    shape.alphabet = 4;
    Bigraph init = testing::random_bigraph(rng, shape);
    NaiveLts want = naive_lts(init, classes);
    if (want.states.size() > 50) continue;
    ++compared;
    TransitionSystem got = build_transition_system(init, classes, {});
    ASSERT_EQ(got.states.size(), want.states.size()) << to_string(init);
    // Map engine states onto oracle states.
    std::vector<int> to_oracle(got.states.size(), -1);
    for (std::size_t i = 0; i < got.states.size(); ++i) {
      for (std::size_t j = 0; j < want.states.size(); ++j) {
        if (testing::brute_isomorphic(got.states[i], want.states[j])) to_oracle[i] = static_cast<int>(j);
      }
      ASSERT_GE(to_oracle[i], 0);
    }
    std::set<std::tuple<int, std::string, int>> mapped;
    for (const Transition& t : got.transitions) mapped.insert({to_oracle[t.source], t.rule, to_oracle[t.target]});
    EXPECT_EQ(mapped, want.transitions) << to_string(init);
    EXPECT_EQ(mapped.size(), got.transitions.size());
  }
  EXPECT_GT(compared, 100);
}

TEST(Explore, Deterministic) {
  std::mt19937 rng(23);
  PriorityClasses classes = random_rules();
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomShape shape;
    shape.max_nodes = 6;
    shape.max_regions = 1;
    shape.alphabet = 4;
    Bigraph init = testing::random_bigraph(rng, shape);
    TransitionSystem a = build_transition_system(init, classes, {});
    TransitionSystem b = build_transition_system(testing::relabel(init, rng), classes, {});
    EXPECT_EQ(a.keys, b.keys);
    EXPECT_EQ(a.transitions, b.transitions);
  }
}

}  // namespace
}  // namespace bigrady
