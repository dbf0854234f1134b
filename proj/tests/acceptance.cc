// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bigrady/canonical.h"
#include "bigrady/fixtures.h"
#include "bigrady/match.h"
#include "bigrady/pipeline.h"
#include "whatsapp_example.h"
#include "oracles/brute_ctl.h"
#include "oracles/brute_iso.h"
#include "oracles/brute_match.h"
#include "oracles/random_bigraph.h"
#include "oracles/random_ctl.h"

namespace {

using namespace bigrady;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

struct Explored {
  Model model;
  RunReport report;
  TransitionSystem ts;
};

Explored explore(const std::string& fixture, bool dynamic = false) {
  Explored e{load_model(find_fixture(fixture).text), {}, {}};
  RunOptions opt;
  opt.dynamic_sorts = dynamic;
  e.report = run_pipeline(e.model, opt, &e.ts);
  return e;
}

bool any_label(const TransitionSystem& ts, const std::string& label) {
  for (std::size_t s = 0; s < ts.states.size(); ++s) {
    if (ts.has_label(static_cast<int>(s), label)) return true;
  }
  return false;
}

bool reaches(const Explored& e, const std::string& pattern) {
  Bigraph p = compile_term(e.model.signature, dsl::parse_term(pattern));
  return std::any_of(e.ts.states.begin(), e.ts.states.end(), [&](const Bigraph& s) { return occurs(p, s); });
}

void compliant(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  Explored first = explore("whatsapp-compliant");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(first.report.all_hold(), "all four properties hold");
  o.require(secs < 60, "pipeline under 60 s");
  const std::size_t n = first.report.states;
  o.require(n >= 50 && n <= 2000, "state count in 50..2000");
  for (int i = 0; i < 4; ++i) {
    Explored again = explore("whatsapp-compliant");
    o.require(again.ts.keys == first.ts.keys && again.ts.transitions == first.ts.transitions, "repeat run identical");
  }
  dsl::ModelFile ast = dsl::parse_model(find_fixture("whatsapp-compliant").text);
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < ast.items.size(); ++i) {
    if (std::holds_alternative<dsl::RuleDecl>(ast.items[i])) slots.push_back(i);
  }
  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    std::vector<dsl::Item> rules;
    for (std::size_t s : slots) rules.push_back(ast.items[s]);
    std::shuffle(rules.begin(), rules.end(), rng);
    dsl::ModelFile shuffled = ast;
    for (std::size_t k = 0; k < slots.size(); ++k) shuffled.items[slots[k]] = rules[k];
    Model m = compile_model(shuffled);
    TransitionSystem ts = build_transition_system(m.initial, m.classes, m.predicates);
    o.require(ts.states.size() == n, "permuted rule order keeps the state count");
  }
  o.note << n << " states, " << first.report.transitions << " transitions, " << secs << " s";
}

void restricted(Outcome& o) {
  Explored e = explore("whatsapp-restricted");
  o.require(any_label(e.ts, "invalidContra"), "a state labelled invalidContra");
  o.require(any_label(e.ts, "invalidCert"), "a state labelled invalidCert");
  o.require(reaches(e, "Block.DC{l}.id || L(\"Singapore\").(P{l} | id)"), "blocked DC in Singapore");
  o.require(reaches(e, "Block.FB{l}.id || L(\"China\").(P{l} | id)"), "blocked FB in China");
  o.require(!any_label(e.ts, "dataTransfer"), "no dataTransfer state");
  o.require(e.report.all_hold(), "all four properties hold");
  o.note << e.report.states << " states";
}

void violation(Outcome& o) {
  Explored e = explore("whatsapp-violation");
  const PropertyResult* p = nullptr;
  for (const PropertyResult& r : e.report.properties) {
    if (r.name == "no_transfer_invalid_cert") p = &r;
  }
  o.require(p && !p->holds, "invalid-certificate property fails");
  if (!p || !p->trace) {
    o.require(false, "counterexample present");
    return;
  }
  const int last = p->trace->back().state;
  o.require(e.ts.has_label(last, "invalidCert") && e.ts.has_label(last, "dataTransfer"),
            "final state labelled invalidCert and dataTransfer");
  o.require(p->offending_rule == "privacyViolation", "offending rule is privacyViolation");
  o.note << "trace of " << p->trace->size() << " states ending with " << p->offending_rule.value_or("?");
}

void sorting(Outcome& o) {
  Explored d1 = explore("sorts-adeq-in-scheme");
  bool adeq = false;
  for (const SortDiagnostic& d : d1.report.sort_diagnostics) {
    adeq |= d.where == SortDiagnostic::Where::kNode && d1.model.initial.control(d.index).name == "Adeq";
  }
  o.require(adeq, "Adeq node flagged");
  Explored d2 = explore("sorts-cont-on-scheme-link");
  bool link = false;
  for (const SortDiagnostic& d : d2.report.sort_diagnostics) {
    if (d.where != SortDiagnostic::Where::kLink) continue;
    std::set<std::string> on;
    for (const Point& pt : d2.model.initial.link(d.index).points) on.insert(d2.model.initial.control(pt.node).name);
    link |= on.count("Cont") && on.count("Scheme");
  }
  o.require(link, "Cont/Scheme link flagged");
  std::size_t states = 0;
  for (const char* name : {"whatsapp-compliant", "whatsapp-restricted"}) {
    Explored e = explore(name, true);
    o.require(e.report.sort_diagnostics.empty(), std::string(name) + " statically well sorted");
    o.require(e.report.dynamic_sorts_checked && e.report.dynamic_sort_diagnostics.empty(),
              std::string(name) + " reachable states well sorted");
    states += e.report.states;
  }
  o.note << d1.report.sort_diagnostics.size() << " + " << d2.report.sort_diagnostics.size()
         << " diagnostics on the ill-formed fixtures, " << states << " states re-checked";
}

void match_oracle(Outcome& o) {
  std::mt19937 rng(2024);
  int pairs = 0;
  int nonempty = 0;
  int mismatches = 0;
  for (int trial = 0; trial < 600; ++trial) {
    testing::RandomShape ts;
    ts.max_nodes = 6;
    ts.max_sites = 1;
    ts.alphabet = 2 + trial % 3;
    testing::RandomShape ps;
    ps.max_nodes = 1 + trial % 6;
    ps.max_sites = 2;
    ps.alphabet = ts.alphabet;
    Bigraph pattern = testing::random_bigraph(rng, ps);
    Bigraph target = testing::random_bigraph(rng, ts);
    auto want = testing::brute_match(pattern, target);
    mismatches += match(pattern, target) != want;
    nonempty += !want.empty();
    ++pairs;
  }
  o.require(mismatches == 0, "match equals brute force");
  o.note << pairs << " pairs, " << nonempty << " with occurrences, " << mismatches << " mismatches";
}

void canonical(Outcome& o) {
  std::mt19937 rng(99);
  testing::RandomShape shape;
  shape.max_sites = 1;
  int bad_same = 0;
  for (int i = 0; i < 100; ++i) {
    Bigraph b = testing::random_bigraph(rng, shape);
    const std::string key = canonical_form(b);
    for (int k = 0; k < 10; ++k) bad_same += canonical_form(testing::relabel(b, rng)) != key;
  }
  testing::RandomShape small = shape;
  small.min_nodes = 3;
  small.max_nodes = 5;
  small.alphabet = 2;
  int pairs = 0;
  int bad_diff = 0;
  while (pairs < 100) {
    Bigraph a = testing::random_bigraph(rng, small);
    Bigraph b = testing::random_bigraph(rng, small);
    if (a.num_nodes() != b.num_nodes() || testing::brute_isomorphic(a, b)) continue;
    ++pairs;
    bad_diff += canonical_form(a) == canonical_form(b);
  }
  o.require(bad_same == 0, "relabelled copies share the key");
  o.require(bad_diff == 0, "non-isomorphic pairs differ");
  o.note << "100 x 10 relabelings, " << pairs << " non-isomorphic pairs, " << bad_same + bad_diff << " failures";
}

void ctl_oracle(Outcome& o) {
  std::mt19937 rng(7);
  const std::vector<std::string> atoms{"p", "q", "r"};
  int disagree = 0;
  for (int i = 0; i < 300; ++i) {
    ctl::Kripke k = testing::random_kripke(rng, 8, atoms);
    ctl::Formula f = testing::random_formula(rng, 4, atoms);
    testing::BruteCtl oracle(k);
    disagree += ctl::check(f, k).holds != oracle.holds(f, k.initial);
  }
  o.require(disagree == 0, "checker equals tree unrolling");
  o.note << "300 cases, " << disagree << " disagreements";
}

void priority(Outcome& o) {
  Explored e = explore("priority-two-class");
  int high = 0;
  int low = 0;
  for (const Transition& t : e.ts.transitions) {
    if (t.source != e.ts.initial) continue;
    (t.rule == "urgent" ? high : low) += 1;
  }
  // Both classes match the initial state.
  o.require(occurs(e.model.classes[0][0].redex, e.model.initial), "higher rule matches");
  o.require(occurs(e.model.classes[1][0].redex, e.model.initial), "lower rule matches");
  o.require(low == 0 && high > 0, "only higher-class transitions leave the initial state");
  o.note << high << " higher-class, " << low << " lower-class transitions from the initial state";
}

void rule_application(Outcome& o) {
  std::vector<Bigraph> next = apply_rule(testing::trans_d(), testing::whatsapp_before());
  o.require(next.size() == 1, "exactly one successor");
  o.require(!next.empty() && is_isomorphic(next[0], testing::whatsapp_after()), "successor isomorphic to the expected state");
  o.note << next.size() << " successor";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"compliant model verifies", compliant},
      {"restricted model blocks both receivers", restricted},
      {"violation traced to privacyViolation", violation},
      {"sorting diagnostics", sorting},
      {"match agrees with brute force", match_oracle},
      {"canonical form", canonical},
      {"CTL agrees with tree unrolling", ctl_oracle},
      {"priority classes", priority},
      {"transD on the example", rule_application},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << " [exception: " << e.what() << "]";
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.note.str() << "\n";
  }
  return failed ? 1 : 0;
}
