#include <chrono>

#include "bigrady/pipeline.h"

namespace bigrady {

bool RunReport::all_hold() const {
  for (const PropertyResult& p : properties) {
    if (!p.holds) return false;
  }
  return true;
}

RunReport run_pipeline(const Model& model, const RunOptions& options, TransitionSystem* ts_out) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.model = model.name;
  r.gdpr = model.criteria.has_value();
  r.warnings = model.warnings;

  if (model.sorts) {
    r.sort_diagnostics = check_sorts(*model.sorts, model.initial);
    for (SortDiagnostic& d : r.sort_diagnostics) d.context = "init";
    for (SortDiagnostic& d : check_rules(*model.sorts, model.rules)) r.sort_diagnostics.push_back(std::move(d));
  } else if (options.dynamic_sorts) {
    r.warnings.push_back("--dynamic-sorts ignored: the model has no sorts");
  }
  auto finish = [&] {
    r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  if (!r.sort_diagnostics.empty()) {
    finish();
    return r;
  }

  ExploreOptions eo;
  eo.max_states = options.max_states;
  if (options.dynamic_sorts && model.sorts) {
    r.dynamic_sorts_checked = true;
    eo.on_state = [&](int id, const Bigraph& b) {
      for (SortDiagnostic& d : check_sorts(*model.sorts, b)) {
        d.context = "state " + std::to_string(id);
        r.dynamic_sort_diagnostics.push_back(std::move(d));
      }
    };
  }
  TransitionSystem ts = build_transition_system(model.initial, model.classes, model.predicates, eo);
  r.explored = true;
  r.states = ts.states.size();
  r.transitions = ts.transitions.size();
  for (const Predicate& p : model.predicates) {
    std::size_t n = 0;
    for (std::size_t s = 0; s < ts.states.size(); ++s) n += ts.has_label(static_cast<int>(s), p.name);
    r.label_counts.emplace_back(p.name, n);
  }

  const ctl::Kripke k = ctl::to_kripke(ts);
  for (const Property& p : model.properties) {
    PropertyResult pr;
    pr.name = p.name;
    pr.formula = p.text;
    ctl::Verdict v = ctl::check(p.formula, k);
    pr.holds = v.holds;
    if (v.witness) {
      pr.trace = std::move(v.witness);
      if (pr.trace->size() > 1) pr.offending_rule = pr.trace->back().rule;
    }
    for (const Expectation& e : model.expectations) {
      if (e.property == p.name) pr.expected = e.holds;
    }
    r.properties.push_back(std::move(pr));
  }
  if (ts_out) *ts_out = std::move(ts);
  finish();
  return r;
}

int exit_code(const RunReport& r) {
  if (!r.sorts_ok()) return 2;
  return r.all_hold() ? 0 : 1;
}

}  // namespace bigrady
