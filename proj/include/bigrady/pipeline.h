#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigrady/ctl.h"
#include "bigrady/engine.h"
#include "bigrady/model.h"
#include "bigrady/sorting.h"

namespace bigrady {

struct PropertyResult {
  std::string name;
  std::string formula;
  bool holds = false;
  std::optional<bool> expected;
  std::optional<std::vector<ctl::TraceStep>> trace;
  // Label of the trace's last transition.
  std::optional<std::string> offending_rule;
};

struct RunReport {
  std::string model;
  bool gdpr = false;
  std::size_t states = 0;
  std::size_t transitions = 0;
  // Predicate name and number of states carrying it, in declaration order.
  std::vector<std::pair<std::string, std::size_t>> label_counts;
  std::vector<PropertyResult> properties;
  // Static diagnostics on the initial state and the rules.
  std::vector<SortDiagnostic> sort_diagnostics;
  // Per-state diagnostics with --dynamic-sorts; context holds "state N".
  std::vector<SortDiagnostic> dynamic_sort_diagnostics;
  bool dynamic_sorts_checked = false;
  bool explored = false;
  std::vector<std::string> warnings;
  double duration_ms = 0;

  bool sorts_ok() const { return sort_diagnostics.empty() && dynamic_sort_diagnostics.empty(); }
  bool all_hold() const;
};

struct RunOptions {
  std::size_t max_states = kDefaultMaxStates;
  bool dynamic_sorts = false;
};

// Sort check, exploration and property checking. Exploration is skipped when the
// static sort check fails. Throws BudgetExceeded and the sort checker's errors.
RunReport run_pipeline(const Model& model, const RunOptions& options = {}, TransitionSystem* ts_out = nullptr);

// 0 all good, 1 a property fails, 2 sort errors.
int exit_code(const RunReport& r);

// JSON report, keys in a fixed order; only duration_ms varies between runs.
std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);

// LTS exports.
std::string export_dot(const TransitionSystem& ts, const std::string& name);
std::string export_json(const TransitionSystem& ts, const RunReport& r);

}  // namespace bigrady
