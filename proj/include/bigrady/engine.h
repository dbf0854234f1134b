#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bigrady/bigraph.h"
#include "bigrady/match.h"

namespace bigrady {

struct ReactionRule {
  std::string name;
  Bigraph redex;
  Bigraph reactum;
  // reactum site -> redex site
  std::vector<int> eta;
};

// Validates shapes; an empty `eta` means the identity on the reactum's sites.
ReactionRule make_rule(std::string name, Bigraph redex, Bigraph reactum, std::vector<int> eta = {});

// Highest priority first.
using PriorityClasses = std::vector<std::vector<ReactionRule>>;

struct Predicate {
  std::string name;
  Bigraph pattern;
};

struct Transition {
  int source = 0;
  std::string rule;
  int target = 0;
  bool operator==(const Transition&) const = default;
};

inline constexpr const char* kDeadlockRule = "__deadlock";
inline constexpr std::size_t kDefaultMaxStates = 100000;

struct TransitionSystem {
  std::vector<Bigraph> states;
  std::vector<std::string> keys;
  int initial = 0;
  std::vector<Transition> transitions;
  // Per state, predicate names in declaration order.
  std::vector<std::vector<std::string>> labels;
  std::vector<std::string> predicate_names;
  // Rule applications before deduplication of successors.
  std::size_t raw_occurrences = 0;

  std::vector<std::vector<std::size_t>> outgoing() const;
  bool has_label(int state, const std::string& name) const;
};

struct Successor {
  std::string rule;
  Bigraph state;
  std::string key;
};

// Rewrites one occurrence of the rule's redex.
Bigraph rewrite(const ReactionRule& rule, const Bigraph& target, const Occurrence& occ);

// One successor per distinct resulting state, ordered by canonical key.
std::vector<Bigraph> apply_rule(const ReactionRule& rule, const Bigraph& state);
std::vector<Successor> apply_rule_keyed(const ReactionRule& rule, const Bigraph& state,
                                        std::size_t* raw_count = nullptr);

// Successors from the first class with an applicable rule, sorted by (rule, key).
std::vector<std::pair<std::string, Bigraph>> step(const PriorityClasses& classes, const Bigraph& state);
std::vector<Successor> step_keyed(const PriorityClasses& classes, const Bigraph& state,
                                  std::size_t* raw_count = nullptr);

std::vector<std::string> label_state(const Bigraph& state, const std::vector<Predicate>& predicates);

struct ExploreOptions {
  std::size_t max_states = kDefaultMaxStates;
  // Called once per new state, in index order.
  std::function<void(int, const Bigraph&)> on_state;
};

// Throws BudgetExceeded once more than max_states states are discovered.
TransitionSystem build_transition_system(const Bigraph& initial, const PriorityClasses& classes,
                                         const std::vector<Predicate>& predicates,
                                         const ExploreOptions& options = {});

}  // namespace bigrady
