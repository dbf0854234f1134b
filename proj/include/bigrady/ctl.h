#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bigrady/engine.h"

namespace bigrady::ctl {

enum class Op {
  kTrue,
  kFalse,
  kAtom,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kEX,
  kAX,
  kEF,
  kAF,
  kEG,
  kAG,
  kEU,
  kAU,
};

struct Formula {
  Op op = Op::kTrue;
  std::string atom;
  std::vector<Formula> args;

  bool operator==(const Formula&) const = default;

  static Formula truth() { return {Op::kTrue, {}, {}}; }
  static Formula falsity() { return {Op::kFalse, {}, {}}; }
  static Formula var(std::string name) { return {Op::kAtom, std::move(name), {}}; }
  static Formula unary(Op op, Formula f) { return {op, {}, {std::move(f)}}; }
  static Formula binary(Op op, Formula a, Formula b) { return {op, {}, {std::move(a), std::move(b)}}; }
};

// Throws Error(kSyntaxError) with the 0-based offset of the offending token.
Formula parse_formula(std::string_view text);

// Fully parenthesised; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

int depth(const Formula& f);
std::set<std::string> atoms(const Formula& f);

// Plain Kripke structure used by the checker.
struct Kripke {
  struct Edge {
    int target = 0;
    std::string rule;
  };
  int initial = 0;
  std::vector<std::vector<Edge>> out;
  std::vector<std::set<std::string>> labels;
  // Atoms that may be referenced.
  std::set<std::string> atoms;

  int size() const { return static_cast<int>(out.size()); }
};

Kripke to_kripke(const TransitionSystem& ts);

struct TraceStep {
  int state = 0;
  // Rule of the transition entering `state`; empty for the first step.
  std::string rule;
  bool operator==(const TraceStep&) const = default;
};

struct Verdict {
  bool holds = false;
  // Only for failing AG b and AG (p => AX q).
  std::optional<std::vector<TraceStep>> witness;
};

// States satisfying f. Throws Error(kUnknownPredicate) for undeclared atoms.
std::vector<char> satisfying(const Formula& f, const Kripke& k);

Verdict check(const Formula& f, const Kripke& k);
Verdict check(const Formula& f, const TransitionSystem& ts);

// Re-validates a witness against the formula shape; used by tests and the CLI.
bool witness_is_valid(const Formula& f, const Kripke& k, const std::vector<TraceStep>& trace);

}  // namespace bigrady::ctl
