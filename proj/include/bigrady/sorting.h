#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bigrady/bigraph.h"
#include "bigrady/engine.h"

namespace bigrady {

struct SortExpr {
  enum class Kind { kSort, kOne, kStar, kProd, kSum };
  Kind kind = Kind::kOne;
  std::string sort;
  std::vector<SortExpr> args;

  bool operator==(const SortExpr&) const = default;

  static SortExpr named(std::string s) { return {Kind::kSort, std::move(s), {}}; }
  static SortExpr one() { return {}; }
  static SortExpr star(SortExpr e) { return {Kind::kStar, {}, {std::move(e)}}; }
};

std::string to_string(const SortExpr& e);
// Every sort name mentioned in e.
std::vector<std::string> sorts_in(const SortExpr& e);

struct PortConstraint {
  std::string port_sort;
  SortExpr peers;
};

struct SortMember {
  std::string control;
  std::optional<std::string> param;
  std::vector<PortConstraint> ports;
  // Absent means no children allowed.
  std::optional<SortExpr> children;

  std::string label() const;
};

struct SortDecl {
  std::string name;
  // Empty for port sorts and bare declarations.
  std::vector<SortMember> members;
  bool implicit = false;
};

struct SortScheme {
  std::vector<SortDecl> decls;
  std::vector<std::string> warnings;

  const SortDecl* find(std::string_view name) const;
  // Most specific member for the control: exact parameter first, then a parameterless member.
  // Returns {sort, member} or {nullptr, nullptr}.
  std::pair<const SortDecl*, const SortMember*> member_for(const Control& c) const;
};

// Throws Error with kSyntaxError, kDuplicateControlSort or kUndeclaredSort.
// `first_line` shifts reported line numbers when the text is embedded in a larger file.
SortScheme parse_sort_scheme(std::string_view text, int first_line = 1);

struct SortDiagnostic {
  enum class Where { kNode, kLink };
  Where where = Where::kNode;
  int index = 0;
  std::string constraint;
  std::string message;
  // Empty for states; "rule NAME redex|reactum" for rule sides.
  std::string context;

  bool operator==(const SortDiagnostic&) const = default;
};

std::string to_string(const SortDiagnostic& d);

// Sites and outer names are wildcards: a constraint fails only if no extension
// of the abstracted content could satisfy it. Throws kUnsortedControl.
std::vector<SortDiagnostic> check_sorts(const SortScheme& scheme, const Bigraph& b);
std::vector<SortDiagnostic> check_rules(const SortScheme& scheme, const std::vector<ReactionRule>& rules);

// Whether the multiset of sort names satisfies e. With `open`, any extra
// elements may be added before checking.
bool satisfies(const SortExpr& e, const std::vector<std::string>& items, bool open);

}  // namespace bigrady
