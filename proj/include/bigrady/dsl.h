#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bigrady/error.h"

namespace bigrady::dsl {

// Control parameter: a literal ("Ireland", 3) or a bare identifier, which is a
// rule variable when one is in scope and a literal otherwise.
struct Param {
  std::string value;
  bool bare = false;
  bool operator==(const Param&) const = default;
};

struct Term {
  enum class Kind { kEmpty, kSite, kNode, kPar, kRegions, kClose };
  Kind kind = Kind::kEmpty;
  // control name, or the closed name for kClose
  std::string name;
  std::optional<Param> param;
  std::vector<std::string> ports;
  // kNode: at most one (its contents); kPar/kRegions: the parts; kClose: the scope
  std::vector<Term> kids;
  SourcePos pos;

  // Positions are ignored.
  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && param == o.param && ports == o.ports && kids == o.kids;
  }
};

struct Domain {
  // Either a numeric range or an explicit list.
  std::optional<std::pair<long, long>> range;
  std::vector<std::string> values;
  bool operator==(const Domain&) const = default;
  std::vector<std::string> expand() const;
};

struct ModelDecl {
  std::string name;
  bool operator==(const ModelDecl&) const = default;
};

struct UseDecl {
  std::string module;
  std::optional<Domain> criteria;
  SourcePos pos;
  bool operator==(const UseDecl& o) const { return module == o.module && criteria == o.criteria; }
};

struct CtrlDecl {
  std::string name;
  bool atomic = false;
  // Domain name, "*" for any value, or absent when unparameterised.
  std::optional<std::string> param;
  int arity = 0;
  SourcePos pos;
  bool operator==(const CtrlDecl& o) const {
    return name == o.name && atomic == o.atomic && param == o.param && arity == o.arity;
  }
};

struct DomainDecl {
  std::string name;
  Domain domain;
  bool operator==(const DomainDecl&) const = default;
};

struct BigDecl {
  std::string name;
  Term term;
  bool operator==(const BigDecl&) const = default;
};

struct RuleDecl {
  std::string name;
  // (variable, domain name) for parameterised rules
  std::optional<std::pair<std::string, std::string>> param;
  Term redex;
  Term reactum;
  std::optional<std::vector<int>> eta;
  SourcePos pos;
  bool operator==(const RuleDecl& o) const {
    return name == o.name && param == o.param && redex == o.redex && reactum == o.reactum && eta == o.eta;
  }
};

struct InitDecl {
  Term term;
  SourcePos pos;
  bool operator==(const InitDecl& o) const { return term == o.term; }
};

struct ClassRef {
  // `gdpr` splices the pack's classes; a bare name is a singleton class.
  bool gdpr = false;
  bool braced = false;
  std::vector<std::string> names;
  bool operator==(const ClassRef&) const = default;
};

struct RulesDecl {
  std::vector<ClassRef> classes;
  SourcePos pos;
  bool operator==(const RulesDecl& o) const { return classes == o.classes; }
};

struct PredDecl {
  std::string name;
  Term term;
  bool operator==(const PredDecl&) const = default;
};

struct PropDecl {
  std::string name;
  std::string formula;
  SourcePos pos;
  bool operator==(const PropDecl& o) const { return name == o.name && formula == o.formula; }
};

struct SortsDecl {
  std::string text;
  int line = 1;
  bool operator==(const SortsDecl& o) const { return text == o.text; }
};

struct ExpectDecl {
  std::string name;
  bool holds = true;
  bool operator==(const ExpectDecl&) const = default;
};

using Item = std::variant<ModelDecl, UseDecl, CtrlDecl, DomainDecl, BigDecl, RuleDecl, InitDecl, RulesDecl, PredDecl,
                          PropDecl, SortsDecl, ExpectDecl>;

struct ModelFile {
  std::vector<Item> items;
  bool operator==(const ModelFile&) const = default;
};

// Throws Error(kSyntaxError) with line and column.
ModelFile parse_model(std::string_view text);
Term parse_term(std::string_view text);

std::string print_model(const ModelFile& m);
std::string print_term(const Term& t);

}  // namespace bigrady::dsl
