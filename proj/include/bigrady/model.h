#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bigrady/ctl.h"
#include "bigrady/dsl.h"
#include "bigrady/engine.h"
#include "bigrady/sorting.h"

namespace bigrady {

struct Property {
  std::string name;
  std::string text;
  ctl::Formula formula;
};

struct Expectation {
  std::string property;
  bool holds = true;
};

// A compiled model: everything the pipeline needs.
struct Model {
  std::string name = "model";
  Signature signature;
  Bigraph initial;
  // Every rule instance, pack rules first.
  std::vector<ReactionRule> rules;
  PriorityClasses classes;
  std::vector<Predicate> predicates;
  std::vector<Property> properties;
  std::optional<SortScheme> sorts;
  std::vector<Expectation> expectations;
  std::optional<bool> expect_sorts;
  // Set when the gdpr pack is imported.
  std::optional<std::vector<std::string>> criteria;
  std::vector<std::string> warnings;
  dsl::ModelFile ast;
};

Model compile_model(const dsl::ModelFile& file);
Model load_model(std::string_view text);
// Missing or unreadable files raise InvalidModel.
Model load_model_file(const std::string& path);

// Builds one bigraph from a term. `vars` binds bare parameters; `bigs` are named terms.
Bigraph compile_term(const Signature& sig, const dsl::Term& term, const std::map<std::string, std::string>& vars = {},
                     const std::map<std::string, dsl::Term>& bigs = {});

}  // namespace bigrady
