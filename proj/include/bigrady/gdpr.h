#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bigrady/engine.h"
#include "bigrady/model.h"

namespace bigrady::gdpr {

enum class Role {
  kLocation,
  kAdequacy,
  kSafeguard,
  kCriterion,
  kCertificate,
  kMarker,
  kPointer,
  kEntity,
  kEntityType,
  kCheck,
};

const char* role_name(Role r);

struct CatalogEntry {
  std::string name;
  int arity = 0;
  bool atomic = false;
  bool parameterised = false;
  Role role = Role::kMarker;
};

const std::vector<CatalogEntry>& privacy_catalog();
// nullptr when absent.
const CatalogEntry* find_control(std::string_view name);

std::vector<std::string> default_criteria();

// The pack as model text (controls, domain, rules, predicates, properties, sorts).
// Throws EmptyCriteriaDomain.
std::string pack_text(const std::vector<std::string>& criteria);
// Rule names per priority class, highest first. tagCriteria stands for all its instances.
const std::vector<std::vector<std::string>>& pack_priorities();
// The pack's sort scheme text on its own.
std::string pack_sorts();

struct RulePack {
  std::vector<ReactionRule> rules;
  PriorityClasses classes;
};

RulePack privacy_rules(const std::vector<std::string>& criteria);
Signature privacy_signature(const std::vector<std::string>& criteria = default_criteria());

struct SccContract {
  bool valid = true;
};
struct Certification {
  std::vector<std::string> criteria;
  bool expired = false;
};

struct LocationSpec {
  std::string country;
  // Holds Adeq{adq}.
  bool adequate = false;
  // At most one safeguard.
  std::optional<SccContract> contract;
  std::optional<Certification> certification;
  // Sender side: Scheme{sch} listing the required criteria.
  std::optional<std::vector<std::string>> scheme;
  // One P per entry, linked by name.
  std::vector<std::string> pointers;
  // A location that only lists adequate countries gets P{adq}.
  bool adequacy_list = false;
};

// One region holding L(country); names stay open: pointers by their own name, adq, ct, sch.
// Throws InconsistentSpec.
Bigraph build_location(const LocationSpec& spec);

struct StandardProperties {
  std::vector<Predicate> predicates;
  std::vector<Property> properties;
};

StandardProperties standard_properties(const Bigraph& data_transfer);

}  // namespace bigrady::gdpr
