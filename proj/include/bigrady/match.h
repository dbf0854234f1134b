#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "bigrady/bigraph.h"

namespace bigrady {

struct Occurrence {
  // pattern node -> target node
  std::vector<int> nodes;
  // pattern site -> absorbed target children, sorted
  std::vector<std::vector<Child>> sites;
  // pattern link -> target link; -1 for idle pattern names
  std::vector<int> links;
  // pattern region -> target place holding its roots; empty for node-less regions
  std::vector<std::optional<Parent>> regions;

  auto operator<=>(const Occurrence&) const = default;
  bool operator==(const Occurrence&) const = default;
};

// Every occurrence of `pattern` in `target`, sorted.
std::vector<Occurrence> match(const Bigraph& pattern, const Bigraph& target);

// Stops early; cheaper than match() when only existence matters.
bool occurs(const Bigraph& pattern, const Bigraph& target);

// Visits occurrences in search order until `visit` returns false.
void for_each_occurrence(const Bigraph& pattern, const Bigraph& target,
                         const std::function<bool(const Occurrence&)>& visit);

}  // namespace bigrady
