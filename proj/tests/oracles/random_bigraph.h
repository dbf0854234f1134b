#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bigrady/bigraph.h"

namespace bigrady::testing {

struct RandomShape {
  int min_nodes = 1;
  int max_nodes = 6;
  int max_regions = 2;
  int max_sites = 0;
  int max_links = 3;
  // probability that a link is an outer name rather than an edge
  double open_prob = 0.5;
  int alphabet = 3;
};

// Controls: A (0), B (1), C (2), D (atomic, 1), E(x) parameterised with values 1/2.
inline Control random_control(std::mt19937& rng, int alphabet) {
  static const Control kControls[] = {
      {"A", std::nullopt, 0, false}, {"B", std::nullopt, 1, false}, {"C", std::nullopt, 2, false},
      {"D", std::nullopt, 1, true},  {"E", std::string("1"), 0, false}, {"E", std::string("2"), 0, false},
  };
  const int n = std::min<int>(alphabet, 6);
  return kControls[std::uniform_int_distribution<int>(0, n - 1)(rng)];
}

inline Bigraph random_bigraph(std::mt19937& rng, const RandomShape& shape) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int regions = pick(1, shape.max_regions);
  const int n = pick(shape.min_nodes, shape.max_nodes);
  std::vector<Control> controls;
  std::vector<Parent> parents;
  for (int i = 0; i < n; ++i) {
    controls.push_back(random_control(rng, shape.alphabet));
    std::vector<Parent> options;
    for (int r = 0; r < regions; ++r) options.push_back(Parent::region(r));
    for (int j = 0; j < i; ++j) {
      if (!controls[j].atomic) options.push_back(Parent::node(j));
    }
    parents.push_back(options[pick(0, static_cast<int>(options.size()) - 1)]);
  }
  std::vector<Parent> sites;
  const int ns = pick(0, shape.max_sites);
  for (int s = 0; s < ns; ++s) {
    std::vector<Parent> options;
    for (int r = 0; r < regions; ++r) options.push_back(Parent::region(r));
    for (int j = 0; j < n; ++j) {
      if (!controls[j].atomic) options.push_back(Parent::node(j));
    }
    sites.push_back(options[pick(0, static_cast<int>(options.size()) - 1)]);
  }
  const int nl = std::max(1, pick(1, shape.max_links));
  std::vector<Link> links(nl);
  std::bernoulli_distribution open(shape.open_prob);
  for (int l = 0; l < nl; ++l) {
    if (open(rng)) links[l].name = "x" + std::to_string(l);
  }
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < controls[i].arity; ++p) links[pick(0, nl - 1)].points.push_back({i, p});
  }
  std::vector<Link> kept;
  for (auto& l : links) {
    if (l.is_edge() && l.points.empty()) continue;
    kept.push_back(std::move(l));
  }
  return Bigraph(regions, std::move(controls), std::move(parents), std::move(sites), std::move(kept));
}

// Same bigraph with node ids, link order and outer names permuted.
inline Bigraph relabel(const Bigraph& b, std::mt19937& rng) {
  const int n = b.num_nodes();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Control> controls(n);
  std::vector<Parent> parents(n);
  for (int i = 0; i < n; ++i) {
    controls[perm[i]] = b.control(i);
    Parent p = b.parent(i);
    parents[perm[i]] = p.is_node() ? Parent::node(perm[p.index]) : p;
  }
  std::vector<Parent> sites;
  for (int s = 0; s < b.num_sites(); ++s) {
    Parent p = b.site_parent(s);
    sites.push_back(p.is_node() ? Parent::node(perm[p.index]) : p);
  }
  std::vector<Link> links;
  int counter = 0;
  for (const Link& l : b.links()) {
    Link m;
    if (l.name) m.name = "renamed" + std::to_string(counter++) + "_" + std::to_string(rng() % 97);
    for (const Point& pt : l.points) m.points.push_back({perm[pt.node], pt.port});
    links.push_back(std::move(m));
  }
  std::shuffle(links.begin(), links.end(), rng);
  return Bigraph(b.num_regions(), std::move(controls), std::move(parents), std::move(sites), std::move(links));
}

}  // namespace bigrady::testing
