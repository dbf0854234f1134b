#include "bigrady/match.h"

#include <algorithm>
#include <map>

namespace bigrady {

namespace {

bool same_control(const Control& a, const Control& b) {
  return a.name == b.name && a.param == b.param && a.arity == b.arity;
}

class Matcher {
 public:
  Matcher(const Bigraph& p, const Bigraph& t, const std::function<bool(const Occurrence&)>& visit)
      : p_(p), t_(t), visit_(visit) {}

  void run() {
    plan();
    node_map_.assign(p_.num_nodes(), -1);
    used_.assign(t_.num_nodes(), 0);
    link_map_.assign(p_.num_links(), -1);
    edge_claim_.assign(t_.num_links(), -1);
    region_place_.assign(p_.num_regions(), std::nullopt);
    assign(0);
  }

 private:
  struct Group {
    std::vector<Child> items;
    std::vector<int> sites;
    bool optional = false;
  };

  void plan() {
    std::map<std::pair<std::string, int>, int> counts;
    for (int i = 0; i < t_.num_nodes(); ++i) ++counts[{t_.control(i).label(), t_.control(i).arity}];
    auto scarcity = [&](int n) {
      auto it = counts.find({p_.control(n).label(), p_.control(n).arity});
      return it == counts.end() ? 0 : it->second;
    };
    struct RegionPlan {
      int region;
      int score;
      std::vector<int> seq;
    };
    std::vector<RegionPlan> plans;
    for (int r = 0; r < p_.num_regions(); ++r) {
      std::vector<int> roots;
      for (Child c : p_.children(Parent::region(r))) {
        if (c.is_node()) roots.push_back(c.index);
      }
      if (roots.empty()) continue;
      auto anchor = std::min_element(roots.begin(), roots.end(),
                                     [&](int a, int b) { return scarcity(a) < scarcity(b); });
      std::vector<int> seq{*anchor};
      for (int n : roots) {
        if (n != *anchor) seq.push_back(n);
      }
      for (std::size_t i = 0; i < seq.size(); ++i) {
        for (Child c : p_.children(Parent::node(seq[i]))) {
          if (c.is_node()) seq.push_back(c.index);
        }
      }
      plans.push_back({r, scarcity(*anchor), std::move(seq)});
    }
    std::stable_sort(plans.begin(), plans.end(),
                     [](const RegionPlan& a, const RegionPlan& b) { return a.score < b.score; });
    for (const RegionPlan& rp : plans) {
      for (std::size_t i = 0; i < rp.seq.size(); ++i) {
        order_.push_back(rp.seq[i]);
        anchor_.push_back(i == 0);
      }
    }
    for (int n = 0; n < p_.num_nodes(); ++n) {
      int sites = 0;
      int nodes = 0;
      for (Child c : p_.children(Parent::node(n))) (c.is_node() ? nodes : sites)++;
      p_child_nodes_.push_back(nodes);
      p_child_sites_.push_back(sites);
    }
    for (int i = 0; i < t_.num_nodes(); ++i) by_label_[{t_.control(i).label(), t_.control(i).arity}].push_back(i);
  }

  // Returns false when the caller asked to stop.
  bool assign(std::size_t k) {
    if (k == order_.size()) return finalize();
    const int n = order_[k];
    const Parent pp = p_.parent(n);
    std::vector<int> candidates;
    if (!pp.is_node() && anchor_[k]) {
      auto it = by_label_.find({p_.control(n).label(), p_.control(n).arity});
      if (it != by_label_.end()) candidates = it->second;
    } else {
      Parent place = pp.is_node() ? Parent::node(node_map_[pp.index]) : *region_place_[pp.index];
      for (Child c : t_.children(place)) {
        if (c.is_node()) candidates.push_back(c.index);
      }
    }
    for (int t : candidates) {
      if (used_[t] || !same_control(p_.control(n), t_.control(t))) continue;
      const int tc = static_cast<int>(t_.children(Parent::node(t)).size());
      if (p_child_sites_[n] == 0 ? tc != p_child_nodes_[n] : tc < p_child_nodes_[n]) continue;
      std::vector<int> bound;
      bool ok = true;
      for (int port = 0; port < p_.control(n).arity && ok; ++port) {
        const int pl = p_.link_of(n, port);
        const int tl = t_.link_of(t, port);
        if (link_map_[pl] != -1) {
          ok = link_map_[pl] == tl;
          continue;
        }
        const Link& plink = p_.link(pl);
        if (plink.is_edge()) {
          const Link& tlink = t_.link(tl);
          if (!tlink.is_edge() || tlink.points.size() != plink.points.size() || edge_claim_[tl] != -1) {
            ok = false;
            continue;
          }
          edge_claim_[tl] = pl;
        }
        link_map_[pl] = tl;
        bound.push_back(pl);
      }
      bool keep_going = true;
      if (ok) {
        node_map_[n] = t;
        used_[t] = 1;
        if (!pp.is_node() && anchor_[k]) region_place_[pp.index] = t_.parent(t);
        keep_going = assign(k + 1);
        if (!pp.is_node() && anchor_[k]) region_place_[pp.index] = std::nullopt;
        used_[t] = 0;
        node_map_[n] = -1;
      }
      for (int pl : bound) {
        if (p_.link(pl).is_edge()) edge_claim_[link_map_[pl]] = -1;
        link_map_[pl] = -1;
      }
      if (!keep_going) return false;
    }
    return true;
  }

  bool finalize() {
    for (const auto& place : region_place_) {
      if (place && place->is_node() && used_[place->index]) return true;
    }
    std::vector<Group> groups;
    for (int n = 0; n < p_.num_nodes(); ++n) {
      if (p_child_sites_[n] == 0) continue;
      Group g;
      for (Child c : p_.children(Parent::node(n))) {
        if (!c.is_node()) g.sites.push_back(c.index);
      }
      for (Child c : t_.children(Parent::node(node_map_[n]))) {
        if (!c.is_node() || !used_[c.index]) g.items.push_back(c);
      }
      groups.push_back(std::move(g));
    }
    std::map<Parent, Group> root_groups;
    for (int r = 0; r < p_.num_regions(); ++r) {
      if (!region_place_[r]) continue;
      for (Child c : p_.children(Parent::region(r))) {
        if (!c.is_node()) root_groups[*region_place_[r]].sites.push_back(c.index);
      }
    }
    for (auto& [place, g] : root_groups) {
      if (g.sites.empty()) continue;
      std::sort(g.sites.begin(), g.sites.end());
      g.optional = true;
      for (Child c : t_.children(place)) {
        if (!c.is_node() || !used_[c.index]) g.items.push_back(c);
      }
      groups.push_back(std::move(g));
    }
    // Flatten into (item, choices) pairs; choice -1 means "stays in the context".
    items_.clear();
    choices_.clear();
    for (const Group& g : groups) {
      for (Child item : g.items) {
        items_.push_back(item);
        std::vector<int> ch;
        if (g.optional) ch.push_back(-1);
        ch.insert(ch.end(), g.sites.begin(), g.sites.end());
        choices_.push_back(std::move(ch));
      }
    }
    pick_.assign(items_.size(), -1);
    return distribute(0);
  }

  bool distribute(std::size_t i) {
    if (i == items_.size()) return emit();
    for (int site : choices_[i]) {
      pick_[i] = site;
      if (!distribute(i + 1)) return false;
    }
    return true;
  }

  bool emit() {
    Occurrence occ;
    occ.sites.assign(p_.num_sites(), {});
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (pick_[i] < 0) continue;
      occ.sites[pick_[i]].push_back(items_[i]);
      if (items_[i].is_node()) {
        for (const auto& place : region_place_) {
          if (place && place->is_node() && t_.is_ancestor(items_[i].index, place->index)) return true;
        }
      }
    }
    for (auto& s : occ.sites) std::sort(s.begin(), s.end());
    occ.nodes = node_map_;
    occ.links = link_map_;
    occ.regions = region_place_;
    return visit_(occ);
  }

  const Bigraph& p_;
  const Bigraph& t_;
  const std::function<bool(const Occurrence&)>& visit_;
  std::vector<int> order_;
  std::vector<char> anchor_;
  std::vector<int> p_child_nodes_;
  std::vector<int> p_child_sites_;
  std::map<std::pair<std::string, int>, std::vector<int>> by_label_;

  std::vector<int> node_map_;
  std::vector<char> used_;
  std::vector<int> link_map_;
  std::vector<int> edge_claim_;
  std::vector<std::optional<Parent>> region_place_;

  std::vector<Child> items_;
  std::vector<std::vector<int>> choices_;
  std::vector<int> pick_;
};

}  // namespace

void for_each_occurrence(const Bigraph& pattern, const Bigraph& target,
                         const std::function<bool(const Occurrence&)>& visit) {
  Matcher m(pattern, target, visit);
  m.run();
}

std::vector<Occurrence> match(const Bigraph& pattern, const Bigraph& target) {
  std::vector<Occurrence> out;
  for_each_occurrence(pattern, target, [&](const Occurrence& o) {
    out.push_back(o);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool occurs(const Bigraph& pattern, const Bigraph& target) {
  bool found = false;
  for_each_occurrence(pattern, target, [&](const Occurrence&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace bigrady
