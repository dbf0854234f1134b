#include "bigrady/engine.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "bigrady/canonical.h"
#include "bigrady/error.h"

namespace bigrady {

ReactionRule make_rule(std::string name, Bigraph redex, Bigraph reactum, std::vector<int> eta) {
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::kInvalidRule, name + ": " + why); };
  if (redex.num_nodes() == 0) fail("redex has no nodes");
  if (redex.num_regions() != reactum.num_regions()) fail("redex and reactum differ in region count");
  for (int r = 0; r < redex.num_regions(); ++r) {
    const auto& kids = redex.children(Parent::region(r));
    if (std::none_of(kids.begin(), kids.end(), [](Child c) { return c.is_node(); })) {
      fail("redex region " + std::to_string(r) + " has no nodes");
    }
  }
  if (eta.empty()) {
    if (reactum.num_sites() > redex.num_sites()) fail("reactum has more sites than the redex; give eta");
    for (int j = 0; j < reactum.num_sites(); ++j) eta.push_back(j);
  }
  if (static_cast<int>(eta.size()) != reactum.num_sites()) fail("eta size differs from reactum sites");
  for (int k : eta) {
    if (k < 0 || k >= redex.num_sites()) fail("eta refers to missing redex site " + std::to_string(k));
  }
  return ReactionRule{std::move(name), std::move(redex), std::move(reactum), std::move(eta)};
}

std::vector<std::vector<std::size_t>> TransitionSystem::outgoing() const {
  std::vector<std::vector<std::size_t>> out(states.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) out[transitions[i].source].push_back(i);
  return out;
}

bool TransitionSystem::has_label(int state, const std::string& name) const {
  const auto& l = labels[state];
  return std::find(l.begin(), l.end(), name) != l.end();
}

Bigraph rewrite(const ReactionRule& rule, const Bigraph& target, const Occurrence& occ) {
  const Bigraph& q = rule.reactum;
  const int tn = target.num_nodes();
  std::vector<char> removed(tn, 0);
  for (int t : occ.nodes) removed[t] = 1;

  // Parameter pieces: node subtrees and target sites under each redex site.
  const int pieces = static_cast<int>(occ.sites.size());
  std::vector<int> piece_of(tn, -1);
  std::vector<int> site_piece(target.num_sites(), -1);
  std::vector<int> uses(pieces, 0);
  for (int k : rule.eta) ++uses[k];
  for (int k = 0; k < pieces; ++k) {
    std::vector<Child> stack(occ.sites[k].begin(), occ.sites[k].end());
    while (!stack.empty()) {
      Child c = stack.back();
      stack.pop_back();
      if (!c.is_node()) {
        site_piece[c.index] = k;
        if (uses[k] != 1) {
          throw Error(ErrorKind::kInvalidRule, rule.name + ": cannot copy or discard a parameter holding a site");
        }
        continue;
      }
      piece_of[c.index] = k;
      removed[c.index] = 1;
      for (Child g : target.children(Parent::node(c.index))) stack.push_back(g);
    }
  }

  std::vector<Control> controls;
  std::vector<Parent> parents;
  std::vector<int> new_index(tn, -1);
  for (int i = 0; i < tn; ++i) {
    if (removed[i]) continue;
    new_index[i] = static_cast<int>(controls.size());
    controls.push_back(target.control(i));
    parents.push_back(target.parent(i));
  }
  auto translate = [&](Parent p) {
    return p.is_node() ? Parent::node(new_index[p.index]) : p;
  };
  for (auto& p : parents) p = translate(p);

  std::vector<Parent> site_parents(target.num_sites());
  for (int s = 0; s < target.num_sites(); ++s) {
    if (site_piece[s] < 0) site_parents[s] = translate(target.site_parent(s));
  }

  // Reactum nodes.
  std::vector<int> q_index(q.num_nodes(), -1);
  std::vector<int> pending;
  for (int r = 0; r < q.num_regions(); ++r) {
    for (Child c : q.children(Parent::region(r))) {
      if (c.is_node()) pending.push_back(c.index);
    }
  }
  auto host_of = [&](Parent qp) {
    if (qp.is_node()) return Parent::node(q_index[qp.index]);
    return translate(*occ.regions[qp.index]);
  };
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const int qn = pending[i];
    q_index[qn] = static_cast<int>(controls.size());
    controls.push_back(q.control(qn));
    parents.push_back(host_of(q.parent(qn)));
    for (Child c : q.children(Parent::node(qn))) {
      if (c.is_node()) pending.push_back(c.index);
    }
  }

  // Parameter copies: (copy number, old node) -> new node.
  std::vector<std::vector<std::pair<int, int>>> copies(rule.eta.size());
  for (std::size_t j = 0; j < rule.eta.size(); ++j) {
    const Parent host = host_of(q.site_parent(static_cast<int>(j)));
    std::vector<std::pair<Child, Parent>> stack;
    for (auto it = occ.sites[rule.eta[j]].rbegin(); it != occ.sites[rule.eta[j]].rend(); ++it) {
      stack.emplace_back(*it, host);
    }
    while (!stack.empty()) {
      auto [c, where] = stack.back();
      stack.pop_back();
      if (!c.is_node()) {
        site_parents[c.index] = where;
        continue;
      }
      const int ni = static_cast<int>(controls.size());
      controls.push_back(target.control(c.index));
      parents.push_back(where);
      copies[j].emplace_back(c.index, ni);
      const auto& kids = target.children(Parent::node(c.index));
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, Parent::node(ni));
    }
  }

  // Links.
  std::vector<Link> links;
  for (int l = 0; l < target.num_links(); ++l) links.push_back(Link{target.link(l).name, {}});
  std::vector<int> internal(target.num_links(), -1);
  for (int l = 0; l < target.num_links(); ++l) {
    const Link& link = target.link(l);
    if (!link.is_edge() || link.points.empty()) continue;
    int k = piece_of[link.points.front().node];
    if (k < 0) continue;
    bool all = std::all_of(link.points.begin(), link.points.end(),
                           [&](const Point& p) { return piece_of[p.node] == k; });
    if (all) internal[l] = k;
  }
  for (int i = 0; i < tn; ++i) {
    if (new_index[i] < 0) continue;
    for (int port = 0; port < target.control(i).arity; ++port) {
      links[target.link_of(i, port)].points.push_back({new_index[i], port});
    }
  }
  for (std::size_t j = 0; j < copies.size(); ++j) {
    std::map<int, int> fresh;
    for (auto [old, ni] : copies[j]) {
      for (int port = 0; port < target.control(old).arity; ++port) {
        const int tl = target.link_of(old, port);
        int dest = tl;
        if (internal[tl] >= 0) {
          auto it = fresh.find(tl);
          if (it == fresh.end()) {
            links.push_back(Link{});
            it = fresh.emplace(tl, static_cast<int>(links.size()) - 1).first;
          }
          dest = it->second;
        }
        links[dest].points.push_back({ni, port});
      }
    }
  }
  std::vector<int> q_link(q.num_links(), -1);
  for (int ql = 0; ql < q.num_links(); ++ql) {
    const Link& link = q.link(ql);
    if (link.name) {
      if (auto rl = rule.redex.find_name(*link.name); rl && occ.links[*rl] >= 0) {
        q_link[ql] = occ.links[*rl];
        continue;
      }
    }
    if (link.points.empty()) continue;
    links.push_back(Link{});
    q_link[ql] = static_cast<int>(links.size()) - 1;
  }
  for (int qn = 0; qn < q.num_nodes(); ++qn) {
    for (int port = 0; port < q.control(qn).arity; ++port) {
      links[q_link[q.link_of(qn, port)]].points.push_back({q_index[qn], port});
    }
  }
  std::vector<Link> kept;
  for (Link& l : links) {
    if (l.is_edge() && l.points.empty()) continue;
    kept.push_back(std::move(l));
  }
  return Bigraph(target.num_regions(), std::move(controls), std::move(parents), std::move(site_parents),
                 std::move(kept));
}

std::vector<Successor> apply_rule_keyed(const ReactionRule& rule, const Bigraph& state,
                                        std::size_t* raw_count) {
  std::map<std::string, Bigraph> seen;
  for_each_occurrence(rule.redex, state, [&](const Occurrence& occ) {
    Bigraph next = rewrite(rule, state, occ);
    std::string key = canonical_form(next);
    seen.try_emplace(std::move(key), std::move(next));
    if (raw_count) ++*raw_count;
    return true;
  });
  std::vector<Successor> out;
  for (auto& [key, b] : seen) out.push_back(Successor{rule.name, std::move(b), key});
  return out;
}

std::vector<Bigraph> apply_rule(const ReactionRule& rule, const Bigraph& state) {
  std::vector<Bigraph> out;
  for (auto& s : apply_rule_keyed(rule, state)) out.push_back(std::move(s.state));
  return out;
}

std::vector<Successor> step_keyed(const PriorityClasses& classes, const Bigraph& state,
                                  std::size_t* raw_count) {
  for (const auto& cls : classes) {
    std::vector<Successor> out;
    for (const ReactionRule& rule : cls) {
      auto succ = apply_rule_keyed(rule, state, raw_count);
      for (auto& s : succ) out.push_back(std::move(s));
    }
    if (out.empty()) continue;
    std::sort(out.begin(), out.end(), [](const Successor& a, const Successor& b) {
      return std::tie(a.rule, a.key) < std::tie(b.rule, b.key);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Successor& a, const Successor& b) {
                            return a.rule == b.rule && a.key == b.key;
                          }),
              out.end());
    return out;
  }
  return {};
}

std::vector<std::pair<std::string, Bigraph>> step(const PriorityClasses& classes, const Bigraph& state) {
  std::vector<std::pair<std::string, Bigraph>> out;
  for (auto& s : step_keyed(classes, state)) out.emplace_back(std::move(s.rule), std::move(s.state));
  return out;
}

std::vector<std::string> label_state(const Bigraph& state, const std::vector<Predicate>& predicates) {
  std::vector<std::string> out;
  for (const Predicate& p : predicates) {
    if (occurs(p.pattern, state)) out.push_back(p.name);
  }
  return out;
}

TransitionSystem build_transition_system(const Bigraph& initial, const PriorityClasses& classes,
                                         const std::vector<Predicate>& predicates,
                                         const ExploreOptions& options) {
  TransitionSystem ts;
  for (const Predicate& p : predicates) ts.predicate_names.push_back(p.name);
  std::unordered_map<std::string, int> index;
  auto add_state = [&](Bigraph b, std::string key) {
    const int id = static_cast<int>(ts.states.size());
    if (ts.states.size() >= options.max_states) {
      throw BudgetExceeded(options.max_states, ts.states.size() + 1, ts.transitions.size());
    }
    index.emplace(key, id);
    ts.labels.push_back(label_state(b, predicates));
    if (options.on_state) options.on_state(id, b);
    ts.states.push_back(std::move(b));
    ts.keys.push_back(std::move(key));
    return id;
  };
  add_state(initial, canonical_form(initial));
  for (std::size_t cur = 0; cur < ts.states.size(); ++cur) {
    auto succ = step_keyed(classes, ts.states[cur], &ts.raw_occurrences);
    if (succ.empty()) {
      ts.transitions.push_back({static_cast<int>(cur), kDeadlockRule, static_cast<int>(cur)});
      continue;
    }
    std::set<std::pair<std::string, int>> emitted;
    for (auto& s : succ) {
      auto it = index.find(s.key);
      int id = it != index.end() ? it->second : add_state(std::move(s.state), s.key);
      if (emitted.emplace(s.rule, id).second) {
        ts.transitions.push_back({static_cast<int>(cur), s.rule, id});
      }
    }
  }
  return ts;
}

}  // namespace bigrady
