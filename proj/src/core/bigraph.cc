#include "bigrady/bigraph.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "bigrady/error.h"

namespace bigrady {

std::string Control::label() const {
  if (!param) return name;
  return name + "(" + *param + ")";
}

Bigraph::Bigraph() : regions_(1), region_children_(1) {}

Bigraph::Bigraph(int regions, std::vector<Control> controls, std::vector<Parent> node_parents,
                 std::vector<Parent> site_parents, std::vector<Link> links)
    : regions_(regions),
      controls_(std::move(controls)),
      node_parents_(std::move(node_parents)),
      site_parents_(std::move(site_parents)),
      links_(std::move(links)) {
  const int n = num_nodes();
  if (regions_ < 0) throw Error(ErrorKind::kInvalidBigraph, "negative region count");
  if (static_cast<int>(node_parents_.size()) != n) {
    throw Error(ErrorKind::kInvalidBigraph, "node/parent count mismatch");
  }
  auto check_parent = [&](Parent p, const std::string& what) {
    if (p.is_node() ? (p.index < 0 || p.index >= n) : (p.index < 0 || p.index >= regions_)) {
      throw Error(ErrorKind::kInvalidBigraph, what + " has a dangling parent");
    }
  };
  for (int i = 0; i < n; ++i) check_parent(node_parents_[i], "node " + std::to_string(i));
  for (int s = 0; s < num_sites(); ++s) check_parent(site_parents_[s], "site " + std::to_string(s));

  // 0 = unvisited, 1 = on stack, 2 = rooted
  std::vector<char> state(n, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> chain;
    int cur = i;
    while (true) {
      if (state[cur] == 2) break;
      if (state[cur] == 1) {
        throw Error(ErrorKind::kPlaceCycle, "node " + std::to_string(cur) + " is its own ancestor");
      }
      state[cur] = 1;
      chain.push_back(cur);
      Parent p = node_parents_[cur];
      if (!p.is_node()) break;
      cur = p.index;
    }
    for (int c : chain) state[c] = 2;
  }

  node_children_.assign(n, {});
  region_children_.assign(regions_, {});
  for (int i = 0; i < n; ++i) {
    Parent p = node_parents_[i];
    (p.is_node() ? node_children_[p.index] : region_children_[p.index]).push_back(Child::node(i));
  }
  for (int s = 0; s < num_sites(); ++s) {
    Parent p = site_parents_[s];
    (p.is_node() ? node_children_[p.index] : region_children_[p.index]).push_back(Child::site(s));
  }
  for (int i = 0; i < n; ++i) {
    if (controls_[i].atomic && !node_children_[i].empty()) {
      throw Error(ErrorKind::kAtomicWithChildren,
                  "atomic node " + std::to_string(i) + " (" + controls_[i].label() + ") has children");
    }
    if (controls_[i].arity < 0) throw Error(ErrorKind::kArityMismatch, "negative arity");
  }

  port_links_.assign(n, {});
  for (int i = 0; i < n; ++i) port_links_[i].assign(controls_[i].arity, -1);
  std::set<std::string, std::less<>> names;
  for (int l = 0; l < num_links(); ++l) {
    Link& link = links_[l];
    if (link.name && !names.insert(*link.name).second) {
      throw Error(ErrorKind::kInvalidBigraph, "duplicate outer name " + *link.name);
    }
    std::sort(link.points.begin(), link.points.end());
    for (const Point& pt : link.points) {
      if (pt.node < 0 || pt.node >= n || pt.port < 0 || pt.port >= controls_[pt.node].arity) {
        throw Error(ErrorKind::kArityMismatch, "link point refers to a missing port");
      }
      if (port_links_[pt.node][pt.port] != -1) {
        throw Error(ErrorKind::kInvalidBigraph, "port linked twice");
      }
      port_links_[pt.node][pt.port] = l;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < controls_[i].arity; ++p) {
      if (port_links_[i][p] == -1) {
        throw Error(ErrorKind::kArityMismatch,
                    "port " + std::to_string(p) + " of node " + std::to_string(i) + " is unlinked");
      }
    }
  }
}

std::optional<int> Bigraph::find_name(std::string_view name) const {
  for (int l = 0; l < num_links(); ++l) {
    if (links_[l].name && *links_[l].name == name) return l;
  }
  return std::nullopt;
}

std::vector<std::string> Bigraph::outer_names() const {
  std::vector<std::string> out;
  for (const Link& l : links_) {
    if (l.name) out.push_back(*l.name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Bigraph::is_ancestor(int a, int b) const {
  int cur = b;
  while (true) {
    if (cur == a) return true;
    Parent p = node_parents_[cur];
    if (!p.is_node()) return false;
    cur = p.index;
  }
}

int Bigraph::depth(int node) const {
  int d = 0;
  for (Parent p = node_parents_[node]; p.is_node(); p = node_parents_[p.index]) ++d;
  return d;
}

void Signature::add(ControlDecl decl) {
  auto it = index_.find(decl.name);
  if (it != index_.end()) {
    decls_[it->second] = std::move(decl);
    return;
  }
  index_.emplace(decl.name, decls_.size());
  decls_.push_back(std::move(decl));
}

void Signature::add(std::string name, int arity, bool atomic, bool parameterized) {
  add(ControlDecl{std::move(name), arity, atomic, parameterized, {}});
}

const ControlDecl* Signature::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &decls_[it->second];
}

Control Signature::instantiate(std::string_view name, const std::optional<std::string>& param) const {
  const ControlDecl* d = find(name);
  if (!d) throw Error(ErrorKind::kUnknownControl, "undeclared control " + std::string(name));
  if (d->parameterized != param.has_value()) {
    throw Error(ErrorKind::kUnknownControl,
                std::string(name) + (d->parameterized ? " needs a parameter" : " takes no parameter"));
  }
  if (param && !d->domain.empty() &&
      std::find(d->domain.begin(), d->domain.end(), *param) == d->domain.end()) {
    throw Error(ErrorKind::kUnknownControl,
                std::string(name) + "(" + *param + ") is outside the declared domain");
  }
  return Control{d->name, param, d->arity, d->atomic};
}

int BigraphSpec::add_node(std::string control, Parent parent, std::vector<std::string> ports,
                          std::optional<std::string> param) {
  nodes.push_back(Node{std::move(control), std::move(param), parent, std::move(ports)});
  return static_cast<int>(nodes.size()) - 1;
}

int BigraphSpec::add_site(Parent parent) {
  sites.push_back(parent);
  return static_cast<int>(sites.size()) - 1;
}

Bigraph build_bigraph(const Signature& sig, const BigraphSpec& spec) {
  std::vector<Control> controls;
  std::vector<Parent> parents;
  controls.reserve(spec.nodes.size());
  std::set<std::string, std::less<>> closed(spec.closed.begin(), spec.closed.end());
  std::map<std::string, int, std::less<>> link_index;
  std::vector<Link> links;
  auto link_for = [&](const std::string& name) {
    auto it = link_index.find(name);
    if (it != link_index.end()) return it->second;
    Link l;
    if (!closed.count(name)) l.name = name;
    links.push_back(std::move(l));
    link_index.emplace(name, static_cast<int>(links.size()) - 1);
    return static_cast<int>(links.size()) - 1;
  };
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    Control c = sig.instantiate(node.control, node.param);
    if (static_cast<int>(node.ports.size()) != c.arity) {
      throw Error(ErrorKind::kArityMismatch, c.label() + " has arity " + std::to_string(c.arity) +
                                                 " but " + std::to_string(node.ports.size()) +
                                                 " link endpoints were given");
    }
    for (int p = 0; p < c.arity; ++p) {
      if (node.ports[p].empty()) throw Error(ErrorKind::kArityMismatch, "empty link name");
      links[link_for(node.ports[p])].points.push_back({static_cast<int>(i), p});
    }
    controls.push_back(std::move(c));
    parents.push_back(node.parent);
  }
  for (const std::string& name : spec.idle_names) {
    if (!closed.count(name)) link_for(name);
  }
  // Closed names without points vanish.
  std::vector<Link> kept;
  for (Link& l : links) {
    if (l.is_edge() && l.points.empty()) continue;
    kept.push_back(std::move(l));
  }
  return Bigraph(spec.regions, std::move(controls), std::move(parents), spec.sites, std::move(kept));
}

std::string to_string(const Bigraph& b) {
  std::ostringstream out;
  out << "regions=" << b.num_regions() << " sites=" << b.num_sites() << "\n";
  auto parent_str = [](Parent p) {
    return (p.is_node() ? "n" : "r") + std::to_string(p.index);
  };
  for (int i = 0; i < b.num_nodes(); ++i) {
    out << "n" << i << " " << b.control(i).label() << " in " << parent_str(b.parent(i));
    for (int p = 0; p < b.control(i).arity; ++p) {
      const Link& l = b.link(b.link_of(i, p));
      out << (p == 0 ? " {" : ",") << (l.name ? *l.name : "e" + std::to_string(b.link_of(i, p)));
    }
    if (b.control(i).arity > 0) out << "}";
    out << "\n";
  }
  for (int s = 0; s < b.num_sites(); ++s) out << "s" << s << " in " << parent_str(b.site_parent(s)) << "\n";
  return out.str();
}

}  // namespace bigrady
