#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bigrady {

struct Control {
  std::string name;
  std::optional<std::string> param;
  int arity = 0;
  bool atomic = false;

  // "L(Ireland)" or "Data".
  std::string label() const;
  bool operator==(const Control&) const = default;
};

// Parent slot in the place graph.
struct Parent {
  enum Kind : std::uint8_t { kRegion, kNode };
  Kind kind = kRegion;
  int index = 0;

  static Parent region(int r) { return {kRegion, r}; }
  static Parent node(int n) { return {kNode, n}; }
  bool is_node() const { return kind == kNode; }
  auto operator<=>(const Parent&) const = default;
};

// Child slot in the place graph.
struct Child {
  enum Kind : std::uint8_t { kNode, kSite };
  Kind kind = kNode;
  int index = 0;

  static Child node(int n) { return {kNode, n}; }
  static Child site(int s) { return {kSite, s}; }
  bool is_node() const { return kind == kNode; }
  auto operator<=>(const Child&) const = default;
};

struct Point {
  int node = 0;
  int port = 0;
  auto operator<=>(const Point&) const = default;
};

// An outer name when `name` is set, otherwise an edge.
struct Link {
  std::optional<std::string> name;
  std::vector<Point> points;

  bool is_edge() const { return !name.has_value(); }
};

class Bigraph {
 public:
  // One empty region.
  Bigraph();
  // Validates the forest, atomicity and port coverage. Points are sorted.
  Bigraph(int regions, std::vector<Control> controls, std::vector<Parent> node_parents,
          std::vector<Parent> site_parents, std::vector<Link> links);

  int num_regions() const { return regions_; }
  int num_nodes() const { return static_cast<int>(controls_.size()); }
  int num_sites() const { return static_cast<int>(site_parents_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }

  const Control& control(int node) const { return controls_[node]; }
  const std::vector<Control>& controls() const { return controls_; }
  Parent parent(int node) const { return node_parents_[node]; }
  Parent site_parent(int site) const { return site_parents_[site]; }
  Parent parent(Child c) const { return c.is_node() ? parent(c.index) : site_parent(c.index); }

  // Children in ascending order: nodes first, then sites.
  const std::vector<Child>& children(Parent p) const {
    return p.is_node() ? node_children_[p.index] : region_children_[p.index];
  }

  int link_of(int node, int port) const { return port_links_[node][port]; }
  const Link& link(int l) const { return links_[l]; }
  const std::vector<Link>& links() const { return links_; }
  std::optional<int> find_name(std::string_view name) const;
  std::vector<std::string> outer_names() const;

  // True when `a` is `b` or an ancestor of it (nodes only).
  bool is_ancestor(int a, int b) const;
  int depth(int node) const;

 private:
  int regions_ = 1;
  std::vector<Control> controls_;
  std::vector<Parent> node_parents_;
  std::vector<Parent> site_parents_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> port_links_;
  std::vector<std::vector<Child>> node_children_;
  std::vector<std::vector<Child>> region_children_;
};

struct ControlDecl {
  std::string name;
  int arity = 0;
  bool atomic = false;
  bool parameterized = false;
  // Allowed parameter values; empty means unrestricted.
  std::vector<std::string> domain;
};

class Signature {
 public:
  void add(ControlDecl decl);
  void add(std::string name, int arity, bool atomic = false, bool parameterized = false);
  const ControlDecl* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  // Throws UnknownControl for undeclared names, parameter misuse or values outside the domain.
  Control instantiate(std::string_view name, const std::optional<std::string>& param) const;
  const std::vector<ControlDecl>& decls() const { return decls_; }

 private:
  std::vector<ControlDecl> decls_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Structural description; links are given by name. Names listed in `closed` become edges,
// every other name is an outer name.
struct BigraphSpec {
  struct Node {
    std::string control;
    std::optional<std::string> param;
    Parent parent;
    std::vector<std::string> ports;
  };

  int regions = 1;
  std::vector<Node> nodes;
  std::vector<Parent> sites;
  std::vector<std::string> closed;
  std::vector<std::string> idle_names;

  int add_node(std::string control, Parent parent, std::vector<std::string> ports = {},
               std::optional<std::string> param = std::nullopt);
  int add_site(Parent parent);
};

Bigraph build_bigraph(const Signature& sig, const BigraphSpec& spec);

// Debug rendering, one node per line.
std::string to_string(const Bigraph& b);

}  // namespace bigrady
