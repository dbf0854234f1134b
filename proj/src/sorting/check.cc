#include <algorithm>
#include <map>
#include <set>

#include "bigrady/error.h"
#include "bigrady/sorting.h"

namespace bigrady {

namespace {

using Bag = std::map<std::string, int>;

// Every remainder left after some part of `m` satisfies `e`. With `open`,
// sorts missing from `m` may be consumed from the abstracted extension.
std::set<Bag> consume(const SortExpr& e, const Bag& m, bool open) {
  switch (e.kind) {
    case SortExpr::Kind::kOne: return {m};
    case SortExpr::Kind::kSort: {
      std::set<Bag> out;
      auto it = m.find(e.sort);
      if (it != m.end()) {
        Bag r = m;
        if (--r[e.sort] == 0) r.erase(e.sort);
        out.insert(std::move(r));
      }
      if (open) out.insert(m);
      return out;
    }
    case SortExpr::Kind::kSum: {
      std::set<Bag> out;
      for (const auto& a : e.args) {
        auto part = consume(a, m, open);
        out.insert(part.begin(), part.end());
      }
      return out;
    }
    case SortExpr::Kind::kProd: {
      std::set<Bag> cur{m};
      for (const auto& a : e.args) {
        std::set<Bag> next;
        for (const Bag& b : cur) {
          auto part = consume(a, b, open);
          next.insert(part.begin(), part.end());
        }
        cur = std::move(next);
        if (cur.empty()) break;
      }
      return cur;
    }
    case SortExpr::Kind::kStar: {
      // Remainders only shrink, so the closure is finite.
      std::set<Bag> seen{m};
      std::vector<Bag> frontier{m};
      while (!frontier.empty()) {
        std::vector<Bag> fresh;
        for (const Bag& b : frontier) {
          for (Bag r : consume(e.args[0], b, open)) {
            if (seen.insert(r).second) fresh.push_back(std::move(r));
          }
        }
        frontier = std::move(fresh);
      }
      return seen;
    }
  }
  return {};
}

bool bag_satisfies(const SortExpr& e, const Bag& m, bool open) {
  auto rest = consume(e, m, open);
  return rest.count(Bag{}) > 0;
}

class Checker {
 public:
  Checker(const SortScheme& scheme, const Bigraph& b, std::string context)
      : scheme_(scheme), b_(b), context_(std::move(context)) {}

  std::vector<SortDiagnostic> run() {
    const int n = b_.num_nodes();
    members_.resize(n);
    sorts_.resize(n);
    for (int i = 0; i < n; ++i) {
      auto [decl, member] = scheme_.member_for(b_.control(i));
      if (!member) {
        throw Error(ErrorKind::kUnsortedControl,
                    "control " + b_.control(i).label() + " has no sort" + (context_.empty() ? "" : " (" + context_ + ")"));
      }
      members_[i] = member;
      sorts_[i] = decl->name;
    }
    for (int i = 0; i < n; ++i) check_children(i);
    for (int l = 0; l < b_.num_links(); ++l) check_link(l);
    return std::move(out_);
  }

 private:
  std::string port_sort(const Point& p) const {
    const SortMember* m = members_[p.node];
    if (p.port < static_cast<int>(m->ports.size())) return m->ports[p.port].port_sort;
    return "?" + m->label() + "." + std::to_string(p.port);
  }

  std::string node_name(int i) const { return b_.control(i).label() + "#" + std::to_string(i); }

  void check_children(int i) {
    const SortMember* m = members_[i];
    const SortExpr expr = m->children.value_or(SortExpr::one());
    Bag bag;
    bool open = false;
    std::vector<int> kids;
    for (Child c : b_.children(Parent::node(i))) {
      if (!c.is_node()) {
        open = true;
        continue;
      }
      kids.push_back(c.index);
      ++bag[sorts_[c.index]];
    }
    if (bag_satisfies(expr, bag, open)) return;
    const std::string constraint = m->label() + " " + to_string(expr);
    auto allowed = sorts_in(expr);
    bool blamed = false;
    for (int k : kids) {
      if (std::find(allowed.begin(), allowed.end(), sorts_[k]) != allowed.end()) continue;
      blamed = true;
      add(SortDiagnostic::Where::kNode, k, constraint,
          node_name(k) + " (sort " + sorts_[k] + ") may not be placed inside " + node_name(i));
    }
    if (!blamed) {
      std::string have;
      for (const auto& [s, c] : bag) have += (have.empty() ? "" : ", ") + s + (c > 1 ? " x" + std::to_string(c) : "");
      add(SortDiagnostic::Where::kNode, i, constraint,
          "children of " + node_name(i) + " {" + have + "} do not satisfy " + to_string(expr));
    }
  }

  void check_link(int l) {
    const Link& link = b_.link(l);
    const bool open = !link.is_edge();
    for (std::size_t k = 0; k < link.points.size(); ++k) {
      const Point& p = link.points[k];
      const SortMember* m = members_[p.node];
      if (p.port >= static_cast<int>(m->ports.size())) continue;
      const PortConstraint& pc = m->ports[p.port];
      Bag peers;
      for (std::size_t j = 0; j < link.points.size(); ++j) {
        if (j != k) ++peers[port_sort(link.points[j])];
      }
      if (bag_satisfies(pc.peers, peers, open)) continue;
      std::string have;
      for (const auto& [s, c] : peers) have += (have.empty() ? "" : ", ") + s + (c > 1 ? " x" + std::to_string(c) : "");
      const std::string where = link.name ? "name " + *link.name : "edge";
      add(SortDiagnostic::Where::kLink, l, m->label() + "{" + pc.port_sort + " → " + to_string(pc.peers) + "}",
          where + ": port " + std::to_string(p.port) + " of " + node_name(p.node) + " (sort " + pc.port_sort +
              ") is linked to {" + have + "}, expected " + to_string(pc.peers));
    }
  }

  void add(SortDiagnostic::Where where, int index, std::string constraint, std::string message) {
    out_.push_back({where, index, std::move(constraint), std::move(message), context_});
  }

  const SortScheme& scheme_;
  const Bigraph& b_;
  std::string context_;
  std::vector<const SortMember*> members_;
  std::vector<std::string> sorts_;
  std::vector<SortDiagnostic> out_;
};

}  // namespace

bool satisfies(const SortExpr& e, const std::vector<std::string>& items, bool open) {
  Bag bag;
  for (const auto& s : items) ++bag[s];
  return bag_satisfies(e, bag, open);
}

std::vector<SortDiagnostic> check_sorts(const SortScheme& scheme, const Bigraph& b) {
  return Checker(scheme, b, "").run();
}

std::vector<SortDiagnostic> check_rules(const SortScheme& scheme, const std::vector<ReactionRule>& rules) {
  std::vector<SortDiagnostic> out;
  for (const ReactionRule& r : rules) {
    for (auto [side, b] : {std::pair{"redex", &r.redex}, std::pair{"reactum", &r.reactum}}) {
      auto d = Checker(scheme, *b, "rule " + r.name + " " + side).run();
      out.insert(out.end(), d.begin(), d.end());
    }
  }
  return out;
}

std::string to_string(const SortDiagnostic& d) {
  std::string out = d.where == SortDiagnostic::Where::kNode ? "node " : "link ";
  out += std::to_string(d.index);
  if (!d.context.empty()) out += " in " + d.context;
  return out + ": " + d.message + " [" + d.constraint + "]";
}

}  // namespace bigrady
