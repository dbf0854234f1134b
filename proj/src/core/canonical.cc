#include "bigrady/canonical.h"

#include <algorithm>
#include <numeric>
#include <optional>

namespace bigrady {

namespace {

using Sig = std::vector<long>;

// Replaces each signature by its rank among the distinct signatures.
std::vector<int> rank(const std::vector<Sig>& sigs) {
  std::vector<int> idx(sigs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sigs[a] < sigs[b]; });
  std::vector<int> out(sigs.size());
  int r = -1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || sigs[idx[i]] != sigs[idx[i - 1]]) ++r;
    out[idx[i]] = r;
  }
  return out;
}

int distinct(const std::vector<int>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

class Canonizer {
 public:
  explicit Canonizer(const Bigraph& b) : b_(b) {}

  std::string run() {
    const int n = b_.num_nodes();
    std::vector<Sig> init(n);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = b_.control(i).label();
    std::vector<std::string> sorted_labels = labels;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    sorted_labels.erase(std::unique(sorted_labels.begin(), sorted_labels.end()), sorted_labels.end());
    for (int i = 0; i < n; ++i) {
      long li = std::lower_bound(sorted_labels.begin(), sorted_labels.end(), labels[i]) - sorted_labels.begin();
      init[i] = {li, b_.control(i).arity};
    }
    std::vector<int> colors = rank(init);
    search(refine(colors), {});
    return best_ ? *best_ : leaf_string(std::vector<int>{});
  }

 private:
  std::vector<int> link_colors(const std::vector<int>& node_colors) const {
    std::vector<Sig> sigs(b_.num_links());
    for (int l = 0; l < b_.num_links(); ++l) {
      const Link& link = b_.link(l);
      Sig s{link.is_edge() ? 0L : 1L};
      std::vector<std::pair<int, int>> pts;
      for (const Point& p : link.points) pts.emplace_back(node_colors[p.node], p.port);
      std::sort(pts.begin(), pts.end());
      for (auto [c, port] : pts) {
        s.push_back(c);
        s.push_back(port);
      }
      sigs[l] = std::move(s);
    }
    return rank(sigs);
  }

  std::vector<int> refine(std::vector<int> colors) const {
    const int n = b_.num_nodes();
    int cells = distinct(colors);
    while (true) {
      std::vector<int> lc = link_colors(colors);
      std::vector<Sig> sigs(n);
      for (int i = 0; i < n; ++i) {
        Sig s{colors[i]};
        Parent p = b_.parent(i);
        s.push_back(p.is_node() ? 1 : 0);
        s.push_back(p.is_node() ? colors[p.index] : p.index);
        std::vector<long> kids;
        for (Child c : b_.children(Parent::node(i))) {
          kids.push_back(c.is_node() ? colors[c.index] : -1L - c.index);
        }
        std::sort(kids.begin(), kids.end());
        s.push_back(static_cast<long>(kids.size()));
        s.insert(s.end(), kids.begin(), kids.end());
        for (int port = 0; port < b_.control(i).arity; ++port) s.push_back(lc[b_.link_of(i, port)]);
        sigs[i] = std::move(s);
      }
      std::vector<int> next = rank(sigs);
      int next_cells = distinct(next);
      colors = std::move(next);
      if (next_cells == cells) return colors;
      cells = next_cells;
    }
  }

  std::string leaf_string(const std::vector<int>& colors) const {
    const int n = b_.num_nodes();
    // colours are a permutation at a leaf
    std::vector<int> pos = colors;
    std::string out = "R" + std::to_string(b_.num_regions()) + "S" + std::to_string(b_.num_sites()) +
                      "N" + std::to_string(n) + "|";
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[pos[i]] = i;
    // Links ordered by their canonical point lists.
    std::vector<std::pair<std::vector<std::pair<int, int>>, int>> lk;
    for (int l = 0; l < b_.num_links(); ++l) {
      std::vector<std::pair<int, int>> pts;
      for (const Point& p : b_.link(l).points) pts.emplace_back(pos[p.node], p.port);
      std::sort(pts.begin(), pts.end());
      lk.emplace_back(std::move(pts), l);
    }
    std::sort(lk.begin(), lk.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return b_.link(a.second).is_edge() < b_.link(b.second).is_edge();
    });
    std::vector<int> link_pos(b_.num_links());
    for (std::size_t i = 0; i < lk.size(); ++i) link_pos[lk[i].second] = static_cast<int>(i);
    auto parent_str = [&](Parent p) {
      return (p.is_node() ? "n" + std::to_string(pos[p.index]) : "r" + std::to_string(p.index));
    };
    for (int k = 0; k < n; ++k) {
      const int i = ord[k];
      const std::string label = b_.control(i).label();
      out += std::to_string(label.size()) + ":" + label + "@" + parent_str(b_.parent(i));
      for (int port = 0; port < b_.control(i).arity; ++port) {
        out += (port == 0 ? "{" : ",") + std::to_string(link_pos[b_.link_of(i, port)]);
      }
      if (b_.control(i).arity > 0) out += "}";
      out += ";";
    }
    out += "|";
    for (int s = 0; s < b_.num_sites(); ++s) out += parent_str(b_.site_parent(s)) + ";";
    out += "|";
    for (const auto& [pts, l] : lk) out += b_.link(l).is_edge() ? "e" : "o";
    return out;
  }

  // Returns the depth to backtrack to after an automorphism was found, or -1.
  int search(const std::vector<int>& colors, std::vector<int> prefix) {
    const int n = b_.num_nodes();
    if (distinct(colors) == n) {
      std::string s = leaf_string(colors);
      std::vector<int> ord(n);
      for (int i = 0; i < n; ++i) ord[colors[i]] = i;
      if (!best_ || s < *best_) {
        best_ = std::move(s);
        best_ord_ = std::move(ord);
        best_prefix_ = std::move(prefix);
      } else if (s == *best_) {
        std::vector<int> gamma(n);
        for (int k = 0; k < n; ++k) gamma[best_ord_[k]] = ord[k];
        autos_.push_back(std::move(gamma));
        // This subtree mirrors the best one below the first differing choice.
        std::size_t d = 0;
        while (d < prefix.size() && d < best_prefix_.size() && prefix[d] == best_prefix_[d]) ++d;
        if (d < prefix.size()) return static_cast<int>(d);
      }
      return -1;
    }
    // First smallest non-singleton cell.
    std::vector<int> size(n, 0);
    for (int c : colors) ++size[c];
    int target = -1;
    for (int c = 0; c < n; ++c) {
      if (size[c] > 1) {
        target = c;
        break;
      }
    }
    std::vector<int> cell;
    for (int i = 0; i < n; ++i) {
      if (colors[i] == target) cell.push_back(i);
    }
    std::vector<int> done;
    for (int v : cell) {
      if (!done.empty() && equivalent(v, done, prefix)) continue;
      done.push_back(v);
      std::vector<Sig> split(n);
      for (int i = 0; i < n; ++i) split[i] = {2L * colors[i] + (colors[i] == target && i != v ? 1 : 0)};
      std::vector<int> child_prefix = prefix;
      child_prefix.push_back(v);
      const int depth = static_cast<int>(prefix.size());
      int jump = search(refine(rank(split)), std::move(child_prefix));
      if (jump >= 0 && jump < depth) return jump;
    }
    return -1;
  }

  // Whether v shares an orbit with one of `done` under automorphisms fixing `prefix`.
  bool equivalent(int v, const std::vector<int>& done, const std::vector<int>& prefix) const {
    const int n = b_.num_nodes();
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (const auto& g : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      for (int i = 0; i < n; ++i) uf[find(i)] = find(g[i]);
    }
    for (int u : done) {
      if (find(u) == find(v)) return true;
    }
    return false;
  }

  const Bigraph& b_;
  std::optional<std::string> best_;
  std::vector<int> best_ord_;
  std::vector<int> best_prefix_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace

std::string canonical_form(const Bigraph& b) { return Canonizer(b).run(); }

bool is_isomorphic(const Bigraph& a, const Bigraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_regions() != b.num_regions() ||
      a.num_sites() != b.num_sites() || a.num_links() != b.num_links()) {
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

}  // namespace bigrady
