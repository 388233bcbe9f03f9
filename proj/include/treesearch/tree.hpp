#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treesearch/error.hpp"
#include "treesearch/rational.hpp"

namespace treesearch {

/// Sorted list of distinct 1-based vertex ids.
using VertexSet = std::vector<int>;

/// Unchecked instance data as read from a file or built by a generator.
struct RawInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Rational> costs;  // costs[i] belongs to vertex i + 1
};

/// A validated tree with positive rational vertex costs. Vertex ids are 1..n.
/// Immutable once built; obtain one through validate_instance().
class TreeInstance {
 public:
  int size() const { return n_; }
  const Rational& cost(int v) const { return costs_[static_cast<std::size_t>(v - 1)]; }
  const std::vector<Rational>& costs() const { return costs_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_vertex(int v) const { return v >= 1 && v <= n_; }

  VertexSet vertices() const {
    VertexSet all(static_cast<std::size_t>(n_));
    std::iota(all.begin(), all.end(), 1);
    return all;
  }

  Rational max_cost() const { return *std::max_element(costs_.begin(), costs_.end()); }

  RawInstance raw() const { return RawInstance{n_, edges_, costs_}; }

  friend bool operator==(const TreeInstance& a, const TreeInstance& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.costs_ == b.costs_;
  }

 private:
  friend TreeInstance validate_instance(RawInstance raw);

  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Rational> costs_;
  std::vector<std::vector<int>> adj_;  // indexed by vertex id, slot 0 unused
};

/// Checks that the edges form a spanning tree on 1..n and every cost is
/// positive. Edges are stored with the smaller endpoint first, in input order.
inline TreeInstance validate_instance(RawInstance raw) {
  if (raw.n < 1) throw Error(Errc::NotATree, "instance needs at least one vertex");
  const auto n = static_cast<std::size_t>(raw.n);
  if (raw.costs.size() != n) {
    throw Error(Errc::NotATree, "expected " + std::to_string(n) + " costs, got " + std::to_string(raw.costs.size()));
  }
  if (raw.edges.size() != n - 1) {
    throw Error(Errc::NotATree, "expected " + std::to_string(n - 1) + " edges, got " + std::to_string(raw.edges.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!raw.costs[i].is_positive()) {
      throw Error(Errc::NonPositiveCost, "vertex " + std::to_string(i + 1) + " has cost " + raw.costs[i].str(),
                  static_cast<int>(i + 1));
    }
  }

  // Union-find: n-1 edges and no cycle means connected and acyclic.
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  TreeInstance inst;
  inst.n_ = raw.n;
  inst.adj_.assign(n + 1, {});
  for (auto [u, v] : raw.edges) {
    if (u < 1 || v < 1 || u > raw.n || v > raw.n) {
      throw Error(Errc::NotATree, "edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
    }
    if (u == v) throw Error(Errc::NotATree, "self loop at vertex " + std::to_string(u), u);
    int ru = find(u);
    int rv = find(v);
    if (ru == rv) {
      throw Error(Errc::NotATree, "edge " + std::to_string(u) + "-" + std::to_string(v) + " closes a cycle");
    }
    parent[static_cast<std::size_t>(ru)] = rv;
    inst.edges_.emplace_back(std::min(u, v), std::max(u, v));
    inst.adj_[static_cast<std::size_t>(u)].push_back(v);
    inst.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : inst.adj_) std::sort(list.begin(), list.end());
  inst.costs_ = std::move(raw.costs);
  return inst;
}

/// Divides every cost by the maximum cost. Returns the new instance and the
/// maximum (the scale) so that original = normalized * scale.
inline std::pair<TreeInstance, Rational> normalize(const TreeInstance& inst) {
  Rational scale = inst.max_cost();
  RawInstance raw = inst.raw();
  for (auto& c : raw.costs) c /= scale;
  return {validate_instance(std::move(raw)), scale};
}

/// Membership bitmap over 1..n, for O(1) lookups while walking the tree.
class VertexMask {
 public:
  explicit VertexMask(int n) : bits_(static_cast<std::size_t>(n) + 1, 0) {}
  VertexMask(int n, std::span<const int> set) : VertexMask(n) {
    for (int v : set) insert(v);
  }
  bool contains(int v) const {
    return v >= 0 && static_cast<std::size_t>(v) < bits_.size() && bits_[static_cast<std::size_t>(v)] != 0;
  }
  void insert(int v) { bits_[static_cast<std::size_t>(v)] = 1; }
  void erase(int v) { bits_[static_cast<std::size_t>(v)] = 0; }

 private:
  std::vector<char> bits_;
};

inline VertexSet make_vertex_set(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline bool set_contains(const VertexSet& set, int v) { return std::binary_search(set.begin(), set.end(), v); }

/// Connected components of the subgraph induced by `set`, each sorted,
/// ordered by smallest vertex id.
inline std::vector<VertexSet> induced_components(const TreeInstance& inst, std::span<const int> set) {
  VertexMask remaining(inst.size(), set);
  VertexSet sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexSet> out;
  std::vector<int> stack;
  for (int start : sorted) {
    if (!remaining.contains(start)) continue;
    VertexSet comp;
    remaining.erase(start);
    stack.push_back(start);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : inst.neighbors(u)) {
        if (remaining.contains(w)) {
          remaining.erase(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const TreeInstance& inst, std::span<const int> set) {
  if (set.empty()) return false;
  return induced_components(inst, set).size() == 1;
}

/// Throws NotConnected / UnknownVertex unless `set` is a nonempty connected vertex set of `inst`.
inline void require_connected(const TreeInstance& inst, const VertexSet& set) {
  for (int v : set) {
    if (!inst.has_vertex(v)) throw Error(Errc::UnknownVertex, "vertex " + std::to_string(v) + " not in instance", v);
  }
  if (!is_connected(inst, set)) throw Error(Errc::NotConnected, "vertex set does not induce a connected subtree");
}

/// Components of candidate - {v}: the possible non-affirmative responses to
/// a query at v when the target is known to lie in `candidate`.
inline std::vector<VertexSet> split_components(const TreeInstance& inst, const VertexSet& candidate, int v) {
  if (!set_contains(candidate, v)) {
    throw Error(Errc::VertexNotInCandidate, "vertex " + std::to_string(v) + " is not a candidate", v);
  }
  VertexSet rest;
  rest.reserve(candidate.size() - 1);
  for (int u : candidate) {
    if (u != v) rest.push_back(u);
  }
  return induced_components(inst, rest);
}

/// Builds a standalone instance on `set` (ids renumbered 1..|set| in
/// ascending order) with the same costs. `set` must be connected.
inline TreeInstance induced_instance(const TreeInstance& inst, const VertexSet& set) {
  require_connected(inst, set);
  VertexMask in(inst.size(), set);
  RawInstance raw;
  raw.n = static_cast<int>(set.size());
  auto local = [&](int v) {
    return static_cast<int>(std::lower_bound(set.begin(), set.end(), v) - set.begin()) + 1;
  };
  for (int v : set) {
    raw.costs.push_back(inst.cost(v));
    for (int w : inst.neighbors(v)) {
      if (w > v && in.contains(w)) raw.edges.emplace_back(local(v), local(w));
    }
  }
  return validate_instance(std::move(raw));
}

}  // namespace treesearch
