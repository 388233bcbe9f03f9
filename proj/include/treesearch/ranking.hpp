#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/error.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

/// Vertex ranking of a connected vertex set: equal labels are always
/// separated by a strictly larger label on the path between them.
struct Ranking {
  std::map<int, int> labels;
  int max_label = 0;
};

/// Minimal vertex ranking of the subtree induced by `set`.
///
/// Bottom-up greedy over the tree rooted at the smallest id: each vertex gets
/// the smallest label that is absent from the labels still visible in its
/// child subtrees and larger than every label visible in two of them. The
/// visible-label set of a subtree is its critical list; taking the smallest
/// feasible label keeps every critical list lexicographically minimal, which
/// makes the final maximum label optimal.
inline Ranking vertex_ranking(const TreeInstance& inst, const VertexSet& set) {
  require_connected(inst, set);
  VertexMask in(inst.size(), set);

  // Iterative DFS order from the smallest id; children visited in ascending id.
  std::vector<int> order;
  std::map<int, int> parent;
  order.reserve(set.size());
  std::vector<int> stack{set.front()};
  parent[set.front()] = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    const auto& nb = inst.neighbors(u);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (*it != parent[u] && in.contains(*it)) {
        parent[*it] = u;
        stack.push_back(*it);
      }
    }
  }

  std::map<int, std::uint64_t> visible;  // bit l set <=> label l visible from above
  Ranking out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    std::uint64_t seen = 0;
    std::uint64_t twice = 0;
    for (int w : inst.neighbors(u)) {
      if (w == parent[u] || !in.contains(w)) continue;
      std::uint64_t vis = visible.at(w);
      twice |= seen & vis;
      seen |= vis;
    }
    // Bit l stands for label l; bit_width(twice) is one above the largest
    // label visible in two child subtrees.
    int label = twice == 0 ? 1 : std::bit_width(twice);
    while (seen & (std::uint64_t{1} << label)) ++label;
    if (label >= 63) throw Error(Errc::InvalidSize, "ranking label overflow");
    std::uint64_t above = label + 1 >= 64 ? 0 : (seen >> (label + 1)) << (label + 1);
    visible[u] = above | (std::uint64_t{1} << label);
    out.labels[u] = label;
    out.max_label = std::max(out.max_label, label);
  }
  return out;
}

/// True iff every pair of equal labels is separated by a larger label.
/// Quadratic; meant for tests and assertions.
inline bool is_valid_ranking(const TreeInstance& inst, const VertexSet& set, const Ranking& ranking) {
  VertexMask in(inst.size(), set);
  for (int source : set) {
    int l = ranking.labels.at(source);
    // Walk outward from `source` through vertices with label <= l that are not
    // blocked; reaching another label-l vertex without passing a larger label is a violation.
    std::vector<std::pair<int, int>> stack{{source, 0}};
    while (!stack.empty()) {
      auto [u, from] = stack.back();
      stack.pop_back();
      for (int w : inst.neighbors(u)) {
        if (w == from || !in.contains(w)) continue;
        int lw = ranking.labels.at(w);
        if (lw == l) return false;
        if (lw < l) stack.emplace_back(w, u);
      }
    }
  }
  return true;
}

namespace detail {

inline int ranking_dt_build(const TreeInstance& inst, const Ranking& ranking, const VertexSet& set,
                            DecisionTree& out) {
  int top = set.front();
  int count = 0;
  for (int v : set) {
    int l = ranking.labels.at(v);
    if (l > ranking.labels.at(top)) {
      top = v;
      count = 1;
    } else if (l == ranking.labels.at(top)) {
      ++count;
    }
  }
  if (count != 1) {
    throw std::logic_error("maximum ranking label is not unique in a connected piece");
  }
  std::vector<int> kids;
  for (auto& comp : split_components(inst, set, top)) kids.push_back(ranking_dt_build(inst, ranking, comp, out));
  out.children[top] = std::move(kids);
  return top;
}

}  // namespace detail

/// Decision tree that always queries the unique highest-ranked vertex of the
/// current candidate subtree. Optimal when all costs are equal.
inline DecisionTree ranking_based_dt(const TreeInstance& inst, const VertexSet& set) {
  Ranking ranking = vertex_ranking(inst, set);
  DecisionTree out;
  out.root = detail::ranking_dt_build(inst, ranking, set, out);
  return out;
}

inline DecisionTree ranking_based_dt(const TreeInstance& inst) { return ranking_based_dt(inst, inst.vertices()); }

}  // namespace treesearch
