#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "treesearch/error.hpp"
#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

/// A search strategy: a rooted tree whose nodes are the queried vertices.
/// `children` holds an entry for every vertex of the tree (leaves map to an
/// empty list), so its key set is V(D).
struct DecisionTree {
  int root = 0;
  std::map<int, std::vector<int>> children;

  static DecisionTree single(int v) { return DecisionTree{v, {{v, {}}}}; }

  std::size_t size() const { return children.size(); }
  bool contains(int v) const { return children.contains(v); }

  const std::vector<int>& children_of(int v) const {
    static const std::vector<int> none;
    auto it = children.find(v);
    return it == children.end() ? none : it->second;
  }

  VertexSet vertices() const {
    VertexSet out;
    out.reserve(children.size());
    for (const auto& [v, _] : children) out.push_back(v);
    return out;
  }

  /// parent[v] for every non-root vertex reachable from the root.
  std::unordered_map<int, int> parents() const {
    std::unordered_map<int, int> parent;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int c : children_of(q)) {
        if (parent.contains(c) || c == root) continue;
        parent.emplace(c, q);
        stack.push_back(c);
      }
    }
    return parent;
  }

  /// Number of queries on the longest root-to-leaf path.
  int depth() const {
    int best = 0;
    std::vector<std::pair<int, int>> stack{{root, 1}};
    while (!stack.empty()) {
      auto [q, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      for (int c : children_of(q)) stack.emplace_back(c, d + 1);
    }
    return best;
  }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

/// Root-to-target path of a decision tree together with its total cost.
struct QuerySequence {
  std::vector<int> queries;
  Rational total_cost;
};

namespace detail {

inline std::string vname(int v) { return "v" + std::to_string(v); }

// Vertex set of the decision subtree below every node; assumes no vertex repeats.
inline std::unordered_map<int, VertexSet> subtree_sets(const DecisionTree& d) {
  std::unordered_map<int, VertexSet> sets;
  std::vector<std::pair<int, bool>> stack{{d.root, false}};
  while (!stack.empty()) {
    auto [q, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.emplace_back(q, true);
      for (int c : d.children_of(q)) stack.emplace_back(c, false);
      continue;
    }
    VertexSet s{q};
    for (int c : d.children_of(q)) {
      const auto& cs = sets.at(c);
      s.insert(s.end(), cs.begin(), cs.end());
    }
    std::sort(s.begin(), s.end());
    sets[q] = std::move(s);
  }
  return sets;
}

// Every vertex of `scope` reached exactly once from the root, nothing else.
inline void check_vertex_cover(const TreeInstance& inst, const DecisionTree& d, const VertexSet& scope) {
  if (!inst.has_vertex(d.root)) throw Error(Errc::UnknownVertex, "root " + vname(d.root) + " not in instance", d.root);
  std::unordered_map<int, int> seen;
  std::vector<int> stack{d.root};
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    if (!inst.has_vertex(q)) throw Error(Errc::UnknownVertex, vname(q) + " not in instance", q);
    if (++seen[q] > 1) throw Error(Errc::DuplicateVertex, vname(q) + " appears more than once", q);
    for (int c : d.children_of(q)) stack.push_back(c);
  }
  for (int v : scope) {
    if (!seen.contains(v)) throw Error(Errc::MissingVertex, vname(v) + " is never queried", v);
  }
  for (const auto& [v, _] : d.children) {
    if (!seen.contains(v)) throw Error(Errc::MissingVertex, vname(v) + " is not reachable from the root", v);
  }
  if (seen.size() != scope.size()) {
    for (const auto& [v, _] : seen) {
      if (!set_contains(scope, v)) throw Error(Errc::QueryOutsideCandidate, vname(v) + " is outside the searched subtree", v);
    }
  }
}

}  // namespace detail

/// Checks that `d` is a strict decision tree for the subtree `scope` of `inst`
/// (the whole tree by default): each vertex appears once, every query lies
/// in its candidate set, and the children of each query correspond one to one
/// with the components of the candidate set minus the query.
inline const DecisionTree& validate_decision_tree(const TreeInstance& inst, const DecisionTree& d,
                                                  const VertexSet& scope) {
  detail::check_vertex_cover(inst, d, scope);
  auto sub = detail::subtree_sets(d);

  std::vector<std::pair<int, VertexSet>> stack{{d.root, scope}};
  while (!stack.empty()) {
    auto [q, candidate] = std::move(stack.back());
    stack.pop_back();
    if (!set_contains(candidate, q)) {
      throw Error(Errc::QueryOutsideCandidate, detail::vname(q) + " queried outside its candidate set", q);
    }
    auto comps = split_components(inst, candidate, q);
    const auto& kids = d.children_of(q);
    std::vector<char> used(comps.size(), 0);
    for (int c : kids) {
      auto it = std::find_if(comps.begin(), comps.end(), [&](const VertexSet& comp) { return set_contains(comp, c); });
      if (it == comps.end()) {
        throw Error(Errc::QueryOutsideCandidate, detail::vname(c) + " queried outside its candidate set", c);
      }
      auto idx = static_cast<std::size_t>(it - comps.begin());
      if (used[idx] || sub.at(c) != *it) {
        throw Error(Errc::ComponentMismatch, "children of " + detail::vname(q) + " do not match its response components", q);
      }
      used[idx] = 1;
      stack.emplace_back(c, *it);
    }
    if (kids.size() != comps.size()) {
      throw Error(Errc::ComponentMismatch, "a response of " + detail::vname(q) + " has no continuation", q);
    }
  }
  return d;
}

inline const DecisionTree& validate_decision_tree(const TreeInstance& inst, const DecisionTree& d) {
  return validate_decision_tree(inst, d, inst.vertices());
}

/// Sum of costs along the root-to-leaf path with the largest total. Does not validate.
inline Rational worst_path_cost(const TreeInstance& inst, const DecisionTree& d) {
  Rational best;
  std::vector<std::pair<int, Rational>> stack{{d.root, inst.cost(d.root)}};
  while (!stack.empty()) {
    auto [q, acc] = std::move(stack.back());
    stack.pop_back();
    const auto& kids = d.children_of(q);
    if (kids.empty() && acc > best) best = acc;
    for (int c : kids) stack.emplace_back(c, acc + inst.cost(c));
  }
  return best;
}

/// Worst-case cost over all targets; validates first.
inline Rational evaluate_cost(const TreeInstance& inst, const DecisionTree& d, const VertexSet& scope) {
  validate_decision_tree(inst, d, scope);
  return worst_path_cost(inst, d);
}

inline Rational evaluate_cost(const TreeInstance& inst, const DecisionTree& d) {
  return evaluate_cost(inst, d, inst.vertices());
}

/// Queries issued when the hidden target is `x`, i.e. the root-to-x path in `d`.
inline QuerySequence query_sequence(const TreeInstance& inst, const DecisionTree& d, int x) {
  if (!inst.has_vertex(x) || !d.contains(x)) {
    throw Error(Errc::UnknownVertex, "target " + detail::vname(x) + " is not a vertex of the tree", x);
  }
  auto parent = d.parents();
  QuerySequence seq;
  for (int v = x;; v = parent.at(v)) {
    seq.queries.push_back(v);
    seq.total_cost += inst.cost(v);
    if (v == d.root) break;
  }
  std::reverse(seq.queries.begin(), seq.queries.end());
  return seq;
}

/// Orders every child list by the smallest vertex id in the child's subtree.
inline DecisionTree canonicalize(DecisionTree d) {
  for (const auto& [v, kids] : DecisionTree(d).children) {
    for (int c : kids) d.children.try_emplace(c);
  }
  auto sub = detail::subtree_sets(d);
  for (auto& [v, kids] : d.children) {
    std::sort(kids.begin(), kids.end(), [&](int a, int b) { return sub.at(a).front() < sub.at(b).front(); });
  }
  return d;
}

}  // namespace treesearch
