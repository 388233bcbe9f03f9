#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "treesearch/treesearch.hpp"

namespace treesearch::testing {

// Tree and costs of the 11-vertex worked example.
inline const char* kFix1Json = R"({
  "n": 11,
  "edges": [[1,2],[1,3],[1,4],[2,5],[2,6],[4,7],[4,8],[7,9],[9,10],[10,11]],
  "costs": ["1/5","2/5","1/5","1/5","3/5","4/5","1","2/5","3/5","1/5","4/5"]
})";

inline TreeInstance fix1() { return parse_instance(kFix1Json); }

// The worked strategy for fix1: v4 first, then v5 / v8 / v9, and so on.
inline DecisionTree d_fix2() {
  DecisionTree d;
  d.root = 4;
  d.children = {{4, {5, 8, 9}}, {5, {1}}, {1, {2, 3}}, {2, {6}}, {9, {7, 11}}, {11, {10}},
                {3, {}},        {6, {}},  {7, {}},     {8, {}},  {10, {}}};
  return d;
}

inline TreeInstance make_instance(int n, std::vector<std::pair<int, int>> edges, std::vector<Rational> costs) {
  return validate_instance(RawInstance{n, std::move(edges), std::move(costs)});
}

inline TreeInstance uniform_path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return make_instance(n, edges, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

inline TreeInstance path_with_costs(std::vector<Rational> costs) {
  int n = static_cast<int>(costs.size());
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return make_instance(n, edges, std::move(costs));
}

inline TreeInstance star(int leaves, Rational center, Rational leaf) {
  std::vector<std::pair<int, int>> edges;
  std::vector<Rational> costs{center};
  for (int v = 2; v <= leaves + 1; ++v) {
    edges.emplace_back(1, v);
    costs.push_back(leaf);
  }
  return make_instance(leaves + 1, edges, costs);
}

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(BigInt(p), BigInt(d)); }

// ---------------------------------------------------------------------------
// Oracles. These only use the core module (split_components, evaluate_cost)
// and never the exact solver or the ranking code.
// ---------------------------------------------------------------------------

// Every strict decision tree for the candidate set `s`.
inline std::vector<DecisionTree> enumerate_trees(const TreeInstance& inst, const VertexSet& s) {
  std::vector<DecisionTree> out;
  for (int v : s) {
    auto comps = split_components(inst, s, v);
    std::vector<std::vector<DecisionTree>> options;
    for (const auto& c : comps) options.push_back(enumerate_trees(inst, c));
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      DecisionTree d = DecisionTree::single(v);
      for (std::size_t i = 0; i < options.size(); ++i) {
        const auto& sub = options[i][pick[i]];
        d.children[v].push_back(sub.root);
        for (const auto& [u, kids] : sub.children) d.children[u] = kids;
      }
      out.push_back(std::move(d));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return out;
}

// Minimum cost over all enumerated trees, each costed by evaluate_cost.
inline Rational enumerated_opt(const TreeInstance& inst) {
  auto trees = enumerate_trees(inst, inst.vertices());
  Rational best = evaluate_cost(inst, trees.front());
  for (const auto& d : trees) best = std::min(best, evaluate_cost(inst, d));
  return best;
}

// Plain exhaustive recursion over query choices, memoized on the sorted
// candidate list (no pruning, no twin merging, rational arithmetic only).
inline Rational brute_force_opt(const TreeInstance& inst, const VertexSet& s,
                                std::map<VertexSet, Rational>& memo) {
  if (auto it = memo.find(s); it != memo.end()) return it->second;
  Rational best;
  bool have = false;
  for (int v : s) {
    Rational worst;
    for (const auto& c : split_components(inst, s, v)) worst = std::max(worst, brute_force_opt(inst, c, memo));
    Rational total = inst.cost(v) + worst;
    if (!have || total < best) {
      best = total;
      have = true;
    }
  }
  memo.emplace(s, best);
  return best;
}

inline Rational brute_force_opt(const TreeInstance& inst, const VertexSet& s) {
  std::map<VertexSet, Rational> memo;
  return brute_force_opt(inst, s, memo);
}

inline Rational brute_force_opt(const TreeInstance& inst) { return brute_force_opt(inst, inst.vertices()); }

// Minimal number of labels of any valid ranking, by trying every labeling
// with labels 1..max_label (small trees only).
inline bool ranking_exists(const TreeInstance& inst, int max_label) {
  VertexSet all = inst.vertices();
  Ranking r;
  std::vector<int> labels(all.size(), 1);
  while (true) {
    r.labels.clear();
    for (std::size_t i = 0; i < all.size(); ++i) r.labels[all[i]] = labels[i];
    if (is_valid_ranking(inst, all, r)) return true;
    std::size_t i = 0;
    for (; i < labels.size(); ++i) {
      if (++labels[i] <= max_label) break;
      labels[i] = 1;
    }
    if (i == labels.size()) return false;
  }
}

// Random connected subset of `inst` grown from a random start vertex.
inline VertexSet random_connected_subset(const TreeInstance& inst, Rng& rng, int size) {
  VertexSet picked{rng.range(1, inst.size())};
  VertexMask in(inst.size(), picked);
  std::vector<int> frontier;
  for (int w : inst.neighbors(picked[0])) frontier.push_back(w);
  while (static_cast<int>(picked.size()) < size && !frontier.empty()) {
    std::size_t i = rng.below(frontier.size());
    int v = frontier[i];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
    if (in.contains(v)) continue;
    in.insert(v);
    picked.push_back(v);
    for (int w : inst.neighbors(v)) {
      if (!in.contains(w)) frontier.push_back(w);
    }
  }
  return make_vertex_set(picked);
}

inline int floor_log2(int n) {
  int r = 0;
  while ((2 << r) <= n) ++r;
  return r;
}

inline int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

// Smallest m with n <= 2^(2^m), i.e. the ceiling of log2 log2 n (n >= 2).
inline int ceil_log2_log2(int n) {
  int m = 0;
  while (ceil_log2(n) > (1 << m)) ++m;
  return m;
}

inline const std::vector<Shape>& all_shapes() {
  static const std::vector<Shape> shapes{Shape::RandomTree, Shape::Path, Shape::Star, Shape::Spider};
  return shapes;
}

inline const std::vector<CostModel>& all_cost_models() {
  static const std::vector<CostModel> models{
      parse_cost_model("uniform"),     parse_cost_model("random"),        parse_cost_model("up-monotonic"),
      parse_cost_model("planted-k:2"), parse_cost_model("planted-k:3"),   parse_cost_model("alternating:1/8")};
  return models;
}

// Instance number `i` of a mixed stream over every shape and cost model.
// Planted-k falls back to k = 1 when the tree has no room for k centers.
inline TreeInstance mixed_instance(std::uint64_t seed, int n_min, int n_max) {
  Rng rng(seed);
  int n = rng.range(n_min, n_max);
  Shape shape = all_shapes()[rng.below(all_shapes().size())];
  CostModel model = all_cost_models()[rng.below(all_cost_models().size())];
  try {
    return generate_instance(shape, model, n, seed);
  } catch (const Error&) {
    model.k = 1;
    return generate_instance(shape, model, n, seed);
  }
}

}  // namespace treesearch::testing
