#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "treesearch/decision_tree.hpp"
#include "treesearch/error.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/modularity.hpp"
#include "treesearch/ranking.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

// ---------------------------------------------------------------------------
// Cost levels
// ---------------------------------------------------------------------------

/// Half-open cost interval (lower, upper]. Endpoints are binary64 values and
/// therefore exact dyadic rationals.
struct CostLevel {
  double lower = 0.0;
  double upper = 0.0;

  Rational lower_exact() const { return Rational::from_double(lower); }
  Rational upper_exact() const { return Rational::from_double(upper); }
};

/// Doubling schedule (0, b0], (b0, 2 b0], ..., (., 1] with b0 the largest
/// double not exceeding 1 / log2 n. Index 0 is the cheapest level.
struct CostLevelSchedule {
  int n = 0;
  std::vector<CostLevel> levels;

  std::size_t size() const { return levels.size(); }
};

/// Largest binary64 value b with b <= 1 / log2(n), checked against a
/// 100-digit evaluation of log2(n).
inline double dyadic_inverse_log2_floor(int n) {
  using Wide = boost::multiprecision::cpp_bin_float_100;
  Wide exact = Wide(1) / (boost::multiprecision::log(Wide(n)) / boost::multiprecision::log(Wide(2)));
  double b = 1.0 / std::log2(static_cast<double>(n));
  while (Wide(b) > exact) b = std::nextafter(b, 0.0);
  while (true) {
    double up = std::nextafter(b, 2.0);
    if (Wide(up) > exact) break;
    b = up;
  }
  return b;
}

inline CostLevelSchedule cost_levels(int n) {
  if (n < 2) throw Error(Errc::InvalidSize, "cost levels need n >= 2, got " + std::to_string(n));
  CostLevelSchedule schedule;
  schedule.n = n;
  double upper = std::min(dyadic_inverse_log2_floor(n), 1.0);
  schedule.levels.push_back({0.0, upper});
  while (upper < 1.0) {
    double next = std::min(2.0 * upper, 1.0);
    schedule.levels.push_back({upper, next});
    upper = next;
  }
  return schedule;
}

// ---------------------------------------------------------------------------
// Separator sets and the auxiliary tree
// ---------------------------------------------------------------------------

struct SeparatorSets {
  VertexSet x;  // one representative per heavy module
  VertexSet y;  // x plus branching vertices of the spanning subtree of x
  VertexSet z;  // y plus the lightest vertex strictly between consecutive y vertices
  std::vector<VertexSet> modules;
};

/// Builds X, Y and Z for the connected set `sub` with heavy threshold `a`
/// (vertices costing more than `a` are heavy). Representatives are the most
/// expensive vertex of each module; all ties go to the smallest id.
inline SeparatorSets separator_sets(const TreeInstance& inst, const VertexSet& sub, const Rational& a) {
  require_connected(inst, sub);
  SeparatorSets out;
  out.modules = heavy_modules(inst, sub, a).modules;
  if (out.modules.empty()) throw Error(Errc::NoHeavyVertex, "no vertex costs more than " + a.str());

  for (const auto& module : out.modules) {
    int rep = module.front();
    for (int v : module) {
      if (inst.cost(v) > inst.cost(rep)) rep = v;
    }
    out.x.push_back(rep);
  }
  out.x = make_vertex_set(out.x);

  // Spanning subtree of X: root at an X vertex; v belongs iff its rooted subtree holds an X vertex.
  VertexMask in(inst.size(), sub);
  VertexMask in_x(inst.size(), out.x);
  std::map<int, int> parent{{out.x.front(), 0}};
  std::vector<int> order{out.x.front()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (int w : inst.neighbors(u)) {
      if (w != parent[u] && in.contains(w)) {
        parent[w] = u;
        order.push_back(w);
      }
    }
  }
  std::map<int, int> x_below;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    x_below[*it] += in_x.contains(*it) ? 1 : 0;
    if (parent[*it] != 0) x_below[parent[*it]] += x_below[*it];
  }
  VertexSet span;
  for (int v : order) {
    if (x_below[v] > 0) span.push_back(v);
  }
  span = make_vertex_set(span);
  VertexMask in_span(inst.size(), span);

  out.y = out.x;
  for (int v : span) {
    int degree = 0;
    for (int w : inst.neighbors(v)) degree += in_span.contains(w) ? 1 : 0;
    if (degree >= 3 && !in_x.contains(v)) out.y.push_back(v);
  }
  out.y = make_vertex_set(out.y);

  // Removing Y from the span leaves the open paths between consecutive Y vertices.
  VertexMask in_y(inst.size(), out.y);
  VertexSet interior;
  for (int v : span) {
    if (!in_y.contains(v)) interior.push_back(v);
  }
  out.z = out.y;
  for (const auto& path : induced_components(inst, interior)) {
    int lightest = path.front();
    for (int v : path) {
      if (inst.cost(v) < inst.cost(lightest)) lightest = v;
    }
    out.z.push_back(lightest);
  }
  out.z = make_vertex_set(out.z);
  return out;
}

inline SeparatorSets separator_sets(const TreeInstance& inst, const VertexSet& sub, double a) {
  return separator_sets(inst, sub, Rational::from_double(a));
}

/// Contraction of `sub` onto Z: u and v are adjacent iff the path between
/// them carries no other Z vertex. `instance` is the same tree renumbered
/// 1..|Z| (ascending original id) with the original costs; `back_map[i]` is
/// the original id of local vertex i + 1.
struct AuxiliaryTree {
  VertexSet vertices;
  std::vector<std::pair<int, int>> edges;  // original ids, smaller first, sorted
  std::vector<int> back_map;
  TreeInstance instance;

  int to_local(int original) const {
    return static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(), original) - vertices.begin()) + 1;
  }
  int to_original(int local) const { return back_map.at(static_cast<std::size_t>(local - 1)); }

  DecisionTree map_back(const DecisionTree& local_tree) const {
    DecisionTree out;
    out.root = to_original(local_tree.root);
    for (const auto& [v, kids] : local_tree.children) {
      auto& mapped = out.children[to_original(v)];
      for (int c : kids) mapped.push_back(to_original(c));
    }
    return out;
  }
};

inline AuxiliaryTree auxiliary_tree(const TreeInstance& inst, const VertexSet& sub, const VertexSet& z) {
  if (z.empty()) throw Error(Errc::InvalidParameters, "auxiliary tree needs a nonempty Z");
  require_connected(inst, sub);
  VertexMask in(inst.size(), sub);
  VertexMask in_z(inst.size(), z);
  for (int v : z) {
    if (!in.contains(v)) throw Error(Errc::VertexNotInCandidate, "Z vertex outside the subtree", v);
  }

  AuxiliaryTree aux;
  aux.vertices = z;
  aux.back_map = z;
  // From each Z vertex, walk through non-Z vertices; the first Z vertices met are its neighbors.
  for (int source : z) {
    std::vector<std::pair<int, int>> stack{{source, 0}};
    while (!stack.empty()) {
      auto [u, from] = stack.back();
      stack.pop_back();
      for (int w : inst.neighbors(u)) {
        if (w == from || !in.contains(w)) continue;
        if (in_z.contains(w)) {
          if (source < w) aux.edges.emplace_back(source, w);
        } else {
          stack.emplace_back(w, u);
        }
      }
    }
  }
  std::sort(aux.edges.begin(), aux.edges.end());

  RawInstance raw;
  raw.n = static_cast<int>(z.size());
  for (int v : z) raw.costs.push_back(inst.cost(v));
  for (auto [u, v] : aux.edges) raw.edges.emplace_back(aux.to_local(u), aux.to_local(v));
  aux.instance = validate_instance(std::move(raw));  // NotATree when Z misses a branching vertex
  return aux;
}

inline AuxiliaryTree auxiliary_tree(const TreeInstance& inst, const VertexSet& z) {
  return auxiliary_tree(inst, inst.vertices(), z);
}

// ---------------------------------------------------------------------------
// Partial decision trees and grafting
// ---------------------------------------------------------------------------

/// A decision tree under construction for the subtree `scope`: a valid prefix
/// of some strategy that grows by attaching subtrees below existing queries.
class PartialDecisionTree {
 public:
  PartialDecisionTree(VertexSet scope, const DecisionTree& initial) : scope_(std::move(scope)) {
    tree_.root = initial.root;
    depth_[initial.root] = 1;
    graft(initial.root, initial);
  }

  const VertexSet& scope() const { return scope_; }
  const DecisionTree& tree() const { return tree_; }
  bool queried(int v) const { return tree_.contains(v); }
  int depth(int v) const { return depth_.at(v); }
  int parent(int v) const { return parent_.at(v); }

  bool is_ancestor(int a, int b) const {
    while (depth_.at(b) > depth_.at(a)) b = parent_.at(b);
    return a == b;
  }

  /// Candidate set at the moment `q` is queried.
  VertexSet candidates(const TreeInstance& inst, int q) const {
    std::vector<int> path;
    for (int v = q; v != tree_.root; v = parent_.at(v)) path.push_back(v);
    std::reverse(path.begin(), path.end());
    VertexSet s = scope_;
    int at = tree_.root;
    for (int next : path) {
      for (auto& comp : split_components(inst, s, at)) {
        if (set_contains(comp, next)) {
          s = std::move(comp);
          break;
        }
      }
      at = next;
    }
    return s;
  }

  void attach(int below, const DecisionTree& sub) {
    tree_.children[below].push_back(sub.root);
    parent_[sub.root] = below;
    depth_[sub.root] = depth_.at(below) + 1;
    graft(sub.root, sub);
  }

 private:
  void graft(int start, const DecisionTree& sub) {
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      tree_.children.try_emplace(q);
      for (int c : sub.children_of(q)) {
        tree_.children[q].push_back(c);
        parent_[c] = q;
        depth_[c] = depth_.at(q) + 1;
        stack.push_back(c);
      }
    }
  }

  VertexSet scope_;
  DecisionTree tree_;
  std::map<int, int> parent_;
  std::map<int, int> depth_;
};

/// Hangs `sub_dt` (a strategy for vertices of `w`) below the deepest query
/// to a neighbor of `w`, on the response branch that contains `w`.
/// The queried neighbors must form a chain in `d`; a violation is reported
/// as NotAPath rather than silently worked around.
inline void attach_subtree(PartialDecisionTree& d, const TreeInstance& inst, const VertexSet& w,
                           const DecisionTree& sub_dt) {
  VertexMask in_w(inst.size(), w);
  for (int v : w) {
    if (d.queried(v)) throw Error(Errc::InvalidParameters, "vertex of W already queried", v);
  }
  for (const auto& [v, _] : sub_dt.children) {
    if (!in_w.contains(v)) throw Error(Errc::InvalidParameters, "subtree strategy queries outside W", v);
  }

  std::vector<int> hits;
  for (int v : w) {
    for (int u : inst.neighbors(v)) {
      if (!in_w.contains(u) && d.queried(u)) hits.push_back(u);
    }
  }
  hits = make_vertex_set(std::move(hits));
  if (hits.empty()) throw Error(Errc::NoNeighborQueried, "no neighbor of W has been queried");

  std::sort(hits.begin(), hits.end(), [&](int a, int b) { return d.depth(a) < d.depth(b); });
  for (std::size_t i = 1; i < hits.size(); ++i) {
    if (d.depth(hits[i]) == d.depth(hits[i - 1]) || !d.is_ancestor(hits[i - 1], hits[i])) {
      throw Error(Errc::NotAPath, "queried neighbors of W do not lie on one root-to-leaf path", hits[i]);
    }
  }
  int deepest = hits.back();

  VertexSet branch;
  for (auto& comp : split_components(inst, d.candidates(inst, deepest), deepest)) {
    if (set_contains(comp, w.front())) branch = std::move(comp);
  }
  for (int v : w) {
    if (!set_contains(branch, v)) {
      throw Error(Errc::ComponentMismatch, "W is not inside one response branch of the attach point", deepest);
    }
  }
  for (int c : d.tree().children_of(deepest)) {
    if (set_contains(branch, c)) {
      throw Error(Errc::BranchOccupied, "response branch below the attach point already has a query", deepest);
    }
  }
  d.attach(deepest, sub_dt);
}

/// Value-style overload over a whole-instance partial tree.
inline DecisionTree attach_subtree(const TreeInstance& inst, const DecisionTree& d, const VertexSet& w,
                                   const DecisionTree& sub_dt) {
  PartialDecisionTree partial(inst.vertices(), d);
  attach_subtree(partial, inst, w, sub_dt);
  return partial.tree();
}

// ---------------------------------------------------------------------------
// Recursive construction
// ---------------------------------------------------------------------------

/// What happened at one MAIN step of the recursion (a level with both
/// heavy and light vertices).
struct LevelRecord {
  int level = 0;
  std::size_t sub_size = 0;
  int k_sub = 0;                         // k-up-modularity of the processed subtree
  std::size_t heavy_module_count = 0;    // |X|
  std::size_t y_size = 0;
  std::size_t aux_size = 0;              // |Z| = |V(T_Z)|
  std::size_t max_modules_per_piece = 0; // over components of sub - Z
  Rational aux_cost;                     // cost of the exact strategy for T_Z
  VertexSet sub;
  VertexSet z;
};

struct ApproxStats {
  int depth_d = 0;           // levels descended from the top call to the deepest base case
  int level_count = 0;
  int base_cases = 0;
  int fast_forwards = 0;
  std::vector<LevelRecord> records;

  std::size_t max_aux_size() const {
    std::size_t best = 0;
    for (const auto& r : records) best = std::max(best, r.aux_size);
    return best;
  }
};

struct ApproxOptions {
  SolveLimits limits{};
  bool record_subsets = true;  // keep sub and Z per record (needed by auxiliary-cost checks)
};

struct ApproxResult {
  DecisionTree tree;
  ApproxStats stats;
  Rational scale;  // maximum original cost; the recursion runs on costs / scale
};

namespace detail {

class ApproxBuilder {
 public:
  ApproxBuilder(const TreeInstance& normalized, const CostLevelSchedule& schedule, const ApproxOptions& options,
                ApproxStats& stats)
      : inst_(normalized), schedule_(schedule), options_(options), stats_(stats) {}

  // Returns the strategy for `sub` and the number of levels descended below `level`.
  std::pair<DecisionTree, int> build(const VertexSet& sub, int level) {
    Rational a = schedule_.levels[static_cast<std::size_t>(level)].lower_exact();
    VertexSet heavy;
    for (int v : sub) {
      if (inst_.cost(v) > a) heavy.push_back(v);
    }

    if (level == 0 || heavy.size() == sub.size()) {
      ++stats_.base_cases;
      return {ranking_based_dt(inst_, sub), 0};
    }
    if (heavy.empty()) {
      ++stats_.fast_forwards;
      auto [tree, below] = build(sub, level - 1);
      return {std::move(tree), below + 1};
    }

    SeparatorSets seps = separator_sets(inst_, sub, a);
    AuxiliaryTree aux = auxiliary_tree(inst_, sub, seps.z);
    ExactSolution aux_solution = opt_exact(aux.instance, options_.limits);

    LevelRecord record;
    record.level = level;
    record.sub_size = sub.size();
    record.k_sub = k_up_modularity(inst_, sub).k;
    record.heavy_module_count = seps.x.size();
    record.y_size = seps.y.size();
    record.aux_size = aux.vertices.size();
    record.aux_cost = aux_solution.cost;
    if (options_.record_subsets) {
      record.sub = sub;
      record.z = seps.z;
    }

    PartialDecisionTree partial(sub, aux.map_back(aux_solution.tree));
    VertexMask in_z(inst_.size(), seps.z);
    VertexSet outside;
    for (int v : sub) {
      if (!in_z.contains(v)) outside.push_back(v);
    }

    int deepest = 0;
    for (const auto& piece : induced_components(inst_, outside)) {
      auto modules = heavy_modules(inst_, piece, a).modules;
      record.max_modules_per_piece = std::max(record.max_modules_per_piece, modules.size());
      if (modules.size() > 1) {
        throw std::logic_error("component of sub - Z holds more than one heavy module");
      }
      VertexSet light = piece;
      if (!modules.empty()) {
        const VertexSet& h = modules.front();
        attach_subtree(partial, inst_, piece, ranking_based_dt(inst_, h));
        VertexMask in_h(inst_.size(), h);
        light.clear();
        for (int v : piece) {
          if (!in_h.contains(v)) light.push_back(v);
        }
      }
      for (const auto& rest : induced_components(inst_, light)) {
        auto [tree, below] = build(rest, level - 1);
        deepest = std::max(deepest, below);
        attach_subtree(partial, inst_, rest, tree);
      }
    }
    stats_.records.push_back(std::move(record));
    return {partial.tree(), deepest + 1};
  }

 private:
  const TreeInstance& inst_;
  const CostLevelSchedule& schedule_;
  const ApproxOptions& options_;
  ApproxStats& stats_;
};

}  // namespace detail

/// Builds a decision tree whose worst-case cost is within (4d + 2) of the
/// optimum, d being the number of cost levels the recursion descends.
/// Costs are normalized internally; the tree is valid for the input instance.
inline ApproxResult create_decision_tree(const TreeInstance& inst, const ApproxOptions& options = {}) {
  ApproxResult result;
  auto [normalized, scale] = normalize(inst);
  result.scale = scale;
  if (inst.size() == 1) {
    result.tree = DecisionTree::single(1);
    result.stats.level_count = 0;
    result.stats.base_cases = 1;
    return result;
  }
  CostLevelSchedule schedule = cost_levels(inst.size());
  result.stats.level_count = static_cast<int>(schedule.size());
  detail::ApproxBuilder builder(normalized, schedule, options, result.stats);
  auto [tree, depth] = builder.build(normalized.vertices(), static_cast<int>(schedule.size()) - 1);
  result.tree = canonicalize(std::move(tree));
  result.stats.depth_d = depth;
  validate_decision_tree(inst, result.tree);
  return result;
}

}  // namespace treesearch
