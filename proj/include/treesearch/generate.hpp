#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "treesearch/error.hpp"
#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

enum class Shape { RandomTree, Path, Star, Spider };

enum class CostKind { Uniform, Random, UpMonotonic, PlantedK, Alternating };

struct CostModel {
  CostKind kind = CostKind::Uniform;
  int k = 1;           // planted-k
  Rational eps{1};     // alternating
};

inline std::string to_string(Shape s) {
  switch (s) {
    case Shape::RandomTree: return "random-tree";
    case Shape::Path: return "path";
    case Shape::Star: return "star";
    case Shape::Spider: return "spider";
  }
  return "?";
}

inline std::string to_string(const CostModel& m) {
  switch (m.kind) {
    case CostKind::Uniform: return "uniform";
    case CostKind::Random: return "random";
    case CostKind::UpMonotonic: return "up-monotonic";
    case CostKind::PlantedK: return "planted-k:" + std::to_string(m.k);
    case CostKind::Alternating: return "alternating:" + m.eps.str();
  }
  return "?";
}

inline Shape parse_shape(std::string_view text) {
  if (text == "random-tree") return Shape::RandomTree;
  if (text == "path") return Shape::Path;
  if (text == "star") return Shape::Star;
  if (text == "spider") return Shape::Spider;
  throw Error(Errc::InvalidParameters, "unknown shape '" + std::string(text) + "'");
}

/// "uniform", "random", "up-monotonic", "planted-k:<k>", "alternating:<eps>".
inline CostModel parse_cost_model(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  CostModel m;
  try {
    if (name == "uniform") {
      m.kind = CostKind::Uniform;
    } else if (name == "random") {
      m.kind = CostKind::Random;
    } else if (name == "up-monotonic") {
      m.kind = CostKind::UpMonotonic;
    } else if (name == "planted-k") {
      m.kind = CostKind::PlantedK;
      m.k = arg.empty() ? 2 : std::stoi(std::string(arg));
    } else if (name == "alternating") {
      m.kind = CostKind::Alternating;
      m.eps = arg.empty() ? Rational(1) : Rational::parse(arg);
    } else {
      throw Error(Errc::InvalidParameters, "unknown cost model '" + std::string(text) + "'");
    }
  } catch (const std::invalid_argument&) {
    throw Error(Errc::InvalidParameters, "bad cost model argument in '" + std::string(text) + "'");
  }
  return m;
}

/// Platform-independent draws on top of mt19937_64 (whose output sequence is
/// fixed by the standard, unlike the std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Uniform labeled tree on n vertices via a random Pruefer sequence.
inline std::vector<std::pair<int, int>> random_tree_edges(int n, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  if (n <= 1) return edges;
  if (n == 2) return {{1, 2}};
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  for (auto& x : code) x = rng.range(1, n);
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
  for (int x : code) ++degree[static_cast<std::size_t>(x)];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 1; v <= n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  for (int x : code) {
    int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, x);
    if (--degree[static_cast<std::size_t>(x)] == 1) leaves.push(x);
  }
  int u = leaves.top();
  leaves.pop();
  edges.emplace_back(u, leaves.top());
  return edges;
}

inline std::vector<std::pair<int, int>> shape_edges(Shape shape, int n, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  switch (shape) {
    case Shape::RandomTree:
      return random_tree_edges(n, rng);
    case Shape::Path:
      for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
      return edges;
    case Shape::Star:
      for (int v = 2; v <= n; ++v) edges.emplace_back(1, v);
      return edges;
    case Shape::Spider: {
      // Center 1; legs numbered consecutively, each at least one vertex long.
      if (n == 1) return edges;
      int root = 1;
      while ((root + 1) * (root + 1) <= n) ++root;
      int legs = std::min(n - 1, 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(root))));
      std::vector<int> length(static_cast<std::size_t>(legs), 1);
      for (int extra = n - 1 - legs; extra > 0; --extra) ++length[rng.below(static_cast<std::size_t>(legs))];
      int next = 2;
      for (int len : length) {
        int prev = 1;
        for (int i = 0; i < len; ++i, ++next) {
          edges.emplace_back(prev, next);
          prev = next;
        }
      }
      return edges;
    }
  }
  return edges;
}

namespace detail {

inline std::vector<std::vector<int>> adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

// BFS distance from the given sources (multi-source); parent order is deterministic.
inline std::vector<int> bfs_distance(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> queue;
  for (int s : sources) {
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Costs are produced as positive rationals and then normalized so the
/// maximum is exactly 1.
inline std::vector<Rational> model_costs(const CostModel& model, int n, const std::vector<std::pair<int, int>>& edges,
                                         Rng& rng) {
  auto adj = detail::adjacency(n, edges);
  std::vector<Rational> costs(static_cast<std::size_t>(n), Rational(1));
  auto at = [&](int v) -> Rational& { return costs[static_cast<std::size_t>(v - 1)]; };

  switch (model.kind) {
    case CostKind::Uniform:
      break;
    case CostKind::Random:
      for (auto& c : costs) c = Rational(rng.range(1, 16));
      break;
    case CostKind::UpMonotonic: {
      // Each vertex costs at most its BFS parent; the root is the apex.
      int root = rng.range(1, n);
      std::vector<int> level_cost(static_cast<std::size_t>(n) + 1, 0);
      level_cost[static_cast<std::size_t>(root)] = 64;
      std::queue<int> queue;
      queue.push(root);
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        at(u) = Rational(level_cost[static_cast<std::size_t>(u)]);
        for (int w : adj[static_cast<std::size_t>(u)]) {
          if (level_cost[static_cast<std::size_t>(w)] == 0) {
            level_cost[static_cast<std::size_t>(w)] = rng.range(1, level_cost[static_cast<std::size_t>(u)]);
            queue.push(w);
          }
        }
      }
      break;
    }
    case CostKind::PlantedK: {
      if (model.k < 1 || model.k > n) {
        throw Error(Errc::InvalidParameters, "planted-k needs 1 <= k <= n, got k=" + std::to_string(model.k));
      }
      // k pairwise non-adjacent centers cost 1; everything else decays with
      // the distance to the nearest center, so every heavy piece holds a center.
      std::vector<int> centers;
      for (int attempt = 0; attempt < 64 && static_cast<int>(centers.size()) < model.k; ++attempt) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        rng.shuffle(order);
        std::vector<char> blocked(static_cast<std::size_t>(n) + 1, 0);
        centers.clear();
        for (int v : order) {
          if (static_cast<int>(centers.size()) == model.k) break;
          if (blocked[static_cast<std::size_t>(v)]) continue;
          centers.push_back(v);
          blocked[static_cast<std::size_t>(v)] = 1;
          for (int w : adj[static_cast<std::size_t>(v)]) blocked[static_cast<std::size_t>(w)] = 1;
        }
      }
      if (static_cast<int>(centers.size()) < model.k) {
        // Leaves-first greedy gives a maximum independent set of a tree.
        auto depth = detail::bfs_distance(adj, {1});
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
          return depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)];
        });
        std::vector<char> blocked(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> independent;
        for (int v : order) {
          if (blocked[static_cast<std::size_t>(v)]) continue;
          independent.push_back(v);
          for (int w : adj[static_cast<std::size_t>(v)]) blocked[static_cast<std::size_t>(w)] = 1;
        }
        if (static_cast<int>(independent.size()) < model.k) {
          throw Error(Errc::InvalidParameters, "tree has no " + std::to_string(model.k) + " non-adjacent vertices");
        }
        rng.shuffle(independent);
        centers.assign(independent.begin(), independent.begin() + model.k);
      }
      auto dist = detail::bfs_distance(adj, centers);
      for (int v = 1; v <= n; ++v) {
        int d = std::min(dist[static_cast<std::size_t>(v)], 6);
        at(v) = Rational(1, BigInt(1) << d);
      }
      break;
    }
    case CostKind::Alternating: {
      if (!model.eps.is_positive()) throw Error(Errc::InvalidParameters, "alternating needs eps > 0");
      auto depth = detail::bfs_distance(adj, {1});
      for (int v = 1; v <= n; ++v) {
        at(v) = depth[static_cast<std::size_t>(v)] % 2 == 0 ? Rational(1) : Rational(1) + model.eps;
      }
      break;
    }
  }
  Rational top = *std::max_element(costs.begin(), costs.end());
  for (auto& c : costs) c /= top;
  return costs;
}

/// Deterministic for fixed arguments.
inline TreeInstance generate_instance(Shape shape, const CostModel& model, int n, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::InvalidParameters, "n must be at least 1");
  Rng rng(seed);
  RawInstance raw;
  raw.n = n;
  raw.edges = shape_edges(shape, n, rng);
  raw.costs = model_costs(model, n, raw.edges, rng);
  return validate_instance(std::move(raw));
}

/// Rounds every cost up to the nearest positive multiple of `step`.
inline TreeInstance round_costs_up(const TreeInstance& inst, const Rational& step) {
  if (!step.is_positive()) throw Error(Errc::InvalidParameters, "rounding step must be positive");
  RawInstance raw = inst.raw();
  for (auto& c : raw.costs) {
    Rational q = c / step;
    BigInt whole = q.numerator() / q.denominator();
    if (Rational(whole, 1) != q) whole += 1;
    c = Rational(whole, 1) * step;
  }
  return validate_instance(std::move(raw));
}

}  // namespace treesearch
