#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/error.hpp"
#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

struct SolveLimits {
  std::size_t max_states = 5'000'000;
};

struct ExactSolution {
  Rational cost;
  DecisionTree tree;
  std::size_t states = 0;  // memo entries used
};

namespace detail {

// Candidate-set keys: one 64-bit word for up to 64 vertices, a word vector beyond.
struct WideKey {
  std::vector<std::uint64_t> words;
  bool operator==(const WideKey&) const = default;
};

struct WideKeyHash {
  std::size_t operator()(const WideKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : k.words) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }
};

template <class Key>
struct KeyOps;

template <>
struct KeyOps<std::uint64_t> {
  using Hash = std::hash<std::uint64_t>;
  static std::uint64_t make(std::size_t) { return 0; }
  static void set(std::uint64_t& k, std::size_t i) { k |= std::uint64_t{1} << i; }
  static void reset(std::uint64_t& k, std::size_t i) { k &= ~(std::uint64_t{1} << i); }
  static bool test(const std::uint64_t& k, std::size_t i) { return (k >> i) & 1U; }
};

template <>
struct KeyOps<WideKey> {
  using Hash = WideKeyHash;
  static WideKey make(std::size_t m) { return WideKey{std::vector<std::uint64_t>((m + 63) / 64, 0)}; }
  static void set(WideKey& k, std::size_t i) { k.words[i / 64] |= std::uint64_t{1} << (i % 64); }
  static void reset(WideKey& k, std::size_t i) { k.words[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  static bool test(const WideKey& k, std::size_t i) { return (k.words[i / 64] >> (i % 64)) & 1U; }
};

// Memoized search over candidate sets:
//   OPT(S) = min_{v in S} c(v) + max_{C in components(S - v)} OPT(C),
// with OPT of a single vertex equal to its cost. Local indices follow the
// ascending order of the original ids, so "first minimizer" is the smallest id.
template <class Key, class Cost>
class ExactSolver {
  using Ops = KeyOps<Key>;

 public:
  ExactSolver(const TreeInstance& inst, const VertexSet& scope, std::vector<Cost> costs, SolveLimits limits)
      : inst_(inst), scope_(scope), costs_(std::move(costs)), limits_(limits), adj_(scope.size()) {
    VertexMask in(inst.size(), scope);
    for (std::size_t i = 0; i < scope.size(); ++i) {
      for (int w : inst.neighbors(scope[i])) {
        if (in.contains(w)) adj_[i].push_back(local(w));
      }
    }
    build_twin_groups();
  }

  Cost solve_all() {
    Key all = Ops::make(scope_.size());
    for (std::size_t i = 0; i < scope_.size(); ++i) Ops::set(all, i);
    return solve(all);
  }

  DecisionTree witness() {
    Key all = Ops::make(scope_.size());
    for (std::size_t i = 0; i < scope_.size(); ++i) Ops::set(all, i);
    DecisionTree out;
    out.root = scope_[reconstruct(all, out)];
    return out;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  std::size_t local(int v) const {
    return static_cast<std::size_t>(std::lower_bound(scope_.begin(), scope_.end(), v) - scope_.begin());
  }

  // Leaves of the scope tree that hang off the same vertex with equal cost
  // are exchanged by a cost-preserving automorphism, so only the number of
  // such twins present matters. The key keeps the lowest-indexed ones.
  void build_twin_groups() {
    std::map<std::pair<std::size_t, Rational>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      if (adj_[i].size() == 1) groups[{adj_[i][0], inst_.cost(scope_[i])}].push_back(i);
    }
    for (auto& [_, members] : groups) {
      if (members.size() > 1) twin_groups_.push_back(std::move(members));
    }
  }

  Key canonical(Key k) const {
    for (const auto& group : twin_groups_) {
      std::size_t present = 0;
      for (auto i : group) {
        if (Ops::test(k, i)) {
          ++present;
          Ops::reset(k, i);
        }
      }
      for (std::size_t j = 0; j < present; ++j) Ops::set(k, group[j]);
    }
    return k;
  }

  std::vector<std::size_t> members(const Key& s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
      if (Ops::test(s, i)) out.push_back(i);
    }
    return out;
  }

  std::vector<Key> components_without(const Key& s, const std::vector<std::size_t>& mem, std::size_t v) const {
    Key left = s;
    Ops::reset(left, v);
    std::vector<Key> out;
    std::vector<std::size_t> stack;
    for (std::size_t start : mem) {
      if (!Ops::test(left, start)) continue;
      Key comp = Ops::make(scope_.size());
      Ops::reset(left, start);
      Ops::set(comp, start);
      stack.push_back(start);
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t w : adj_[u]) {
          if (Ops::test(left, w)) {
            Ops::reset(left, w);
            Ops::set(comp, w);
            stack.push_back(w);
          }
        }
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

  Cost solve(const Key& s) {
    Key key = canonical(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto mem = members(key);
    Cost best{};
    bool have = false;
    if (mem.size() == 1) {
      best = costs_[mem[0]];
      have = true;
    } else {
      for (std::size_t v : mem) {
        const Cost& cv = costs_[v];
        if (have && !(cv < best)) continue;
        Cost worst{};
        bool pruned = false;
        for (const auto& comp : components_without(key, mem, v)) {
          Cost sub = solve(comp);
          if (sub > worst) worst = sub;
          if (have && !(cv + worst < best)) {
            pruned = true;
            break;
          }
        }
        if (pruned) continue;
        Cost total = cv + worst;
        if (!have || total < best) {
          best = total;
          have = true;
        }
      }
    }
    if (memo_.size() >= limits_.max_states) {
      throw Error(Errc::StateLimitExceeded,
                  "exact solver exceeded " + std::to_string(limits_.max_states) + " memo states");
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  // Picks the smallest-id optimal root of `s` and recurses into the components.
  std::size_t reconstruct(const Key& s, DecisionTree& out) {
    Cost target = solve(s);
    auto mem = members(s);
    for (std::size_t v : mem) {
      auto comps = components_without(s, mem, v);
      Cost worst{};
      for (const auto& comp : comps) {
        Cost sub = solve(comp);
        if (sub > worst) worst = sub;
      }
      if (costs_[v] + worst == target) {
        std::vector<int> kids;
        for (const auto& comp : comps) kids.push_back(scope_[reconstruct(comp, out)]);
        out.children[scope_[v]] = std::move(kids);
        return v;
      }
    }
    throw std::logic_error("exact solver could not reconstruct an optimal root");
  }

  const TreeInstance& inst_;
  const VertexSet& scope_;
  std::vector<Cost> costs_;
  SolveLimits limits_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<std::size_t>> twin_groups_;
  std::unordered_map<Key, Cost, typename Ops::Hash> memo_;
};

template <class Key>
ExactSolution solve_with_key(const TreeInstance& inst, const VertexSet& scope, SolveLimits limits) {
  // Integer fast path: scale by the lcm of denominators when every possible
  // path sum fits comfortably in 63 bits.
  BigInt lcm = 1;
  for (int v : scope) {
    BigInt den = inst.cost(v).denominator();
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  BigInt total = 0;
  std::vector<BigInt> scaled;
  for (int v : scope) {
    const Rational& c = inst.cost(v);
    scaled.push_back(c.numerator() * (lcm / c.denominator()));
    total += scaled.back();
  }
  ExactSolution out;
  if (total < (BigInt(1) << 61)) {
    std::vector<std::int64_t> costs;
    for (const auto& s : scaled) costs.push_back(s.template convert_to<std::int64_t>());
    ExactSolver<Key, std::int64_t> solver(inst, scope, std::move(costs), limits);
    std::int64_t value = solver.solve_all();
    out.tree = solver.witness();
    out.cost = Rational(BigInt(value), lcm);
    out.states = solver.states();
  } else {
    std::vector<Rational> costs;
    for (int v : scope) costs.push_back(inst.cost(v));
    ExactSolver<Key, Rational> solver(inst, scope, std::move(costs), limits);
    out.cost = solver.solve_all();
    out.tree = solver.witness();
    out.states = solver.states();
  }
  return out;
}

}  // namespace detail

/// Optimal worst-case decision tree for the connected subtree `scope`.
/// Throws StateLimitExceeded when the memo would exceed `limits.max_states`.
inline ExactSolution opt_exact(const TreeInstance& inst, const VertexSet& scope, SolveLimits limits = {}) {
  require_connected(inst, scope);
  if (limits.max_states < 1) throw Error(Errc::InvalidParameters, "max_states must be at least 1");
  if (scope.size() <= 64) return detail::solve_with_key<std::uint64_t>(inst, scope, limits);
  return detail::solve_with_key<detail::WideKey>(inst, scope, limits);
}

inline ExactSolution opt_exact(const TreeInstance& inst, SolveLimits limits = {}) {
  return opt_exact(inst, inst.vertices(), limits);
}

}  // namespace treesearch
