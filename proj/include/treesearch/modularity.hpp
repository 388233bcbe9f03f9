#pragma once

#include <algorithm>
#include <vector>

#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

/// Heavy modules at threshold t: the maximal connected vertex sets whose
/// costs all exceed t. Modules are sorted and ordered by smallest id.
struct HeavyModuleDecomposition {
  Rational threshold;
  std::vector<VertexSet> modules;

  std::size_t count() const { return modules.size(); }
};

/// Heavy modules of the subtree induced by `scope` (connected or not).
inline HeavyModuleDecomposition heavy_modules(const TreeInstance& inst, const VertexSet& scope, const Rational& t) {
  VertexSet heavy;
  for (int v : scope) {
    if (inst.cost(v) > t) heavy.push_back(v);
  }
  return HeavyModuleDecomposition{t, induced_components(inst, heavy)};
}

inline HeavyModuleDecomposition heavy_modules(const TreeInstance& inst, const Rational& t) {
  return heavy_modules(inst, inst.vertices(), t);
}

/// Dyadic thresholds (binary64) compare exactly against rational costs.
inline HeavyModuleDecomposition heavy_modules(const TreeInstance& inst, double t) {
  return heavy_modules(inst, Rational::from_double(t));
}

struct Modularity {
  int k = 0;
  Rational witness;  // smallest threshold attaining k
};

/// k(T,c) over the subtree induced by `scope`. The module count only changes
/// at cost values, so thresholds 0 and every distinct cost cover all cases.
inline Modularity k_up_modularity(const TreeInstance& inst, const VertexSet& scope) {
  std::vector<Rational> thresholds{Rational{}};
  for (int v : scope) thresholds.push_back(inst.cost(v));
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  Modularity best;
  for (const auto& t : thresholds) {
    int count = static_cast<int>(heavy_modules(inst, scope, t).count());
    if (count > best.k) best = Modularity{count, t};
  }
  return best;
}

inline Modularity k_up_modularity(const TreeInstance& inst) { return k_up_modularity(inst, inst.vertices()); }

/// Costs never increase along any path leaving some maximum-cost vertex.
/// Every maximum-cost vertex is tried as the apex.
inline bool is_up_monotonic(const TreeInstance& inst) {
  Rational top = inst.max_cost();
  for (int z = 1; z <= inst.size(); ++z) {
    if (inst.cost(z) != top) continue;
    bool ok = true;
    std::vector<std::pair<int, int>> stack{{z, 0}};
    while (ok && !stack.empty()) {
      auto [u, from] = stack.back();
      stack.pop_back();
      for (int w : inst.neighbors(u)) {
        if (w == from) continue;
        if (inst.cost(w) > inst.cost(u)) {
          ok = false;
          break;
        }
        stack.emplace_back(w, u);
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace treesearch
