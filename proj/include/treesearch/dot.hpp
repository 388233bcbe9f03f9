#pragma once

#include <sstream>
#include <string>

#include "treesearch/decision_tree.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

namespace detail {

inline std::string dot_node(const TreeInstance& inst, int v) {
  return "  v" + std::to_string(v) + " [label=\"v" + std::to_string(v) + " (c=" + inst.cost(v).str() + ")\"];\n";
}

}  // namespace detail

/// Undirected Graphviz graph of the instance tree.
inline std::string export_dot(const TreeInstance& inst) {
  std::ostringstream out;
  out << "graph T {\n";
  for (int v = 1; v <= inst.size(); ++v) out << detail::dot_node(inst, v);
  for (auto [u, v] : inst.edges()) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

/// Directed Graphviz graph of a decision tree; arrows go from a query to
/// the next query on each response branch.
inline std::string export_dot(const TreeInstance& inst, const DecisionTree& d) {
  std::ostringstream out;
  out << "digraph D {\n";
  for (const auto& [v, _] : d.children) out << detail::dot_node(inst, v);
  for (const auto& [v, kids] : d.children) {
    for (int c : kids) out << "  v" << v << " -> v" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treesearch
