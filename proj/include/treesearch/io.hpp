#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "treesearch/decision_tree.hpp"
#include "treesearch/error.hpp"
#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"

namespace treesearch {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
}

inline Rational json_rational(const Json& value, std::size_t index) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::ParseError, "cost #" + std::to_string(index + 1) + ": " + e.what());
  }
  throw Error(Errc::ParseError, "cost #" + std::to_string(index + 1) + " must be an integer or a \"p/q\" string");
}

inline int json_int(const Json& value, const std::string& what) {
  if (!value.is_number_integer()) throw Error(Errc::ParseError, what + " must be an integer");
  auto v = value.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw Error(Errc::ParseError, what + " is out of range");
  }
  return static_cast<int>(v);
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Instance document: {"n": int, "edges": [[u, v], ...], "costs": ["p/q", ...]},
/// 1-based ids, costs[i] belongs to vertex i + 1.
inline TreeInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(Errc::ParseError, "instance must be a JSON object");
  for (const char* field : {"n", "edges", "costs"}) {
    if (!doc.contains(field)) throw Error(Errc::ParseError, std::string("missing field '") + field + "'");
  }
  RawInstance raw;
  raw.n = detail::json_int(doc["n"], "n");
  const auto& edges = doc["edges"];
  if (!edges.is_array()) throw Error(Errc::ParseError, "'edges' must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "each edge must be a pair [u, v]");
    raw.edges.emplace_back(detail::json_int(e[0], "edge endpoint"), detail::json_int(e[1], "edge endpoint"));
  }
  const auto& costs = doc["costs"];
  if (!costs.is_array()) throw Error(Errc::ParseError, "'costs' must be an array");
  for (std::size_t i = 0; i < costs.size(); ++i) raw.costs.push_back(detail::json_rational(costs[i], i));
  return validate_instance(std::move(raw));
}

inline TreeInstance parse_instance(std::string_view text) { return instance_from_json(detail::parse_json(text)); }

inline TreeInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline OrderedJson instance_to_json(const TreeInstance& inst) {
  OrderedJson doc;
  doc["n"] = inst.size();
  doc["edges"] = OrderedJson::array();
  for (auto [u, v] : inst.edges()) doc["edges"].push_back({u, v});
  doc["costs"] = OrderedJson::array();
  for (const auto& c : inst.costs()) doc["costs"].push_back(c.str());
  return doc;
}

inline std::string serialize_instance(const TreeInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

/// Decision-tree document: {"root": int, "children": {"<id>": [int, ...], ...}}.
/// Vertices missing from "children" are leaves.
inline DecisionTree decision_tree_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("root") || !doc.contains("children")) {
    throw Error(Errc::ParseError, "decision tree needs 'root' and 'children'");
  }
  DecisionTree d;
  d.root = detail::json_int(doc["root"], "root");
  d.children.try_emplace(d.root);
  const auto& children = doc["children"];
  if (!children.is_object()) throw Error(Errc::ParseError, "'children' must be an object");
  for (const auto& [key, list] : children.items()) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "child map key '" + key + "' is not a vertex id");
    }
    if (!list.is_array()) throw Error(Errc::ParseError, "children of " + key + " must be an array");
    auto& kids = d.children[v];
    for (const auto& c : list) {
      int child = detail::json_int(c, "child id");
      kids.push_back(child);
    }
  }
  for (const auto& [v, kids] : DecisionTree(d).children) {
    for (int c : kids) d.children.try_emplace(c);
  }
  return d;
}

inline DecisionTree parse_decision_tree(std::string_view text) {
  return decision_tree_from_json(detail::parse_json(text));
}

inline DecisionTree load_decision_tree(const std::string& path) { return parse_decision_tree(read_file(path)); }

inline OrderedJson decision_tree_to_json(const DecisionTree& d) {
  OrderedJson doc;
  doc["root"] = d.root;
  doc["children"] = OrderedJson::object();
  for (const auto& [v, kids] : d.children) doc["children"][std::to_string(v)] = kids;
  return doc;
}

inline std::string serialize_decision_tree(const DecisionTree& d) { return decision_tree_to_json(d).dump(2) + "\n"; }

}  // namespace treesearch
