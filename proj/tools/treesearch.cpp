// Command-line front end. Exit codes: 0 success, 1 invalid input, 2 resource limit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treesearch/treesearch.hpp"

using namespace treesearch;

namespace {

struct Options {
  std::string input;
  std::string tree;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t state_limit = SolveLimits{}.max_states;
  int exact_cap = 14;
  // gen
  std::string shape = "random-tree";
  std::string costs = "uniform";
  int n = 10;
  // bench
  std::size_t count = 100;
  int n_min = 2;
  int n_max = 14;
  std::string shapes = "random-tree,path,star,spider";
  std::string cost_models = "uniform,random,up-monotonic,planted-k:2,planted-k:3,alternating:1/8";
  unsigned threads = 1;
  bool csv = false;
  bool no_timing = false;
  // trace
  int target = 0;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw Error(Errc::InvalidParameters, "cannot write " + opt.output);
  out << text;
}

std::string dump(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

TreeInstance input_instance(const Options& opt) {
  if (opt.input.empty()) throw Error(Errc::InvalidParameters, "--input is required");
  return load_instance(opt.input);
}

DecisionTree input_tree(const Options& opt) {
  if (opt.tree.empty()) throw Error(Errc::InvalidParameters, "--tree is required");
  return load_decision_tree(opt.tree);
}

SolveLimits limits(const Options& opt) { return SolveLimits{opt.state_limit}; }

std::string tree_output(const Options& opt, const TreeInstance& inst, const DecisionTree& d) {
  return opt.format == "dot" ? export_dot(inst, d) : serialize_decision_tree(d);
}

int cmd_validate(const Options& opt) {
  auto inst = input_instance(opt);
  OrderedJson doc;
  doc["instance"] = "ok";
  doc["n"] = inst.size();
  if (!opt.tree.empty()) {
    auto d = input_tree(opt);
    validate_decision_tree(inst, d);
    doc["tree"] = "ok";
    doc["cost"] = evaluate_cost(inst, d).str();
  }
  emit(opt, dump(doc));
  return 0;
}

int cmd_solve(const Options& opt) {
  auto inst = input_instance(opt);
  ApproxOptions options;
  options.limits = limits(opt);
  options.record_subsets = false;
  auto result = create_decision_tree(inst, options);
  emit(opt, tree_output(opt, inst, result.tree));
  std::cerr << "cost " << evaluate_cost(inst, result.tree) << " depth_d " << result.stats.depth_d << " levels "
            << result.stats.level_count << " max_aux_size " << result.stats.max_aux_size() << "\n";
  return 0;
}

int cmd_exact(const Options& opt) {
  auto inst = input_instance(opt);
  auto sol = opt_exact(inst, limits(opt));
  emit(opt, tree_output(opt, inst, sol.tree));
  std::cerr << "opt " << sol.cost << " states " << sol.states << "\n";
  return 0;
}

int cmd_eval(const Options& opt) {
  auto inst = input_instance(opt);
  auto d = input_tree(opt);
  OrderedJson doc;
  doc["cost"] = evaluate_cost(inst, d).str();
  doc["depth"] = d.depth();
  emit(opt, dump(doc));
  return 0;
}

int cmd_rank(const Options& opt) {
  auto inst = input_instance(opt);
  auto ranking = vertex_ranking(inst, inst.vertices());
  auto d = canonicalize(ranking_based_dt(inst));
  if (opt.format == "dot") {
    emit(opt, export_dot(inst, d));
    return 0;
  }
  OrderedJson doc;
  doc["max_label"] = ranking.max_label;
  doc["labels"] = OrderedJson::object();
  for (const auto& [v, l] : ranking.labels) doc["labels"][std::to_string(v)] = l;
  doc["tree"] = decision_tree_to_json(d);
  doc["cost"] = evaluate_cost(inst, d).str();
  emit(opt, dump(doc));
  return 0;
}

int cmd_kmod(const Options& opt) {
  auto inst = input_instance(opt);
  auto m = k_up_modularity(inst);
  OrderedJson doc;
  doc["k"] = m.k;
  doc["witness"] = m.witness.str();
  doc["up_monotonic"] = is_up_monotonic(inst);
  doc["modules"] = OrderedJson::array();
  for (const auto& module : heavy_modules(inst, m.witness).modules) doc["modules"].push_back(module);
  emit(opt, dump(doc));
  return 0;
}

int cmd_gen(const Options& opt) {
  auto inst = generate_instance(parse_shape(opt.shape), parse_cost_model(opt.costs), opt.n, opt.seed);
  emit(opt, opt.format == "dot" ? export_dot(inst) : serialize_instance(inst));
  return 0;
}

int cmd_bench(const Options& opt) {
  BenchConfig config;
  config.count = opt.count;
  config.n_min = opt.n_min;
  config.n_max = opt.n_max;
  config.seed = opt.seed;
  config.exact_cap = opt.exact_cap;
  config.limits = limits(opt);
  config.threads = opt.threads;
  config.shapes.clear();
  for (const auto& s : split_list(opt.shapes)) config.shapes.push_back(parse_shape(s));
  config.cost_models.clear();
  for (const auto& c : split_list(opt.cost_models)) config.cost_models.push_back(parse_cost_model(c));
  if (!opt.input.empty()) config.fixed.push_back({opt.input, load_instance(opt.input)});
  auto report = run_bench(config);
  emit(opt, opt.csv ? bench_report_to_csv(report) : dump(bench_report_to_json(report, !opt.no_timing)));
  std::cerr << "rows " << report.rows.size() << " max_ratio " << report.max_ratio << " bound_violations "
            << report.bound_violations << " errors " << report.errors << "\n";
  return 0;
}

int cmd_export_dot(const Options& opt) {
  auto inst = input_instance(opt);
  emit(opt, opt.tree.empty() ? export_dot(inst) : export_dot(inst, input_tree(opt)));
  return 0;
}

int cmd_trace(const Options& opt) {
  auto inst = input_instance(opt);
  auto d = input_tree(opt);
  validate_decision_tree(inst, d);
  auto seq = query_sequence(inst, d, opt.target);
  OrderedJson doc;
  doc["target"] = opt.target;
  doc["queries"] = seq.queries;
  doc["total_cost"] = seq.total_cost.str();
  emit(opt, dump(doc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search strategies for trees with vertex query costs"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", opt.output, "write the result here instead of stdout");
    sub->add_option("--format", opt.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("--input,-i", opt.input, "instance JSON file")->required(); };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--state-limit", opt.state_limit, "memo cap of the exact solver")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check an instance and optionally a decision tree");
  add_input(validate);
  validate->add_option("--tree,-t", opt.tree, "decision tree JSON file");
  add_common(validate);

  auto* solve = app.add_subcommand("solve", "approximate decision tree");
  add_input(solve);
  add_limits(solve);
  add_common(solve);

  auto* exact = app.add_subcommand("exact", "optimal decision tree (small instances)");
  add_input(exact);
  add_limits(exact);
  add_common(exact);

  auto* eval = app.add_subcommand("eval", "worst-case cost of a decision tree");
  add_input(eval);
  eval->add_option("--tree,-t", opt.tree, "decision tree JSON file")->required();
  add_common(eval);

  auto* rank = app.add_subcommand("rank", "minimal vertex ranking and its decision tree");
  add_input(rank);
  add_common(rank);

  auto* kmod = app.add_subcommand("kmod", "k-up-modularity");
  add_input(kmod);
  add_common(kmod);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--shape", opt.shape, "random-tree, path, star or spider");
  gen->add_option("--costs", opt.costs, "uniform, random, up-monotonic, planted-k:<k> or alternating:<eps>");
  gen->add_option("--n", opt.n, "vertex count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", opt.seed, "random seed");
  add_common(gen);

  auto* bench = app.add_subcommand("bench", "approximation-ratio benchmark");
  bench->add_option("--count", opt.count, "generated instances");
  bench->add_option("--n-min", opt.n_min, "smallest n");
  bench->add_option("--n-max", opt.n_max, "largest n");
  bench->add_option("--shapes", opt.shapes, "comma-separated shapes");
  bench->add_option("--costs", opt.cost_models, "comma-separated cost models");
  bench->add_option("--seed", opt.seed, "seed of the first row");
  bench->add_option("--exact-cap", opt.exact_cap, "largest n solved exactly");
  bench->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--input,-i", opt.input, "extra fixed instance");
  bench->add_flag("--csv", opt.csv, "CSV instead of JSON");
  bench->add_flag("--no-timing", opt.no_timing, "omit runtimes (byte-stable JSON)");
  add_limits(bench);
  add_common(bench);

  auto* dot = app.add_subcommand("export-dot", "Graphviz text for an instance or a decision tree");
  add_input(dot);
  dot->add_option("--tree,-t", opt.tree, "decision tree JSON file");
  add_common(dot);

  auto* trace = app.add_subcommand("trace", "query sequence for one target");
  add_input(trace);
  trace->add_option("--tree,-t", opt.tree, "decision tree JSON file")->required();
  trace->add_option("--target", opt.target, "target vertex")->required();
  add_common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (exact->parsed()) return cmd_exact(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (rank->parsed()) return cmd_rank(opt);
    if (kmod->parsed()) return cmd_kmod(opt);
    if (gen->parsed()) return cmd_gen(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (dot->parsed()) return cmd_export_dot(opt);
    if (trace->parsed()) return cmd_trace(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::StateLimitExceeded ? 2 : 1;
  }
  return 1;
}
