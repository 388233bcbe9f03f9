#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "treesearch/approx.hpp"
#include "treesearch/decision_tree.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/generate.hpp"
#include "treesearch/io.hpp"
#include "treesearch/modularity.hpp"

namespace treesearch {

struct NamedInstance {
  std::string name;
  TreeInstance instance;
};

struct BenchConfig {
  std::size_t count = 0;
  int n_min = 2;
  int n_max = 14;
  std::vector<Shape> shapes{Shape::RandomTree};
  std::vector<CostModel> cost_models{CostModel{}};
  std::uint64_t seed = 0;
  int exact_cap = 14;
  SolveLimits limits{};
  unsigned threads = 1;
  std::vector<NamedInstance> fixed;  // evaluated after the generated rows
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::string source;  // "<shape>/<cost model>" or the fixed instance name
  int n = 0;
  int k = 0;
  std::optional<Rational> opt;
  std::optional<Rational> approx_cost;
  std::optional<Rational> ratio;
  int depth_d = 0;
  std::size_t max_aux_size = 0;
  double runtime_ms = 0.0;
  bool bound_ok = true;
  std::string error;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  Rational max_ratio;         // 0 when no row has an oracle value
  double mean_ratio = 0.0;
  std::size_t rows_with_oracle = 0;
  std::size_t bound_violations = 0;
  std::size_t errors = 0;
};

namespace detail {

inline BenchRow bench_one(const TreeInstance& inst, const BenchConfig& config) {
  BenchRow row;
  row.n = inst.size();
  auto start = std::chrono::steady_clock::now();
  try {
    row.k = k_up_modularity(inst).k;
    ApproxOptions options;
    options.limits = config.limits;
    options.record_subsets = false;
    ApproxResult approx = create_decision_tree(inst, options);
    row.approx_cost = evaluate_cost(inst, approx.tree);
    row.depth_d = approx.stats.depth_d;
    row.max_aux_size = approx.stats.max_aux_size();
    if (inst.size() <= config.exact_cap) {
      row.opt = opt_exact(inst, config.limits).cost;
      row.ratio = *row.approx_cost / *row.opt;
      row.bound_ok = *row.ratio <= Rational(4 * row.depth_d + 2);
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace detail

/// Generated row i uses seed config.seed + i, shape shapes[i % S] and cost
/// model cost_models[(i / S) % M]; n is drawn from [n_min, n_max] with the
/// row's seed. Rows are independent and may run on several threads; the
/// report lists them in index order.
inline BenchReport run_bench(const BenchConfig& config) {
  if (config.shapes.empty() || config.cost_models.empty()) {
    throw Error(Errc::InvalidParameters, "bench needs at least one shape and one cost model");
  }
  if (config.n_min < 1 || config.n_max < config.n_min) {
    throw Error(Errc::InvalidParameters, "bench needs 1 <= n_min <= n_max");
  }
  std::size_t total = config.count + config.fixed.size();
  std::vector<BenchRow> rows(total);

  auto run_index = [&](std::size_t i) {
    if (i >= config.count) {
      const auto& fixed = config.fixed[i - config.count];
      rows[i] = detail::bench_one(fixed.instance, config);
      rows[i].source = fixed.name;
      return;
    }
    std::uint64_t seed = config.seed + i;
    Shape shape = config.shapes[i % config.shapes.size()];
    const CostModel& model = config.cost_models[(i / config.shapes.size()) % config.cost_models.size()];
    Rng pick(seed ^ 0x9e3779b97f4a7c15ULL);
    int n = pick.range(config.n_min, config.n_max);
    try {
      rows[i] = detail::bench_one(generate_instance(shape, model, n, seed), config);
    } catch (const Error& e) {
      rows[i] = BenchRow{};
      rows[i].n = n;
      rows[i].error = e.what();
    }
    rows[i].seed = seed;
    rows[i].source = to_string(shape) + "/" + to_string(model);
  };

  unsigned threads = std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) run_index(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) run_index(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  BenchReport report;
  report.rows = std::move(rows);
  Rational sum;
  for (const auto& row : report.rows) {
    if (!row.error.empty()) ++report.errors;
    if (!row.ratio) continue;
    ++report.rows_with_oracle;
    sum += *row.ratio;
    report.max_ratio = std::max(report.max_ratio, *row.ratio);
    if (!row.bound_ok) ++report.bound_violations;
  }
  if (report.rows_with_oracle > 0) {
    report.mean_ratio = (sum / Rational(static_cast<std::int64_t>(report.rows_with_oracle))).to_double();
  }
  return report;
}

inline OrderedJson bench_report_to_json(const BenchReport& report, bool include_timing = true) {
  auto opt_str = [](const std::optional<Rational>& r) { return r ? OrderedJson(r->str()) : OrderedJson(nullptr); };
  OrderedJson doc;
  doc["rows"] = OrderedJson::array();
  for (const auto& row : report.rows) {
    OrderedJson r;
    r["seed"] = row.seed;
    r["source"] = row.source;
    r["n"] = row.n;
    r["k"] = row.k;
    r["opt"] = opt_str(row.opt);
    r["approx_cost"] = opt_str(row.approx_cost);
    r["ratio"] = opt_str(row.ratio);
    r["depth_d"] = row.depth_d;
    r["max_aux_size"] = row.max_aux_size;
    if (include_timing) r["runtime_ms"] = row.runtime_ms;
    r["bound_ok"] = row.bound_ok;
    if (!row.error.empty()) r["error"] = row.error;
    doc["rows"].push_back(std::move(r));
  }
  OrderedJson agg;
  agg["rows"] = report.rows.size();
  agg["rows_with_oracle"] = report.rows_with_oracle;
  agg["max_ratio"] = report.max_ratio.str();
  agg["mean_ratio"] = report.mean_ratio;
  agg["bound_violations"] = report.bound_violations;
  agg["errors"] = report.errors;
  doc["aggregates"] = std::move(agg);
  return doc;
}

/// One CSV line per row, then a commented aggregate block.
inline std::string bench_report_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "seed,source,n,k,opt,approx_cost,ratio,depth_d,max_aux_size,runtime_ms,bound_ok,error\n";
  auto opt_str = [](const std::optional<Rational>& r) { return r ? r->str() : std::string(); };
  for (const auto& row : report.rows) {
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << row.seed << ',' << row.source << ',' << row.n << ',' << row.k << ',' << opt_str(row.opt) << ','
        << opt_str(row.approx_cost) << ',' << opt_str(row.ratio) << ',' << row.depth_d << ',' << row.max_aux_size
        << ',' << row.runtime_ms << ',' << (row.bound_ok ? "true" : "false") << ',' << error << '\n';
  }
  out << "# rows=" << report.rows.size() << " rows_with_oracle=" << report.rows_with_oracle
      << " max_ratio=" << report.max_ratio << " mean_ratio=" << report.mean_ratio
      << " bound_violations=" << report.bound_violations << " errors=" << report.errors << '\n';
  return out.str();
}

}  // namespace treesearch
