// Copyright 2026 The paqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Benchmark orchestration: compile each benchmark under a transform, map the
// resulting stream onto a topology with an allocator for several seeds, and
// aggregate the metrics (means, deviations, transform gaps, geometric means).
// Exports are sorted canonically so that identical seeds give identical files.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "paqc/axl/parser.hpp"
#include "paqc/benchmarks.hpp"
#include "paqc/mapper.hpp"

namespace paqc {

struct RunConfig {
  std::string benchmark;
  ParamBinding binding;  // empty: the benchmark defaults
  std::string topology;
  TransformKind transform = TransformKind::Base;
  Allocator allocator = Allocator::Trivial;
  int reps = 1;
  std::uint64_t base_seed = 0;
};

struct RunRecord {
  std::string benchmark;
  ParamBinding binding;
  std::string topology;
  TransformKind transform = TransformKind::Base;
  Allocator allocator = Allocator::Trivial;
  int rep = 0;
  std::uint64_t seed = 0;
  Metrics metrics;
  std::size_t logical_depth = 0;
  std::size_t logical_size = 0;
  bool verified = false;
  std::string status = "ok";  // ok | timeout | error
  std::string message;
};

struct RunResult {
  RunConfig config;
  std::vector<RunRecord> records;
  double mean_depth = 0, std_depth = 0;
  double mean_size = 0, std_size = 0;
  double mean_added = 0;
  std::string error;  // compile failure or first failed rep

  bool ok() const { return error.empty(); }
};

struct HarnessOptions {
  unsigned threads = 0;         // 0: hardware concurrency
  double timeout_seconds = 60;  // per allocation
  bool verify = true;
};

/// Mean and (population) standard deviation.
inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double m = 0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

/// exp(mean(log x)) over the strictly positive values; 0 when there are none.
inline double geomean(const std::vector<double>& xs) {
  double acc = 0;
  std::size_t n = 0;
  for (double x : xs) {
    if (x > 0) {
      acc += std::log(x);
      ++n;
    }
  }
  return n == 0 ? 0.0 : std::exp(acc / static_cast<double>(n));
}

/// (max - min) / max, or 0 for an empty or all-zero set.
inline double gap(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi > 0 ? (*hi - *lo) / *hi : 0.0;
}

/// The logical gate stream of a benchmark under a transform and binding.
inline GateStream compile_benchmark(const Benchmark& b, TransformKind t,
                                    const ParamBinding& binding = {}) {
  auto program = axl::validate(axl::parse(b.source));
  Scop scop = assemble(program);
  for (const auto& [k, v] : binding) scop.binding[k] = v;
  const ParamBinding bind = scop.binding;
  // Offsets are constants, so the schedule is searched at the binding it is emitted for.
  auto sol = schedule(scop, t);
  auto report = check_legality(scop, sol, bind);
  if (!report.legal) {
    throw ScheduleError(std::string(to_string(t)) + " schedule of " + b.name +
                        " is not legal at the requested binding");
  }
  return flatten(scop, sol, bind);
}

namespace detail {

inline RunResult run_one(const RunConfig& c, const HarnessOptions& opt) {
  RunResult r;
  r.config = c;
  GateStream stream;
  CouplingGraph graph;
  try {
    const Benchmark* b = find_benchmark(c.benchmark);
    if (!b) throw Error("unknown benchmark '" + c.benchmark + "'");
    stream = compile_benchmark(*b, c.transform, c.binding);
    graph = topology::build(c.topology);
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  const std::size_t logical_depth = circuit_depth(stream);
  std::vector<double> depths, sizes, added;
  for (int rep = 0; rep < c.reps; ++rep) {
    RunRecord rec;
    rec.benchmark = c.benchmark;
    rec.binding = c.binding;
    rec.topology = c.topology;
    rec.transform = c.transform;
    rec.allocator = c.allocator;
    rec.rep = rep;
    rec.seed = c.base_seed + static_cast<std::uint64_t>(rep);
    rec.logical_depth = logical_depth;
    rec.logical_size = stream.ops.size();
    try {
      AllocOptions ao;
      ao.seed = rec.seed;
      ao.timeout_seconds = opt.timeout_seconds;
      auto a = allocate(stream, graph, c.allocator, ao);
      rec.metrics = a.metrics;
      rec.verified = !opt.verify || verify_mapped(stream, a.circuit, graph, &rec.message);
      if (!rec.verified) rec.status = "error";
    } catch (const TimeoutError& e) {
      rec.status = "timeout";
      rec.message = e.what();
    } catch (const std::exception& e) {
      rec.status = "error";
      rec.message = e.what();
    }
    if (rec.status == "ok") {
      depths.push_back(static_cast<double>(rec.metrics.depth));
      sizes.push_back(static_cast<double>(rec.metrics.size));
      added.push_back(static_cast<double>(rec.metrics.added_gates));
    } else if (r.error.empty()) {
      r.error = rec.status + ": " + rec.message;
    }
    r.records.push_back(std::move(rec));
  }
  std::tie(r.mean_depth, r.std_depth) = mean_std(depths);
  std::tie(r.mean_size, r.std_size) = mean_std(sizes);
  r.mean_added = mean_std(added).first;
  return r;
}

}  // namespace detail

/// Runs every config on a worker pool; results come back in config order and
/// do not depend on the number of threads.
inline std::vector<RunResult> run_matrix(const std::vector<RunConfig>& configs,
                                         const HarnessOptions& opt = {}) {
  std::vector<RunResult> out(configs.size());
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(configs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = detail::run_one(configs[i], opt);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

/// benchmarks x topologies x transforms x allocators, `reps` seeds each.
inline std::vector<RunConfig> default_matrix(int reps = 10, std::uint64_t seed = 0) {
  std::vector<RunConfig> out;
  for (const auto& b : benchmark_suite()) {
    for (const auto& topo : topology::names()) {
      for (TransformKind t : all_transforms()) {
        for (Allocator a : all_allocators()) out.push_back({b.name, {}, topo, t, a, reps, seed});
      }
    }
  }
  return out;
}

/// cheung and pipelined with N = 2, 4, ..., 12.
inline std::vector<RunConfig> scaling_matrix(int reps = 10, std::uint64_t seed = 0,
                                             std::vector<Allocator> allocators = {
                                                 Allocator::Trivial, Allocator::WpmLite}) {
  std::vector<RunConfig> out;
  for (const char* name : {"cheung", "pipelined"}) {
    for (Int n = 2; n <= 12; n += 2) {
      for (const auto& topo : topology::names()) {
        for (TransformKind t : all_transforms()) {
          for (Allocator a : allocators) out.push_back({name, {{"N", n}}, topo, t, a, reps, seed});
        }
      }
    }
  }
  return out;
}

struct SummaryRow {
  std::string topology;
  TransformKind transform = TransformKind::Base;
  Allocator allocator = Allocator::Trivial;
  double geomean_depth = 0;
  double geomean_added = 0;
  std::size_t benchmarks = 0;
};

/// Transform gap within one (benchmark, binding, topology, allocator) cluster.
struct ClusterGap {
  std::string benchmark;
  ParamBinding binding;
  std::string topology;
  Allocator allocator = Allocator::Trivial;
  double max_depth = 0, min_depth = 0;
  double gap = 0;  // (max - min) / max of the mean depths across transforms
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  std::vector<ClusterGap> gaps;
};

/// Geometric means of the per-config mean depth and added gates, grouped by
/// (topology, transform, allocator); per-cluster transform gaps.
inline SummaryTable summarize(const std::vector<RunResult>& results) {
  SummaryTable t;
  using Key = std::tuple<std::string, TransformKind, Allocator>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  using CKey = std::tuple<std::string, ParamBinding, std::string, Allocator>;
  std::map<CKey, std::vector<double>> clusters;
  for (const auto& r : results) {
    if (!r.ok() || r.records.empty()) continue;
    auto& g = groups[{r.config.topology, r.config.transform, r.config.allocator}];
    g.first.push_back(r.mean_depth);
    g.second.push_back(r.mean_added);
    clusters[{r.config.benchmark, r.config.binding, r.config.topology, r.config.allocator}].push_back(
        r.mean_depth);
  }
  for (const auto& [k, v] : groups) {
    t.rows.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), geomean(v.first),
                      geomean(v.second), v.first.size()});
  }
  for (const auto& [k, depths] : clusters) {
    const auto [lo, hi] = std::minmax_element(depths.begin(), depths.end());
    t.gaps.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), *hi, *lo,
                      gap(depths)});
  }
  return t;
}

// ---- export ---------------------------------------------------------------

struct ExportOptions {
  bool timing = true;  // false: leave alloc_time blank for byte-stable files
};

inline std::string format_binding(const ParamBinding& b) {
  std::string s;
  for (const auto& [k, v] : b) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
  return s;
}

/// All records in canonical order: benchmark, binding, topology, transform,
/// allocator, rep.
inline std::vector<const RunRecord*> canonical_records(const std::vector<RunResult>& results) {
  std::vector<const RunRecord*> recs;
  for (const auto& r : results) {
    for (const auto& rec : r.records) recs.push_back(&rec);
  }
  std::stable_sort(recs.begin(), recs.end(), [](const RunRecord* a, const RunRecord* b) {
    return std::tie(a->benchmark, a->binding, a->topology, a->transform, a->allocator, a->rep) <
           std::tie(b->benchmark, b->binding, b->topology, b->transform, b->allocator, b->rep);
  });
  return recs;
}

inline const char* kCsvHeader =
    "benchmark,topology,transform,allocator,rep,seed,depth,size,added,swaps,reverses,alloc_time";

/// CSV with one line per record. Scaling runs carry their binding in the
/// benchmark column (e.g. `cheung[N=4]`).
inline void write_csv(std::ostream& os, const std::vector<RunResult>& results,
                      const ExportOptions& opt = {}) {
  os << kCsvHeader << "\n";
  for (const RunRecord* r : canonical_records(results)) {
    std::string bench = r->benchmark;
    if (!r->binding.empty()) bench += "[" + format_binding(r->binding) + "]";
    os << bench << "," << r->topology << "," << to_string(r->transform) << ","
       << to_string(r->allocator) << "," << r->rep << "," << r->seed << ",";
    if (r->status == "ok") {
      os << r->metrics.depth << "," << r->metrics.size << "," << r->metrics.added_gates << ","
         << r->metrics.swaps << "," << r->metrics.reverses << ",";
    } else {
      os << r->status << ",,,,,";
    }
    if (opt.timing && r->status == "ok") {
      std::ostringstream t;
      t << std::setprecision(6) << r->metrics.alloc_time;
      os << t.str();
    }
    os << "\n";
  }
}

inline nlohmann::json to_json(const std::vector<RunResult>& results, const ExportOptions& opt = {}) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunRecord* r : canonical_records(results)) {
    nlohmann::json j;
    j["benchmark"] = r->benchmark;
    j["binding"] = r->binding;
    j["topology"] = r->topology;
    j["transform"] = to_string(r->transform);
    j["allocator"] = to_string(r->allocator);
    j["rep"] = r->rep;
    j["seed"] = r->seed;
    j["status"] = r->status;
    if (r->status == "ok") {
      j["depth"] = r->metrics.depth;
      j["size"] = r->metrics.size;
      j["added"] = r->metrics.added_gates;
      j["swaps"] = r->metrics.swaps;
      j["reverses"] = r->metrics.reverses;
      if (opt.timing) j["alloc_time"] = r->metrics.alloc_time;
    } else {
      j["message"] = r->message;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void write_json(std::ostream& os, const std::vector<RunResult>& results,
                       const ExportOptions& opt = {}) {
  os << to_json(results, opt).dump(2) << "\n";
}

}  // namespace paqc
