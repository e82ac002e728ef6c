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

// Command-line driver:
//
//   paqc compile <file.axl> [--param K=V]... [--transform T] [--emit qasm|loops|stream|deps|schedule]
//   paqc map <file.qasm> --topology T [--allocator A] [--seed S] [--directed] [--emit qasm|metrics]
//   paqc bench [--suite default|scaling] [--reps R] [--seed S] [--out PATH] [--format csv|json]
//   paqc topo-props <name|file.json> [--export]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "paqc/axl/parser.hpp"
#include "paqc/axl/validate.hpp"
#include "paqc/codegen.hpp"
#include "paqc/deps.hpp"
#include "paqc/harness.hpp"
#include "paqc/mapper.hpp"
#include "paqc/topology.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw paqc::Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to `path`, or to stdout when it is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw paqc::Error("cannot write '" + path + "'");
  out << text;
}

paqc::ParamBinding parse_params(const std::vector<std::string>& kvs) {
  paqc::ParamBinding b;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw paqc::Error("expected K=V, got '" + kv + "'");
    try {
      b[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw paqc::Error("parameter value of '" + kv + "' is not an integer");
    }
  }
  return b;
}

paqc::CouplingGraph load_topology(const std::string& spec) {
  for (const auto& n : paqc::topology::names()) {
    if (spec == n) return paqc::topology::build(n);
  }
  std::ifstream in(spec);
  if (!in) throw paqc::Error("unknown topology '" + spec + "' (not a builtin name or a readable file)");
  return paqc::read_graph(in);
}

std::string format_stream(const paqc::GateStream& s) {
  std::ostringstream os;
  for (const auto& op : s.ops) {
    os << "<" << paqc::format_point(op.timestamp) << "> " << op.gate.name;
    for (std::size_t k = 0; k < op.operands.size(); ++k) {
      os << (k ? "," : " ") << paqc::register_name(op.gate.spaces[k]) << "[" << op.operands[k] << "]";
    }
    os << "\n";
  }
  return os.str();
}

std::string physical_qasm(const paqc::PhysicalCircuit& c, const paqc::CouplingGraph& g) {
  paqc::GateStream s;
  s.qubits = static_cast<std::size_t>(g.size());
  s.clbits = c.clbits;
  for (const auto& op : c.ops) s.ops.push_back({{}, op.gate, op.operands, 0});
  return paqc::emit_qasm(s);
}

struct CompileArgs {
  std::string file, transform, emit = "qasm", out, gates;
  std::vector<std::string> params;
  std::size_t directive = 0;
};

int run_compile(const CompileArgs& a) {
  auto catalog = paqc::GateCatalog::standard();
  if (!a.gates.empty()) {
    std::ifstream in(a.gates);
    if (!in) throw paqc::Error("cannot open gate catalog '" + a.gates + "'");
    catalog.load_extensions(in);
  }
  auto program = paqc::axl::validate(paqc::axl::parse(read_file(a.file)), catalog, parse_params(a.params));
  paqc::Scop scop = paqc::assemble(program, a.directive);
  paqc::TransformKind kind = scop.transform;
  if (!a.transform.empty()) {
    auto parsed = paqc::parse_transform(a.transform);
    if (!parsed) throw paqc::Error("unknown transform '" + a.transform + "'");
    kind = *parsed;
  }
  const auto sol = paqc::schedule(scop, kind);
  const auto report = paqc::check_legality(scop, sol, scop.binding);
  if (!report.legal) {
    throw paqc::ScheduleError(std::string(paqc::to_string(kind)) + " schedule is not legal at the requested binding");
  }
  if (a.emit == "schedule") {
    write_output(a.out, sol.dump(scop));
  } else if (a.emit == "deps") {
    write_output(a.out, paqc::format_edges(scop, paqc::compute_instance_deps(scop, scop.binding)));
  } else if (a.emit == "loops") {
    write_output(a.out, paqc::emit_loops(paqc::scan(scop, sol), scop.binding));
  } else if (a.emit == "stream") {
    write_output(a.out, format_stream(paqc::flatten(scop, sol, scop.binding)));
  } else {
    write_output(a.out, paqc::emit_qasm(paqc::flatten(scop, sol, scop.binding)));
  }
  return 0;
}

struct MapArgs {
  std::string file, topology = "grid6x6", allocator = "trivial", emit = "metrics", out;
  std::uint64_t seed = 0;
  bool directed = false;
  double timeout = 60;
};

int run_map(const MapArgs& a) {
  const auto logical = paqc::read_qasm(read_file(a.file));
  auto graph = load_topology(a.topology);
  if (a.directed) graph = graph.with_directed(true);
  paqc::AllocOptions opt;
  opt.seed = a.seed;
  opt.timeout_seconds = a.timeout;
  const auto result = paqc::allocate(logical, graph, paqc::parse_allocator(a.allocator), opt);
  std::string why;
  if (!paqc::verify_mapped(logical, result.circuit, graph, &why)) {
    throw paqc::MappingError("mapped circuit failed verification: " + why);
  }
  if (a.emit == "qasm") {
    write_output(a.out, physical_qasm(result.circuit, graph));
  } else {
    const auto& m = result.metrics;
    nlohmann::json j{{"topology", graph.name()},
                     {"allocator", a.allocator},
                     {"seed", a.seed},
                     {"logical_depth", paqc::circuit_depth(logical)},
                     {"logical_size", logical.ops.size()},
                     {"depth", m.depth},
                     {"size", m.size},
                     {"added", m.added_gates},
                     {"swaps", m.swaps},
                     {"reverses", m.reverses},
                     {"alloc_time", m.alloc_time}};
    write_output(a.out, j.dump(2) + "\n");
  }
  return 0;
}

struct BenchArgs {
  std::string suite = "default", out, format = "csv";
  int reps = 10;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double timeout = 60;
  bool no_timing = false;
};

int run_bench(const BenchArgs& a) {
  const auto configs =
      a.suite == "scaling" ? paqc::scaling_matrix(a.reps, a.seed) : paqc::default_matrix(a.reps, a.seed);
  paqc::HarnessOptions opt;
  opt.threads = a.threads;
  opt.timeout_seconds = a.timeout;
  const auto results = paqc::run_matrix(configs, opt);
  std::ostringstream os;
  paqc::ExportOptions eo{!a.no_timing};
  if (a.format == "json") {
    paqc::write_json(os, results, eo);
  } else {
    paqc::write_csv(os, results, eo);
  }
  write_output(a.out, os.str());
  // Summary on stderr so that stdout stays machine-readable.
  const auto summary = paqc::summarize(results);
  std::size_t failures = 0;
  for (const auto& r : results) failures += r.ok() ? 0 : 1;
  std::cerr << "configs " << results.size() << ", failed " << failures << "\n";
  std::cerr << "topology,transform,allocator,geomean_depth,geomean_added\n";
  for (const auto& row : summary.rows) {
    std::cerr << row.topology << "," << paqc::to_string(row.transform) << ","
              << paqc::to_string(row.allocator) << "," << row.geomean_depth << ","
              << row.geomean_added << "\n";
  }
  return failures == 0 ? 0 : 1;
}

int run_topo(const std::string& spec, bool do_export) {
  const auto g = load_topology(spec);
  if (do_export) {
    paqc::write_graph(std::cout, g);
    return 0;
  }
  const auto p = paqc::graph_props(g);
  std::cout << "name " << g.name() << "\n"
            << "vertices " << p.vertices << "\n"
            << "edges " << p.edges << "\n"
            << "diameter " << p.diameter << "\n"
            << "degree>=3 " << p.high_degree_vertices() << "\n";
  for (const auto& [d, k] : p.degree_histogram) std::cout << "degree " << d << ": " << k << "\n";
  if (p.witness_bisection) std::cout << "bisection (witness) " << *p.witness_bisection << "\n";
  std::cout << "bisection (search) " << p.searched_bisection << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paqc: polyhedral compilation of parameterized affine quantum circuits"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile an AXL program");
  compile->add_option("file", ca.file, "AXL source")->required()->check(CLI::ExistingFile);
  compile->add_option("--param,-p", ca.params, "Parameter override K=V (repeatable)");
  compile->add_option("--transform,-t", ca.transform, "base|feautrier|plutomin|plutomax (default: the directive's)");
  compile->add_option("--emit,-e", ca.emit, "Output kind")
      ->check(CLI::IsMember({"qasm", "loops", "stream", "deps", "schedule"}));
  compile->add_option("--directive,-d", ca.directive, "Index of the codegen directive");
  compile->add_option("--gates", ca.gates, "Gate catalog extension file");
  compile->add_option("--out,-o", ca.out, "Output file (default: stdout)");

  MapArgs ma;
  auto* map = app.add_subcommand("map", "Allocate a QASM circuit on a coupling graph");
  map->add_option("file", ma.file, "OpenQASM 2.0 input")->required()->check(CLI::ExistingFile);
  map->add_option("--topology,-T", ma.topology, "grid6x6|multiring36|tiled36 or an edge-list JSON file");
  map->add_option("--allocator,-a", ma.allocator, "trivial|wpm_lite|sabre_lite")
      ->check(CLI::IsMember({"trivial", "wpm_lite", "sabre_lite"}));
  map->add_option("--seed,-s", ma.seed, "Random seed");
  map->add_flag("--directed", ma.directed, "Treat edges as CNOT orientations");
  map->add_option("--timeout", ma.timeout, "Allocation time budget in seconds");
  map->add_option("--emit,-e", ma.emit, "Output kind")->check(CLI::IsMember({"qasm", "metrics"}));
  map->add_option("--out,-o", ma.out, "Output file (default: stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the benchmark matrix");
  bench->add_option("--suite", ba.suite, "default|scaling")->check(CLI::IsMember({"default", "scaling"}));
  bench->add_option("--reps,-r", ba.reps, "Repetitions per configuration")->check(CLI::PositiveNumber);
  bench->add_option("--seed,-s", ba.seed, "Base seed");
  bench->add_option("--out,-o", ba.out, "Output file (default: stdout)");
  bench->add_option("--format,-f", ba.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--threads,-j", ba.threads, "Worker threads (default: all cores)");
  bench->add_option("--timeout", ba.timeout, "Per-allocation time budget in seconds");
  bench->add_flag("--no-timing", ba.no_timing, "Leave alloc_time blank (byte-stable output)");

  std::string topo_spec;
  bool topo_export = false;
  auto* topo = app.add_subcommand("topo-props", "Print coupling graph properties");
  topo->add_option("topology", topo_spec, "Builtin name or edge-list JSON file")->required();
  topo->add_flag("--export", topo_export, "Print the edge-list JSON instead");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*compile) return run_compile(ca);
    if (*map) return run_map(ma);
    if (*bench) return run_bench(ba);
    if (*topo) return run_topo(topo_spec, topo_export);
  } catch (const std::exception& e) {
    std::cerr << "paqc: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
