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

#include "paqc/mapper.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "paqc/benchmarks.hpp"
#include "paqc/harness.hpp"
#include "paqc/topology.hpp"

namespace paqc {
namespace {

GateStream qasm(const std::string& body, int qubits = 36) {
  return read_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(qubits) +
                   "];\n" + body);
}

AllocOptions seeded(std::uint64_t seed) {
  AllocOptions o;
  o.seed = seed;
  return o;
}

// Longest path in the DAG where an op precedes every later op sharing a
// quantum operand with it.
std::size_t dag_longest_path(const GateStream& s) {
  std::vector<std::size_t> len(s.ops.size(), 1);
  std::size_t best = 0;
  for (std::size_t j = 0; j < s.ops.size(); ++j) {
    const auto qj = detail::quantum_operands(s.ops[j]);
    for (std::size_t i = 0; i < j; ++i) {
      const auto qi = detail::quantum_operands(s.ops[i]);
      bool shared = std::any_of(qi.begin(), qi.end(), [&](int q) {
        return std::find(qj.begin(), qj.end(), q) != qj.end();
      });
      if (shared) len[j] = std::max(len[j], len[i] + 1);
    }
    best = std::max(best, len[j]);
  }
  return best;
}

TEST(TopologyTest, PublishedProperties) {
  struct Expect {
    const char* name;
    std::size_t edges;
    int high_degree;
    int bisection;
  };
  for (const auto& e : {Expect{"grid6x6", 60, 32, 6}, Expect{"multiring36", 44, 8, 6},
                        Expect{"tiled36", 52, 24, 2}}) {
    SCOPED_TRACE(e.name);
    const auto g = topology::build(e.name);
    const auto p = graph_props(g);
    EXPECT_EQ(p.vertices, 36);
    EXPECT_EQ(p.edges, e.edges);
    EXPECT_EQ(p.diameter, 10);
    EXPECT_EQ(p.high_degree_vertices(), e.high_degree);
    ASSERT_TRUE(p.witness_bisection.has_value());
    EXPECT_EQ(*p.witness_bisection, e.bisection);
    EXPECT_GE(p.searched_bisection, 0);
    EXPECT_LE(p.searched_bisection, e.bisection);
  }
}

TEST(TopologyTest, TwoVertexGraph) {
  CouplingGraph g("pair", 2, {{0, 1}});
  const auto p = graph_props(g);
  EXPECT_EQ(p.diameter, 1);
  EXPECT_EQ(p.searched_bisection, 1);
  EXPECT_EQ(g.distance(0, 1), 1);
}

TEST(TopologyTest, RejectsMalformedGraphs) {
  EXPECT_THROW(CouplingGraph("x", 2, {{0, 0}}), Error);
  EXPECT_THROW(CouplingGraph("x", 2, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(CouplingGraph("x", 2, {{0, 2}}), Error);
  EXPECT_THROW(CouplingGraph("x", 3, {{0, 1}}), Error);
}

TEST(TopologyTest, JsonRoundTrip) {
  for (const auto& name : topology::names()) {
    const auto g = topology::build(name);
    std::stringstream ss;
    write_graph(ss, g);
    const auto h = read_graph(ss);
    EXPECT_EQ(h.name(), g.name());
    EXPECT_EQ(h.size(), g.size());
    EXPECT_EQ(h.edges(), g.edges());
  }
}

TEST(DepthTest, ParallelGatesHaveDepthOne) {
  EXPECT_EQ(circuit_depth(qasm("h q[0];\nh q[1];\nh q[2];\nh q[3];\nh q[4];\n")), 1u);
}

TEST(DepthTest, ChainOnOneQubit) {
  std::string body;
  for (int k = 1; k <= 8; ++k) body += "cx q[0],q[" + std::to_string(k) + "];\n";
  EXPECT_EQ(circuit_depth(qasm(body)), 8u);
}

TEST(DepthTest, MatchesLongestPathOnCorpus) {
  for (const auto& b : benchmark_suite()) {
    SCOPED_TRACE(b.name);
    const auto s = compile_benchmark(b, TransformKind::Base);
    EXPECT_EQ(circuit_depth(s), dag_longest_path(s));
  }
}

TEST(MapperTest, AdjacentCnotNeedsNoSwap) {
  const auto g = topology::grid6x6();
  const auto a = allocate(qasm("cx q[0],q[1];\n"), g, Allocator::Trivial);
  EXPECT_EQ(a.metrics.swaps, 0u);
  EXPECT_EQ(a.metrics.added_gates, 0u);
  EXPECT_EQ(a.metrics.depth, 1u);
}

TEST(MapperTest, CornerToCornerCnotOnGrid) {
  const auto g = topology::grid6x6();
  const auto logical = qasm("cx q[0],q[35];\n");
  const auto a = allocate(logical, g, Allocator::Trivial);
  // Distance 10: nine swaps bring the operands together, three CNOTs each.
  EXPECT_EQ(a.metrics.swaps, 9u);
  EXPECT_EQ(a.metrics.added_gates, 27u);
  EXPECT_EQ(a.metrics.size, 28u);
  EXPECT_TRUE(verify_mapped(logical, a.circuit, g));
}

TEST(MapperTest, VerifyDetectsDroppedSwapGate) {
  const auto g = topology::grid6x6();
  const auto logical = qasm("cx q[0],q[35];\nh q[0];\n");
  auto a = allocate(logical, g, Allocator::Trivial);
  auto it = std::find_if(a.circuit.ops.begin(), a.circuit.ops.end(),
                         [](const PhysOp& op) { return op.tag == PhysOp::Tag::SwapPart; });
  ASSERT_NE(it, a.circuit.ops.end());
  a.circuit.ops.erase(it);
  std::string why;
  EXPECT_FALSE(verify_mapped(logical, a.circuit, g, &why));
  EXPECT_FALSE(why.empty());
}

TEST(MapperTest, VerifyDetectsMovedOperand) {
  const auto g = topology::grid6x6();
  const auto logical = qasm("cx q[0],q[1];\n");
  auto a = allocate(logical, g, Allocator::Trivial);
  a.circuit.ops[0].operands = {1, 2};
  EXPECT_FALSE(verify_mapped(logical, a.circuit, g));
}

TEST(MapperTest, AllAllocatorsVerifyOnCorpus) {
  for (const auto& name : topology::names()) {
    const auto g = topology::build(name);
    for (const auto& b : benchmark_suite()) {
      const auto s = compile_benchmark(b, TransformKind::PlutoMax);
      for (auto policy : all_allocators()) {
        SCOPED_TRACE(name + "/" + b.name + "/" + to_string(policy));
        const auto a = allocate(s, g, policy, seeded(3));
        std::string why;
        EXPECT_TRUE(verify_mapped(s, a.circuit, g, &why)) << why;
        EXPECT_GE(a.metrics.depth, circuit_depth(s));
        EXPECT_EQ(a.metrics.size, s.ops.size() + a.metrics.added_gates);
      }
    }
  }
}

TEST(MapperTest, SabreIsDeterministicPerSeed) {
  const auto g = topology::tiled36();
  const auto s = compile_benchmark(*find_benchmark("cuccaro"), TransformKind::Base);
  const auto a = allocate(s, g, Allocator::SabreLite, seeded(7));
  const auto b = allocate(s, g, Allocator::SabreLite, seeded(7));
  EXPECT_EQ(a.circuit, b.circuit);
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 8 && !differs; ++seed) {
    differs = allocate(s, g, Allocator::SabreLite, seeded(seed)).circuit != a.circuit;
  }
  EXPECT_TRUE(differs);
}

TEST(MapperTest, DirectedEdgeInsertsReverse) {
  CouplingGraph g("arrow", 2, {{0, 1}}, true);
  const auto logical = qasm("cx q[1],q[0];\n", 2);
  const auto a = allocate(logical, g, Allocator::Trivial);
  EXPECT_EQ(a.metrics.reverses, 1u);
  EXPECT_EQ(a.metrics.swaps, 0u);
  EXPECT_EQ(a.metrics.added_gates, 4u);
  EXPECT_TRUE(verify_mapped(logical, a.circuit, g));
  for (const auto& op : a.circuit.ops) {
    if (detail::is_cnot(op.gate)) {
      EXPECT_EQ(op.operands, (std::vector<Int>{0, 1}));
    }
  }
}

TEST(MapperTest, DirectedCorpusVerifies) {
  const auto g = topology::grid6x6().with_directed(true);
  const auto s = compile_benchmark(*find_benchmark("adder_mau"), TransformKind::Feautrier);
  for (auto policy : all_allocators()) {
    SCOPED_TRACE(to_string(policy));
    const auto a = allocate(s, g, policy);
    std::string why;
    EXPECT_TRUE(verify_mapped(s, a.circuit, g, &why)) << why;
  }
}

TEST(MapperTest, TooWideCircuitIsRejected) {
  CouplingGraph g("pair", 2, {{0, 1}});
  EXPECT_THROW(allocate(qasm("h q[2];\n", 3), g, Allocator::Trivial), MappingError);
}

TEST(MapperTest, TimeoutIsReported) {
  const auto g = topology::grid6x6();
  const auto s = compile_benchmark(*find_benchmark("cuccaro"), TransformKind::Base);
  AllocOptions opt;
  opt.timeout_seconds = 0.0;
  EXPECT_THROW(allocate(s, g, Allocator::SabreLite, opt), TimeoutError);
}

TEST(AllocatorTest, NamesRoundTrip) {
  for (auto a : all_allocators()) EXPECT_EQ(parse_allocator(to_string(a)), a);
  EXPECT_THROW(parse_allocator("jku"), Error);
}

}  // namespace
}  // namespace paqc
