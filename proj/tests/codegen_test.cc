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

#include "paqc/codegen.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "paqc/axl/parser.hpp"
#include "paqc/benchmarks.hpp"
#include "paqc/deps.hpp"

namespace paqc {
namespace {

Scop scop_of(const std::string& text, std::size_t directive = 0) {
  return assemble(axl::validate(axl::parse(text)), directive);
}

std::string squash(const std::string& s) {
  std::string out;
  std::remove_copy_if(s.begin(), s.end(), std::back_inserter(out),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  return out;
}

TEST(ScanTest, ParityMinFusionListing) {
  Scop s = scop_of(sources::kParity, 1);
  auto ast = scan(s, schedule(s, TransformKind::PlutoMin));
  EXPECT_EQ(emit_loops(ast, s.binding),
            "for (int c1 = 1; c1 <= 8; c1 += 1) {\n"
            "  X[c1];\n"
            "}\n"
            "for (int c1 = 1; c1 <= 8; c1 += 1) {\n"
            "  CX[c1][0];\n"
            "}\n");
}

TEST(ScanTest, ParityMaxFusionListing) {
  Scop s = scop_of(sources::kParity, 0);
  auto ast = scan(s, schedule(s, TransformKind::PlutoMax));
  EXPECT_EQ(squash(emit_loops(ast, s.binding)),
            squash("for (int c0 = 1; c0 <= 8; c0 += 1) { X[c0]; CX[c0][0]; }"));
}

TEST(ScanTest, SinglePointDomainHasNoLoop) {
  Scop s = scop_of("statement A; A := {i : i == 3 ( #H(i) ) }; codegen {A} with {};");
  auto ast = scan(s, schedule_base(s));
  EXPECT_EQ(emit_loops(ast, s.binding), "H[3];\n");
}

TEST(ScanTest, EmptyScopGivesEmptyText) {
  Scop s;
  EXPECT_EQ(emit_loops(scan(s, schedule_base(s)), {}), "");
}

TEST(ScanTest, PipelinedBaseHasOneNestPerStatement) {
  Scop s = scop_of(find_benchmark("pipelined")->source);
  EXPECT_EQ(scan(s, schedule_base(s)).roots.size(), 13u);
}

TEST(ScanTest, NonInvertibleRowThrows) {
  Scop s = scop_of("param N; statement A; A := {i,j : 0<=i<N, 0<=j<N ( #CZ(i, N+j) ) };"
                   "codegen {A} with {N=2};");
  ScheduleSolution sol = schedule_base(s);
  sol.schedules[0].outputs[0] = AffineExpr::iterator("i") + AffineExpr::iterator("j");
  EXPECT_THROW(scan(s, sol), CodegenError);
}

TEST(FlattenTest, ParityHasSixteenOpsUnderEveryTransform) {
  for (std::size_t d = 0; d < 2; ++d) {
    Scop s = scop_of(sources::kParity, d);
    for (TransformKind k : all_transforms()) {
      auto st = flatten(s, schedule(s, k), s.binding);
      EXPECT_EQ(st.ops.size(), 16u);
      EXPECT_EQ(std::count_if(st.ops.begin(), st.ops.end(),
                              [](const GateOp& op) { return op.gate.name == "X"; }),
                8);
    }
  }
}

TEST(FlattenTest, CheungHasTwentyOneOps) {
  Scop s = scop_of(find_benchmark("cheung")->source);
  EXPECT_EQ(flatten(s, schedule_base(s), s.binding).ops.size(), 21u);
}

TEST(FlattenTest, EmptyDomain) {
  Scop s = scop_of(find_benchmark("cheung")->source);
  auto st = flatten(s, schedule_base(s), {{"N", 0}});
  EXPECT_TRUE(st.ops.empty());
  EXPECT_EQ(st.qubits, 0u);
}

TEST(FlattenTest, NegativeOperandThrows) {
  Scop s = scop_of("param N; statement A; A := {i : 0<=i<N ( #H(i-1) ) }; codegen {A} with {N=2};");
  EXPECT_THROW(flatten(s, schedule_base(s), s.binding), CodegenError);
}

// Executing the loop AST must visit exactly the instances of the scheduled
// scop in lexicographic timestamp order (ties in assembly order).
TEST(FlattenTest, MatchesDirectEnumerationOnCorpus) {
  for (const auto& b : benchmark_suite()) {
    Scop s = scop_of(b.source);
    for (TransformKind k : all_transforms()) {
      auto sol = schedule(s, k);
      Scop moved = s;
      for (std::size_t u = 0; u < s.units.size(); ++u) moved.units[u].schedule = sol.schedules[u];
      for (Int n : {Int{1}, Int{4}, s.binding.at("N")}) {
        ParamBinding bind = s.binding;
        bind["N"] = n;
        auto direct = enumerate_instances(moved, bind);
        auto st = flatten(s, sol, bind);
        ASSERT_EQ(st.ops.size(), direct.size()) << b.name << " " << to_string(k);
        for (std::size_t i = 0; i < direct.size(); ++i) {
          EXPECT_EQ(st.ops[i].timestamp, direct[i].timestamp) << b.name << " " << to_string(k);
          EXPECT_EQ(st.ops[i].unit, direct[i].unit) << b.name << " " << to_string(k);
        }
      }
    }
  }
}

using OpKey = std::pair<std::string, std::vector<Int>>;

std::vector<OpKey> multiset(const GateStream& st) {
  std::vector<OpKey> out;
  for (const auto& op : st.ops) out.emplace_back(op.gate.name, op.operands);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(FlattenTest, TransformsPreserveGateMultisetAndDependenceOrder) {
  for (const auto& b : benchmark_suite()) {
    Scop s = scop_of(b.source);
    const auto base = multiset(flatten(s, schedule_base(s), s.binding));
    const auto edges = compute_instance_deps(s, s.binding);
    for (TransformKind k : all_transforms()) {
      auto st = flatten(s, schedule(s, k), s.binding);
      EXPECT_EQ(multiset(st), base) << b.name << " " << to_string(k);
      // Position of every (unit, point) in the stream.
      std::map<std::pair<std::size_t, std::vector<Int>>, std::size_t> pos;
      for (std::size_t i = 0; i < st.ops.size(); ++i) {
        std::vector<Int> operands = st.ops[i].operands;
        pos[{st.ops[i].unit, operands}] = i;
      }
      for (const auto& e : edges) {
        auto key = [&](const AccessInstance& a) {
          std::vector<Int> ops;
          for (std::size_t x = 0; x < s.units[a.unit].args.size(); ++x) {
            ops.push_back(register_index(s.units[a.unit], x, a.point, s.binding));
          }
          return std::make_pair(a.unit, ops);
        };
        EXPECT_LT(pos.at(key(e.source)), pos.at(key(e.sink))) << b.name << " " << to_string(k);
      }
    }
  }
}

TEST(QasmTest, SingleX) {
  GateStream st;
  st.ops.push_back({{0}, GateCatalog::standard().signature("X"), {0}, 0});
  st.qubits = 1;
  EXPECT_EQ(emit_qasm(st), "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nx q[0];\n");
}

TEST(QasmTest, ToffoliAndMeasure) {
  const auto cat = GateCatalog::standard();
  GateStream st;
  st.ops.push_back({{0}, cat.signature("Toffoli"), {0, 1, 2}, 0});
  st.ops.push_back({{1}, cat.signature("Measure"), {3, 3}, 0});
  st.qubits = 4;
  st.clbits = 4;
  const std::string text = emit_qasm(st);
  EXPECT_NE(text.find("ccx q[0],q[1],q[2];\n"), std::string::npos);
  EXPECT_NE(text.find("measure q[3] -> c[3];\n"), std::string::npos);
  EXPECT_NE(text.find("creg c[4];\n"), std::string::npos);
}

TEST(QasmTest, NoClassicalRegisterWithoutMeasure) {
  Scop s = scop_of(sources::kParity, 0);
  EXPECT_EQ(emit_qasm(flatten(s, schedule_base(s), s.binding)).find("creg"), std::string::npos);
}

TEST(QasmTest, UnsupportedGateFails) {
  GateStream st;
  st.ops.push_back({{0}, GateSignature{"Peek", {AccessMode::Read}, {Space::Quantum}, ""}, {0}, 0});
  st.qubits = 1;
  try {
    emit_qasm(st);
    FAIL() << "expected CodegenError";
  } catch (const CodegenError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported"), std::string::npos);
  }
}

TEST(QasmTest, RoundTripOnCorpus) {
  for (const auto& b : benchmark_suite()) {
    Scop s = scop_of(b.source);
    for (TransformKind k : all_transforms()) {
      auto st = flatten(s, schedule(s, k), s.binding);
      const std::string text = emit_qasm(st);
      EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
                st.ops.size() + 3 + (st.clbits > 0 ? 1 : 0));
      auto back = read_qasm(text);
      ASSERT_EQ(back.ops.size(), st.ops.size());
      EXPECT_EQ(back.qubits, st.qubits);
      for (std::size_t i = 0; i < st.ops.size(); ++i) {
        EXPECT_EQ(back.ops[i].gate.name, st.ops[i].gate.name);
        EXPECT_EQ(back.ops[i].operands, st.ops[i].operands);
      }
    }
  }
}

TEST(QasmTest, Deterministic) {
  Scop s = scop_of(find_benchmark("cuccaro")->source);
  auto sol = schedule(s, TransformKind::Feautrier);
  EXPECT_EQ(emit_qasm(flatten(s, sol, s.binding)), emit_qasm(flatten(s, sol, s.binding)));
}

}  // namespace
}  // namespace paqc
