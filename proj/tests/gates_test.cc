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

#include "paqc/gates.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "paqc/axl/parser.hpp"
#include "paqc/axl/validate.hpp"
#include "paqc/benchmarks.hpp"
#include "paqc/scop.hpp"

namespace paqc {
namespace {

using M = AccessMode;
using S = Space;

TEST(GateCatalogTest, Cnot) {
  const auto cat = GateCatalog::standard();
  const auto& g = cat.signature("CNOT");
  EXPECT_EQ(g.modes, (std::vector<M>{M::Read, M::ReadWrite}));
  EXPECT_EQ(g.spaces, (std::vector<S>{S::Quantum, S::Quantum}));
}

TEST(GateCatalogTest, Measure) {
  const auto cat = GateCatalog::standard();
  const auto& g = cat.signature("Measure");
  EXPECT_EQ(g.modes, (std::vector<M>{M::ReadWrite, M::Write}));
  EXPECT_EQ(g.spaces, (std::vector<S>{S::Quantum, S::Classical}));
}

TEST(GateCatalogTest, Toffoli) {
  const auto cat = GateCatalog::standard();
  const auto& g = cat.signature("Toffoli");
  EXPECT_EQ(g.modes, (std::vector<M>{M::Read, M::Read, M::ReadWrite}));
  EXPECT_EQ(g.qasm, "ccx");
}

TEST(GateCatalogTest, AliasesResolve) {
  const auto cat = GateCatalog::standard();
  EXPECT_EQ(cat.signature("CX").name, "CNOT");
  EXPECT_EQ(cat.signature("CCX").name, "Toffoli");
  EXPECT_EQ(cat.signature("NOT").name, "X");
}

TEST(GateCatalogTest, UnknownGateThrows) {
  EXPECT_THROW(GateCatalog::standard().signature("Fredkin"), Error);
}

TEST(GateCatalogTest, EveryGateWritesTheQuantumRegister) {
  const auto cat = GateCatalog::standard();
  for (const char* n : {"X", "Y", "Z", "H", "Measure", "CNOT", "CY", "CZ", "Swap", "Toffoli"}) {
    const auto& g = cat.signature(n);
    bool writes_q = false;
    for (std::size_t a = 0; a < g.arity(); ++a) {
      writes_q = writes_q || (writes(g.modes[a]) && g.spaces[a] == S::Quantum);
    }
    EXPECT_TRUE(writes_q) << n;
  }
}

TEST(GateCatalogTest, ExtensionFile) {
  auto cat = GateCatalog::standard();
  std::istringstream in("# comment\nFredkin 3 r:q rw:q rw:q cswap\n\nPeek 1 r:q\n");
  cat.load_extensions(in);
  EXPECT_EQ(cat.signature("Fredkin").modes, (std::vector<M>{M::Read, M::ReadWrite, M::ReadWrite}));
  EXPECT_EQ(cat.signature("Fredkin").qasm, "cswap");
  EXPECT_TRUE(cat.signature("Peek").qasm.empty());
}

TEST(GateCatalogTest, MalformedExtensionThrows) {
  auto cat = GateCatalog::standard();
  std::istringstream in("Broken 2 r:q\n");
  EXPECT_THROW(cat.load_extensions(in), Error);
}

axl::Statement single(const std::string& text) {
  return axl::validate(axl::parse(text)).statements.at(0);
}

TEST(AccessRelationTest, ParityCnotBody) {
  auto prog = axl::validate(axl::parse(sources::kParity));
  auto rels = access_relations(*prog.find("S3"));
  ASSERT_EQ(rels.size(), 2u);
  EXPECT_EQ(rels[0].mode, M::Read);
  EXPECT_EQ(rels[0].map.outputs[0], AffineExpr::iterator("t"));
  EXPECT_EQ(rels[1].mode, M::ReadWrite);
  EXPECT_EQ(rels[1].map.outputs[0], AffineExpr(0));
}

TEST(AccessRelationTest, SingleTargetIdentity) {
  auto rels = access_relations(single("param N; statement S1; S1 := {t : 0<=t<N ( #X(t) ) };"));
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0].mode, M::ReadWrite);
  EXPECT_EQ(rels[0].map, AffineMap::identity({"t"}));
}

TEST(AccessRelationTest, TwoIteratorOffsets) {
  auto rels = access_relations(
      single("param N; statement S1; S1 := {t,i : 0<=t<N, 0<=i<N ( #CZ(t+i, t+i+3) ) };"));
  ASSERT_EQ(rels.size(), 2u);
  const AffineExpr sum = AffineExpr::iterator("t") + AffineExpr::iterator("i");
  EXPECT_EQ(rels[0].mode, M::Read);
  EXPECT_EQ(rels[0].map.outputs[0], sum);
  EXPECT_EQ(rels[1].mode, M::ReadWrite);
  EXPECT_EQ(rels[1].map.outputs[0], sum + 3);
}

TEST(AccessRelationTest, CountEqualsSumOfArities) {
  for (const auto& b : benchmark_suite()) {
    auto prog = axl::validate(axl::parse(b.source));
    for (const auto& st : prog.statements) {
      std::size_t arity = 0;
      for (const auto* g : st.body.gates()) arity += g->gate.arity();
      auto rels = access_relations(st);
      ASSERT_EQ(rels.size(), arity) << b.name << " " << st.name;
      for (const auto& r : rels) {
        const auto& g = st.body.gates()[r.gate_position]->gate;
        EXPECT_EQ(r.mode, g.modes[r.argument]);
        EXPECT_EQ(r.space, g.spaces[r.argument]);
      }
    }
  }
}

}  // namespace
}  // namespace paqc
