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

#include <gtest/gtest.h>

#include "paqc/axl/lexer.hpp"
#include "paqc/axl/parser.hpp"
#include "paqc/axl/printer.hpp"
#include "paqc/axl/validate.hpp"
#include "paqc/benchmarks.hpp"

namespace paqc::axl {
namespace {

std::vector<Tok> kinds(const std::string& text) {
  std::vector<Tok> out;
  for (const auto& t : tokenize(text)) out.push_back(t.kind);
  return out;
}

CompileErrorKind error_kind(const std::string& text) {
  try {
    validate(parse(text));
  } catch (const CompileError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return CompileErrorKind::Lexical;
}

TEST(LexerTest, ParamDeclaration) {
  EXPECT_EQ(kinds("param M;"), (std::vector<Tok>{Tok::KwParam, Tok::Ident, Tok::Semi, Tok::End}));
  EXPECT_EQ(tokenize("param M;")[1].text, "M");
}

TEST(LexerTest, ChainedComparison) {
  EXPECT_EQ(kinds("1<=t<=M"),
            (std::vector<Tok>{Tok::Int, Tok::Le, Tok::Ident, Tok::Le, Tok::Ident, Tok::End}));
}

TEST(LexerTest, AssignDefinitionToken) {
  auto toks = tokenize("S2 := {t:1<=t<=M (#X(t))}");
  ASSERT_GE(toks.size(), 2u);
  EXPECT_EQ(toks[1].kind, Tok::Assign);
  EXPECT_EQ(toks[1].text, ":=");
}

TEST(LexerTest, ComposeIsOneToken) {
  EXPECT_EQ(kinds("A (+) B"), (std::vector<Tok>{Tok::Ident, Tok::Compose, Tok::Ident, Tok::End}));
}

TEST(LexerTest, CommentsAndPositions) {
  auto toks = tokenize("// header\n  param N; // trailing\nstatement S;");
  ASSERT_EQ(toks.size(), 7u);
  EXPECT_EQ(toks[0].pos, (SourcePos{2, 3}));
  EXPECT_EQ(toks[3].kind, Tok::KwStatement);
  EXPECT_EQ(toks[3].pos, (SourcePos{3, 1}));
}

TEST(LexerTest, IllegalCharacterReportsPosition) {
  try {
    tokenize("param M;\n  $");
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), CompileErrorKind::Lexical);
    EXPECT_EQ(e.pos(), (SourcePos{2, 3}));
  }
}

TEST(ParserTest, ParityProgram) {
  auto p = parse(sources::kParity);
  EXPECT_EQ(p.params.size(), 1u);
  EXPECT_EQ(p.statements.size(), 3u);
  EXPECT_EQ(p.directives.size(), 2u);
  EXPECT_EQ(p.directives[0].transform, "plutomax");
  EXPECT_EQ(print(p.directives[1].composition), "S2 (+) S3");
  EXPECT_EQ(p.directives[1].bindings, (std::vector<std::pair<std::string, Int>>{{"M", 8}}));
}

TEST(ParserTest, PipelinedProgram) {
  auto p = parse(sources::kPipelined);
  EXPECT_EQ(p.params.size(), 1u);
  EXPECT_EQ(p.statements.size(), 13u);
  EXPECT_EQ(p.directives.size(), 1u);
  EXPECT_EQ(p.directives[0].composition.children.size(), 13u);
  EXPECT_TRUE(p.directives[0].transform.empty());
}

TEST(ParserTest, EmptyInput) {
  auto p = parse("");
  EXPECT_TRUE(p.params.empty());
  EXPECT_TRUE(p.statements.empty());
  EXPECT_TRUE(p.directives.empty());
  EXPECT_NO_THROW(validate(p));
}

TEST(ParserTest, ChainsExpandToConjunctions) {
  auto p = parse("param M; statement S; S := {t : 1 <= t <= M (#X(t)) };");
  ASSERT_EQ(p.statements.size(), 1u);
  const auto& c = p.statements[0].domain.constraints;
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(print(c[0].lhs), "1");
  EXPECT_EQ(print(c[0].rhs), "t");
  EXPECT_EQ(print(c[1].lhs), "t");
  EXPECT_EQ(print(c[1].rhs), "M");
}

TEST(ParserTest, ComposeChainIsFlatAndParenthesesGroup) {
  auto p = parse(
      "statement A, B, C; codegen {A (+) B (+) C}; codegen {(A (+) B) (+) C};");
  EXPECT_EQ(p.directives[0].composition.children.size(), 3u);
  ASSERT_EQ(p.directives[1].composition.children.size(), 2u);
  EXPECT_EQ(p.directives[1].composition.children[0].children.size(), 2u);
}

TEST(ParserTest, OptionalClosingParenthesis) {
  auto a = parse("statement S; S := {i: 0<=i<4 ( #X(i) ) };");
  auto b = parse("statement S; S := {i: 0<=i<4 ( #X(i) };");
  EXPECT_EQ(a, b);
}

TEST(ParserTest, SyntaxErrorNamesExpectedToken) {
  try {
    parse("param M\nstatement S;");
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), CompileErrorKind::Syntax);
    EXPECT_EQ(e.pos(), (SourcePos{2, 1}));
    EXPECT_NE(std::string(e.what()).find("';'"), std::string::npos);
  }
}

TEST(ParserTest, AllBenchmarksParse) {
  for (const auto& b : benchmark_suite()) {
    SCOPED_TRACE(b.name);
    auto p = parse(b.source);
    EXPECT_EQ(p.statements.size(), b.statements);
    EXPECT_NO_THROW(validate(p));
  }
}

TEST(PrinterTest, RoundTripPreservesStructure) {
  std::vector<std::string> corpus{sources::kParity};
  for (const auto& b : benchmark_suite()) corpus.push_back(b.source);
  corpus.push_back(
      "param N; statement S; S := {i,j: 0<=i<N, -(j) <= 2*(i - 1) - -3, j==i "
      "( (#X(i) (+) #H(j)) (+) #CNOT(i, N - (i - j)) ) };"
      "codegen {S} with {N=3} apply {feautrier};");
  for (const auto& src : corpus) {
    auto first = parse(src);
    validate(first);
    auto text = print(first);
    auto second = parse(text);
    EXPECT_EQ(first, second) << text;
    EXPECT_EQ(print(second), text);
  }
}

TEST(ValidateTest, CnotWithTwoArgumentsAccepted) {
  auto r = validate(parse("statement S; S := {i: 0<=i<3 (#CNOT(i, i+1))};"));
  ASSERT_EQ(r.statements.size(), 1u);
  const auto gates = r.statements[0].body.gates();
  ASSERT_EQ(gates.size(), 1u);
  EXPECT_EQ(gates[0]->gate.name, "CNOT");
  EXPECT_EQ(gates[0]->args[1], AffineExpr::iterator("i") + 1);
}

TEST(ValidateTest, ArityMismatch) {
  EXPECT_EQ(error_kind("statement S; S := {i: 0<=i<3 (#CNOT(i, i+1, i+2))};"),
            CompileErrorKind::Arity);
}

TEST(ValidateTest, UnboundIterator) {
  EXPECT_EQ(error_kind("statement S; S := {t: 0<=t<3 (#X(j))};"),
            CompileErrorKind::UnboundIterator);
}

TEST(ValidateTest, UnknownGate) {
  EXPECT_EQ(error_kind("statement S; S := {t: 0<=t<3 (#FOO(t))};"),
            CompileErrorKind::UnknownGate);
}

TEST(ValidateTest, UnboundParameterInDirective) {
  EXPECT_EQ(error_kind("param N; statement S; S := {t: 0<=t<N (#X(t))}; codegen {S};"),
            CompileErrorKind::UnboundParameter);
  auto src = parse("param N; statement S; S := {t: 0<=t<N (#X(t))}; codegen {S};");
  auto r = validate(src, GateCatalog::standard(), {{"N", 3}});
  EXPECT_EQ(r.directives[0].binding.at("N"), 3);
}

TEST(ValidateTest, NonAffineProduct) {
  EXPECT_EQ(error_kind("param N; statement S; S := {t: 0<=t<N (#X(t*N))};"),
            CompileErrorKind::NonAffine);
}

TEST(ValidateTest, DuplicatesAndUnknownNames) {
  EXPECT_EQ(error_kind("param N, N;"), CompileErrorKind::Duplicate);
  EXPECT_EQ(error_kind("statement S, S;"), CompileErrorKind::Duplicate);
  EXPECT_EQ(error_kind("S := {t: 0<=t<3 (#X(t))};"), CompileErrorKind::UnknownName);
  EXPECT_EQ(error_kind("statement S; codegen {S};"), CompileErrorKind::UnknownName);
  EXPECT_EQ(error_kind("statement S; S := {t: 0<=t<3 (#X(t))}; codegen {S} apply {tile};"),
            CompileErrorKind::UnknownTransform);
}

TEST(ValidateTest, AliasesResolveToCanonicalGates) {
  auto r = validate(parse("statement S; S := {t: 0<=t<3 (#CX(t,t+1) (+) #CCNOT(0,1,t+2))};"));
  auto g = r.statements[0].body.gates();
  EXPECT_EQ(g[0]->gate.name, "CNOT");
  EXPECT_EQ(g[1]->gate.name, "Toffoli");
}

TEST(ValidateTest, StrictComparisonsLowerToInclusiveBounds) {
  auto r = validate(parse("param N; statement S; S := {i: 0<i<=N (#X(i))}; codegen {S} with {N=4};"));
  EXPECT_EQ(enumerate(r.statements[0].domain, r.directives[0].binding),
            (std::vector<Point>{{1}, {2}, {3}, {4}}));
}

}  // namespace
}  // namespace paqc::axl
