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

#include "paqc/affine.hpp"

#include <gtest/gtest.h>

#include <random>

namespace paqc {
namespace {

AffineExpr it(const std::string& n, Int c = 1) { return AffineExpr::iterator(n, c); }
AffineExpr par(const std::string& n, Int c = 1) { return AffineExpr::parameter(n, c); }

IntegerSet range(const std::string& x, AffineExpr lo, AffineExpr hi_exclusive) {
  return {{x}, {Constraint::ge(it(x), lo), Constraint::ge(hi_exclusive - 1, it(x))}};
}

TEST(AffineExprTest, EvalSubstitutesIterator) {
  std::vector<std::string> iters{"i"};
  EXPECT_EQ(eval(it("i") + 1, iters, Point{3}, {}), 4);
}

TEST(AffineExprTest, EvalScalarDimension) {
  std::vector<std::string> iters{"i"};
  EXPECT_EQ(eval(AffineExpr(0), iters, Point{17}, {}), 0);
}

TEST(AffineExprTest, EvalOffsetOperand) {
  std::vector<std::string> iters{"t", "i"};
  EXPECT_EQ(eval(it("t") + it("i") + 3, iters, Point{2, 1}, {}), 6);
}

TEST(AffineExprTest, EvalMissingParameterThrows) {
  std::vector<std::string> iters{"i"};
  EXPECT_THROW(eval(it("i") + par("N"), iters, Point{1}, {}), MissingParameterError);
  EXPECT_EQ(eval(it("i") + par("N", 2), iters, Point{1}, {{"N", 5}}), 11);
}

TEST(AffineExprTest, ArithmeticDropsZeroCoefficients) {
  AffineExpr e = it("i") + par("N") - it("i");
  EXPECT_FALSE(e.has_iterators());
  EXPECT_EQ(e, par("N"));
  EXPECT_TRUE((e - par("N")).is_constant());
}

TEST(AffineExprTest, Rendering) {
  EXPECT_EQ((par("N", 2) - it("i")).str(), "-i + 2*N");
  EXPECT_EQ((it("c0", -1) + 5).str(), "-c0 + 5");
  EXPECT_EQ(AffineExpr().str(), "0");
}

TEST(AffineExprTest, SubstituteAndBind) {
  AffineExpr e = it("x", 2) + par("N") + 1;
  AffineExpr s = e.substitute("x", it("c0") - 3);
  EXPECT_EQ(s, it("c0", 2) + par("N") - 5);
  EXPECT_EQ(s.bind({{"N", 4}}), it("c0", 2) - 1);
}

TEST(IntegerSetTest, EnumerateClosedRange) {
  IntegerSet s{{"t"}, {Constraint::ge(it("t"), AffineExpr(1)), Constraint::ge(par("M"), it("t"))}};
  auto pts = enumerate(s, {{"M", 8}});
  ASSERT_EQ(pts.size(), 8u);
  for (Int k = 0; k < 8; ++k) EXPECT_EQ(pts[k], Point{k + 1});
}

TEST(IntegerSetTest, EnumerateEmptyDomain) {
  EXPECT_TRUE(enumerate(range("i", AffineExpr(0), par("N")), {{"N", 0}}).empty());
}

TEST(IntegerSetTest, EnumerateConjunctionAgainstBruteForce) {
  IntegerSet s = range("i", AffineExpr(0), par("N"));
  s.constraints.push_back(Constraint::ge(AffineExpr(2), it("i")));  // i < 3
  ParamBinding b{{"N", 6}};
  std::vector<Point> brute;
  for (Int i = 0; i <= 5; ++i) {
    if (s.contains(Point{i}, b)) brute.push_back({i});
  }
  EXPECT_EQ(enumerate(s, b), brute);
  EXPECT_EQ(enumerate(s, b), (std::vector<Point>{{0}, {1}, {2}}));
}

TEST(IntegerSetTest, EnumerateUnboundedThrows) {
  IntegerSet s{{"i"}, {Constraint::ge(it("i"), AffineExpr(0))}};
  EXPECT_THROW(enumerate(s, {}), UnboundedDomainError);
}

TEST(IntegerSetTest, EnumerateMissingParameterThrows) {
  EXPECT_THROW(enumerate(range("i", AffineExpr(0), par("N")), {}), MissingParameterError);
}

TEST(IntegerSetTest, EnumerateEquality) {
  IntegerSet s{{"i"}, {Constraint::eq(it("i"), par("N"))}};
  EXPECT_EQ(enumerate(s, {{"N", 6}}), (std::vector<Point>{{6}}));
}

// Random two- and three-dimensional sets: enumeration must agree with a scan of
// an enclosing box, be strictly increasing and duplicate-free.
TEST(IntegerSetTest, EnumerateMatchesBoxScanOnRandomSets) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> coef(-2, 2), cst(-4, 8);
  const std::vector<std::string> names{"a", "b", "c"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dims = 2 + trial % 2;
    IntegerSet s;
    s.iterators.assign(names.begin(), names.begin() + static_cast<long>(dims));
    for (const auto& x : s.iterators) {
      s.constraints.push_back(Constraint::ge(it(x), AffineExpr(-3)));
      s.constraints.push_back(Constraint::ge(par("N"), it(x)));
    }
    for (int extra = 0; extra < 3; ++extra) {
      AffineExpr e(cst(rng));
      for (const auto& x : s.iterators) e += it(x, coef(rng));
      s.constraints.push_back({e, extra == 2 && trial % 5 == 0 ? Constraint::Kind::Equal
                                                              : Constraint::Kind::GreaterEq});
    }
    ParamBinding b{{"N", 4}};
    std::vector<Point> brute;
    Point p(dims);
    auto rec = [&](auto&& self, std::size_t d) -> void {
      if (d == dims) {
        if (s.contains(p, b)) brute.push_back(p);
        return;
      }
      for (Int v = -3; v <= 4; ++v) {
        p[d] = v;
        self(self, d + 1);
      }
    };
    rec(rec, 0);
    auto got = enumerate(s, b);
    ASSERT_EQ(got, brute) << "trial " << trial;
    for (std::size_t k = 1; k < got.size(); ++k) EXPECT_TRUE(lex_less(got[k - 1], got[k]));
  }
}

TEST(LexTest, FirstDimensionDecides) { EXPECT_TRUE(lex_less(Point{0, 3}, Point{1, 0})); }

TEST(LexTest, ScalarSuffixDecides) { EXPECT_TRUE(lex_less(Point{0, 5, 0}, Point{0, 5, 1})); }

TEST(LexTest, EqualIsNotLess) { EXPECT_FALSE(lex_less(Point{2, 2}, Point{2, 2})); }

TEST(LexTest, PadsWithZeros) {
  EXPECT_FALSE(lex_less(Point{1}, Point{1, 0}));
  EXPECT_TRUE(lex_less(Point{1}, Point{1, 1}));
  EXPECT_TRUE(lex_less(Point{1, -1}, Point{1}));
}

TEST(LexTest, StrictTotalOrderProperties) {
  std::vector<Point> all;
  for (Int a = -1; a <= 1; ++a)
    for (Int b = -1; b <= 1; ++b)
      for (Int c = -1; c <= 1; ++c) all.push_back({a, b, c});
  for (const auto& x : all) {
    EXPECT_FALSE(lex_less(x, x));
    for (const auto& y : all) {
      if (x != y) {
        EXPECT_NE(lex_less(x, y), lex_less(y, x));
      }
      for (const auto& z : all) {
        if (lex_less(x, y) && lex_less(y, z)) {
          EXPECT_TRUE(lex_less(x, z));
        }
      }
    }
  }
}

TEST(ComposeTest, PrefixAddsLeadingScalar) {
  auto id = AffineMap::identity({"i"});
  auto out = compose_time({id, id}, ComposeMode::Prefix);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].outputs, (std::vector<AffineExpr>{AffineExpr(0), it("i")}));
  EXPECT_EQ(out[1].outputs, (std::vector<AffineExpr>{AffineExpr(1), it("i")}));
  EXPECT_TRUE(out[1].is_scalar_dim(0));
  EXPECT_FALSE(out[1].is_scalar_dim(1));
}

TEST(ComposeTest, SuffixAddsTrailingScalar) {
  auto id = AffineMap::identity({"i"});
  auto out = compose_time({id, id}, ComposeMode::Suffix);
  EXPECT_EQ(out[0].outputs, (std::vector<AffineExpr>{it("i"), AffineExpr(0)}));
  EXPECT_EQ(out[1].outputs, (std::vector<AffineExpr>{it("i"), AffineExpr(1)}));
}

TEST(ComposeTest, SingleScheduleUnchanged) {
  auto id = AffineMap::identity({"i"});
  EXPECT_EQ(compose_time({id}, ComposeMode::Prefix), std::vector<AffineMap>{id});
}

TEST(ComposeTest, PrefixSeparatesSchedules) {
  auto id = AffineMap::identity({"i"});
  auto out = compose_time({id, id, id}, ComposeMode::Prefix);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    for (Int x = 0; x < 5; ++x) {
      for (Int y = 0; y < 5; ++y) {
        EXPECT_TRUE(lex_less(apply_map(out[k], Point{x}, {}), apply_map(out[k + 1], Point{y}, {})));
      }
    }
    for (Int x = 0; x + 1 < 5; ++x) {
      EXPECT_TRUE(lex_less(apply_map(out[k], Point{x}, {}), apply_map(out[k], Point{x + 1}, {})));
    }
  }
}

TEST(AffineMapTest, ApplyConstantOutput) {
  AffineMap m{{"i"}, {AffineExpr(0)}};
  EXPECT_EQ(apply_map(m, Point{4}, {}), Point{0});
}

TEST(AffineMapTest, ApplyShift) {
  AffineMap m{{"i"}, {it("i") + 1}};
  EXPECT_EQ(apply_map(m, Point{4}, {}), Point{5});
}

TEST(AffineMapTest, ApplyIdentity) {
  EXPECT_EQ(apply_map(AffineMap::identity({"i"}), Point{7}, {}), Point{7});
}

TEST(BoundsTest, TriangleProjection) {
  // {i,j : 0<=i<N, 0<=j<N, i+j<N}: the bound of i must not mention j.
  IntegerSet s{{"i", "j"},
               {Constraint::ge(it("i"), AffineExpr(0)), Constraint::ge(par("N") - 1, it("i")),
                Constraint::ge(it("j"), AffineExpr(0)), Constraint::ge(par("N") - 1, it("j")),
                Constraint::ge(par("N") - 1, it("i") + it("j"))}};
  auto b = extract_bounds(s, s.iterators);
  for (const auto& t : b[0].lower) EXPECT_EQ(t.numer.iter_coeff("j"), 0);
  for (const auto& t : b[0].upper) EXPECT_EQ(t.numer.iter_coeff("j"), 0);
  EXPECT_EQ(enumerate(s, {{"N", 6}}).size(), 21u);
}

}  // namespace
}  // namespace paqc
