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

// Affine expressions, integer sets and affine maps over named iterators and
// symbolic parameters. Everything here is exact integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paqc/error.hpp"

namespace paqc {

using Int = std::int64_t;
using Point = std::vector<Int>;
using ParamBinding = std::map<std::string, Int>;

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

/// c0 + sum(a_k * iter_k) + sum(b_p * param_p)
class AffineExpr {
 public:
  std::map<std::string, Int> iters;
  std::map<std::string, Int> params;
  Int constant = 0;

  AffineExpr() = default;
  explicit AffineExpr(Int c) : constant(c) {}

  static AffineExpr iterator(const std::string& name, Int coeff = 1) {
    AffineExpr e;
    if (coeff != 0) e.iters[name] = coeff;
    return e;
  }
  static AffineExpr parameter(const std::string& name, Int coeff = 1) {
    AffineExpr e;
    if (coeff != 0) e.params[name] = coeff;
    return e;
  }

  Int iter_coeff(const std::string& name) const {
    auto it = iters.find(name);
    return it == iters.end() ? 0 : it->second;
  }
  Int param_coeff(const std::string& name) const {
    auto it = params.find(name);
    return it == params.end() ? 0 : it->second;
  }

  /// True when no iterator and no parameter appears.
  bool is_constant() const { return iters.empty() && params.empty(); }
  bool has_iterators() const { return !iters.empty(); }

  AffineExpr& operator+=(const AffineExpr& o) {
    for (const auto& [k, v] : o.iters) add_to(iters, k, v);
    for (const auto& [k, v] : o.params) add_to(params, k, v);
    constant += o.constant;
    return *this;
  }
  AffineExpr& operator-=(const AffineExpr& o) { return *this += o * -1; }
  AffineExpr& operator*=(Int s) {
    if (s == 0) return *this = AffineExpr();
    for (auto& [k, v] : iters) v *= s;
    for (auto& [k, v] : params) v *= s;
    constant *= s;
    return *this;
  }
  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, Int s) { return a *= s; }
  friend AffineExpr operator*(Int s, AffineExpr a) { return a *= s; }
  friend AffineExpr operator+(AffineExpr a, Int c) {
    a.constant += c;
    return a;
  }
  friend AffineExpr operator-(AffineExpr a, Int c) {
    a.constant -= c;
    return a;
  }
  AffineExpr operator-() const { return *this * -1; }

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
  friend auto operator<=>(const AffineExpr&, const AffineExpr&) = default;

  /// Replaces iterator `name` by `value`.
  AffineExpr substitute(const std::string& name, const AffineExpr& value) const {
    Int c = iter_coeff(name);
    if (c == 0) return *this;
    AffineExpr r = *this;
    r.iters.erase(name);
    return r + value * c;
  }

  /// Replaces every bound parameter by its value; unbound ones stay symbolic.
  AffineExpr bind(const ParamBinding& binding) const {
    AffineExpr r;
    r.iters = iters;
    r.constant = constant;
    for (const auto& [p, c] : params) {
      auto it = binding.find(p);
      if (it == binding.end()) {
        r.params[p] = c;
      } else {
        r.constant += c * it->second;
      }
    }
    return r;
  }

  Int content() const {
    Int g = 0;
    for (const auto& [k, v] : iters) g = std::gcd(g, v);
    for (const auto& [k, v] : params) g = std::gcd(g, v);
    return g;
  }

  /// C-like rendering: "t + i + 3", "-c0 + 5", "2*N - i".
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](Int c, const std::string& name) {
      if (c == 0) return;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      Int a = c < 0 ? -c : c;
      if (!name.empty()) {
        if (a != 1) os << a << "*";
        os << name;
      } else {
        os << a;
      }
      first = false;
    };
    for (const auto& [k, v] : iters) term(v, k);
    for (const auto& [k, v] : params) term(v, k);
    term(constant, "");
    if (first) os << "0";
    return os.str();
  }

 private:
  static void add_to(std::map<std::string, Int>& m, const std::string& k, Int v) {
    Int& slot = m[k];
    slot += v;
    if (slot == 0) m.erase(k);
  }
};

inline std::ostream& operator<<(std::ostream& os, const AffineExpr& e) {
  return os << e.str();
}

/// Evaluates `expr` at `point` (aligned with `iterators`) under `binding`.
inline Int eval(const AffineExpr& expr, std::span<const std::string> iterators,
                std::span<const Int> point, const ParamBinding& binding) {
  Int v = expr.constant;
  for (const auto& [name, c] : expr.iters) {
    auto it = std::find(iterators.begin(), iterators.end(), name);
    if (it == iterators.end()) {
      throw Error("iterator '" + name + "' is not part of the evaluation point");
    }
    auto idx = static_cast<std::size_t>(it - iterators.begin());
    if (idx >= point.size()) throw Error("evaluation point is too short");
    v += c * point[idx];
  }
  for (const auto& [name, c] : expr.params) {
    auto it = binding.find(name);
    if (it == binding.end()) throw MissingParameterError(name);
    v += c * it->second;
  }
  return v;
}

/// `expr >= 0` or `expr == 0`.
struct Constraint {
  enum class Kind { GreaterEq, Equal };
  AffineExpr expr;
  Kind kind = Kind::GreaterEq;

  static Constraint ge(AffineExpr lhs, const AffineExpr& rhs) {
    return {std::move(lhs) - rhs, Kind::GreaterEq};
  }
  static Constraint eq(AffineExpr lhs, const AffineExpr& rhs) {
    return {std::move(lhs) - rhs, Kind::Equal};
  }

  bool holds(std::span<const std::string> iterators, std::span<const Int> point,
             const ParamBinding& binding) const {
    Int v = eval(expr, iterators, point, binding);
    return kind == Kind::Equal ? v == 0 : v >= 0;
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint&, const Constraint&) = default;

  std::string str() const {
    return expr.str() + (kind == Kind::Equal ? " = 0" : " >= 0");
  }
};

/// One side of an iterator bound: iterator >= ceil(numer/div) (lower) or
/// iterator <= floor(numer/div) (upper), div > 0.
struct BoundTerm {
  AffineExpr numer;
  Int div = 1;

  friend bool operator==(const BoundTerm&, const BoundTerm&) = default;
  friend auto operator<=>(const BoundTerm&, const BoundTerm&) = default;
};

struct IteratorBounds {
  std::vector<BoundTerm> lower;
  std::vector<BoundTerm> upper;
};

/// Conjunction of affine constraints over ordered iterators.
struct IntegerSet {
  std::vector<std::string> iterators;
  std::vector<Constraint> constraints;

  bool contains(std::span<const Int> point, const ParamBinding& binding) const {
    for (const auto& c : constraints) {
      if (!c.holds(iterators, point, binding)) return false;
    }
    return true;
  }
};

namespace detail {

inline AffineExpr normalized(const AffineExpr& e) {
  Int g = e.content();
  if (g <= 1) return e;
  AffineExpr r = e;
  for (auto& [k, v] : r.iters) v /= g;
  for (auto& [k, v] : r.params) v /= g;
  r.constant = floor_div(r.constant, g);
  return r;
}

}  // namespace detail

/// Fourier-Motzkin bound extraction. `order` lists the iterators from outermost
/// to innermost; the bounds of order[k] only mention order[0..k-1] and
/// parameters. Integer projections are over-approximated by the rational
/// shadow, so a scan must still filter points against the original set.
inline std::vector<IteratorBounds> extract_bounds(
    const IntegerSet& set, const std::vector<std::string>& order) {
  std::set<AffineExpr> ineqs;
  for (const auto& c : set.constraints) {
    ineqs.insert(detail::normalized(c.expr));
    if (c.kind == Constraint::Kind::Equal) ineqs.insert(detail::normalized(-c.expr));
  }
  std::vector<IteratorBounds> bounds(order.size());
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::string& x = order[k];
    std::vector<AffineExpr> lowers, uppers;
    std::set<AffineExpr> rest;
    for (const auto& e : ineqs) {
      Int a = e.iter_coeff(x);
      if (a > 0) {
        lowers.push_back(e);
        AffineExpr numer = -e.substitute(x, AffineExpr());
        bounds[k].lower.push_back({numer, a});
      } else if (a < 0) {
        uppers.push_back(e);
        AffineExpr numer = e.substitute(x, AffineExpr());
        bounds[k].upper.push_back({numer, -a});
      } else {
        rest.insert(e);
      }
    }
    for (const auto& l : lowers) {
      for (const auto& u : uppers) {
        Int a = l.iter_coeff(x);
        Int b = -u.iter_coeff(x);
        AffineExpr combo = l * b + u * a;
        if (combo.is_constant()) continue;  // tautology or contradiction
        rest.insert(detail::normalized(combo));
      }
    }
    std::sort(bounds[k].lower.begin(), bounds[k].lower.end());
    std::sort(bounds[k].upper.begin(), bounds[k].upper.end());
    ineqs = std::move(rest);
  }
  return bounds;
}

/// All points of `set` under `binding`, in lexicographic order.
inline std::vector<Point> enumerate(const IntegerSet& set, const ParamBinding& binding) {
  const auto bounds = extract_bounds(set, set.iterators);
  const std::size_t n = set.iterators.size();
  std::vector<Point> out;
  if (n == 0) {
    if (set.contains({}, binding)) out.push_back({});
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (bounds[k].lower.empty() || bounds[k].upper.empty()) {
      throw UnboundedDomainError("iterator '" + set.iterators[k] +
                                 "' has no finite bound");
    }
  }
  Point point(n, 0);
  auto bound_value = [&](const BoundTerm& t, bool lower, std::size_t depth) {
    Int v = eval(t.numer, std::span(set.iterators).first(depth),
                 std::span<const Int>(point).first(depth), binding);
    return lower ? ceil_div(v, t.div) : floor_div(v, t.div);
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      if (set.contains(point, binding)) out.push_back(point);
      return;
    }
    Int lo = bound_value(bounds[depth].lower[0], true, depth);
    for (const auto& t : bounds[depth].lower) lo = std::max(lo, bound_value(t, true, depth));
    Int hi = bound_value(bounds[depth].upper[0], false, depth);
    for (const auto& t : bounds[depth].upper) hi = std::min(hi, bound_value(t, false, depth));
    for (Int v = lo; v <= hi; ++v) {
      point[depth] = v;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// Strict lexicographic order; the shorter tuple is padded with zeros.
inline bool lex_less(std::span<const Int> a, std::span<const Int> b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Int x = i < a.size() ? a[i] : 0;
    Int y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y;
  }
  return false;
}

inline bool lex_less(const Point& a, const Point& b) {
  return lex_less(std::span<const Int>(a), std::span<const Int>(b));
}

/// Multi-output affine function of the domain iterators.
struct AffineMap {
  std::vector<std::string> domain_iterators;
  std::vector<AffineExpr> outputs;

  static AffineMap identity(const std::vector<std::string>& iterators) {
    AffineMap m{iterators, {}};
    for (const auto& it : iterators) m.outputs.push_back(AffineExpr::iterator(it));
    return m;
  }

  std::size_t size() const { return outputs.size(); }

  /// An output without iterator or parameter terms.
  bool is_scalar_dim(std::size_t d) const { return outputs.at(d).is_constant(); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

  std::string str() const {
    std::string s = "{ [";
    for (std::size_t i = 0; i < domain_iterators.size(); ++i) {
      if (i) s += ",";
      s += domain_iterators[i];
    }
    s += "] -> [";
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (i) s += ",";
      s += outputs[i].str();
    }
    return s + "] }";
  }
};

inline Point apply_map(const AffineMap& map, std::span<const Int> point,
                       const ParamBinding& binding) {
  Point out;
  out.reserve(map.outputs.size());
  for (const auto& e : map.outputs) {
    out.push_back(eval(e, map.domain_iterators, point, binding));
  }
  return out;
}

enum class ComposeMode { Prefix, Suffix };

/// Time composition: the k-th schedule gets scalar dimension k, either as a
/// leading (Prefix) or trailing (Suffix) output. A single schedule is
/// returned unchanged.
inline std::vector<AffineMap> compose_time(std::vector<AffineMap> schedules,
                                           ComposeMode mode) {
  if (schedules.size() < 2) return schedules;
  for (std::size_t k = 0; k < schedules.size(); ++k) {
    auto& outs = schedules[k].outputs;
    AffineExpr scalar(static_cast<Int>(k));
    if (mode == ComposeMode::Prefix) {
      outs.insert(outs.begin(), scalar);
    } else {
      outs.push_back(scalar);
    }
  }
  return schedules;
}

}  // namespace paqc
