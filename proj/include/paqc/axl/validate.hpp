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

// Semantic checks and resolution of a parsed AXL program: names are resolved,
// gate calls checked against the catalog, and every index expression and
// domain constraint lowered to an affine form.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "paqc/affine.hpp"
#include "paqc/axl/ast.hpp"
#include "paqc/gates.hpp"
#include "paqc/transform_kind.hpp"

namespace paqc::axl {

struct GateCall {
  GateSignature gate;
  std::vector<AffineExpr> args;
  SourcePos pos;
};

/// Resolved statement body: a gate call or an ordered time composition.
struct Body {
  bool is_gate = true;
  GateCall call;
  std::vector<Body> children;

  /// Gate calls in textual order.
  std::vector<const GateCall*> gates() const {
    std::vector<const GateCall*> out;
    collect(out);
    return out;
  }

 private:
  void collect(std::vector<const GateCall*>& out) const {
    if (is_gate) {
      out.push_back(&call);
    } else {
      for (const auto& c : children) c.collect(out);
    }
  }
};

struct Statement {
  std::string name;
  IntegerSet domain;
  Body body;
  SourcePos pos;
};

struct Directive {
  CompExpr composition;
  ParamBinding binding;
  TransformKind transform = TransformKind::Base;
  SourcePos pos;
};

struct ResolvedProgram {
  std::vector<std::string> params;
  std::vector<Statement> statements;
  std::vector<Directive> directives;

  const Statement* find(const std::string& name) const {
    for (const auto& s : statements) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

namespace detail {

struct Scope {
  const std::vector<std::string>* iterators = nullptr;
  const std::set<std::string>* params = nullptr;
  std::string owner;
};

inline AffineExpr lower(const Expr& e, const Scope& scope) {
  switch (e.op) {
    case Expr::Op::Int: return AffineExpr(e.value);
    case Expr::Op::Name: {
      const auto& its = *scope.iterators;
      if (std::find(its.begin(), its.end(), e.name) != its.end()) {
        return AffineExpr::iterator(e.name);
      }
      if (scope.params->count(e.name)) return AffineExpr::parameter(e.name);
      throw CompileError(CompileErrorKind::UnboundIterator, e.pos,
                         "'" + e.name + "' is neither an iterator of " + scope.owner +
                             " nor a declared parameter");
    }
    case Expr::Op::Neg: return -lower(e.kids[0], scope);
    case Expr::Op::Add: return lower(e.kids[0], scope) + lower(e.kids[1], scope);
    case Expr::Op::Sub: return lower(e.kids[0], scope) - lower(e.kids[1], scope);
    case Expr::Op::Mul: {
      AffineExpr a = lower(e.kids[0], scope);
      AffineExpr b = lower(e.kids[1], scope);
      if (a.is_constant()) return b * a.constant;
      if (b.is_constant()) return a * b.constant;
      throw CompileError(CompileErrorKind::NonAffine, e.pos,
                         "product of two non-constant terms");
    }
  }
  return {};
}

inline Constraint lower(const Comparison& c, const Scope& scope) {
  AffineExpr l = lower(c.lhs, scope);
  AffineExpr r = lower(c.rhs, scope);
  switch (c.rel) {
    case Comparison::Rel::Lt: return Constraint::ge(r - 1, l);
    case Comparison::Rel::Le: return Constraint::ge(r, l);
    case Comparison::Rel::Gt: return Constraint::ge(l - 1, r);
    case Comparison::Rel::Ge: return Constraint::ge(l, r);
    case Comparison::Rel::Eq: return Constraint::eq(l, r);
  }
  return {};
}

inline Body lower(const CircExpr& c, const Scope& scope, const GateCatalog& catalog) {
  Body b;
  if (c.kind == CircExpr::Kind::TimeCompose) {
    b.is_gate = false;
    for (const auto& child : c.children) b.children.push_back(lower(child, scope, catalog));
    return b;
  }
  const GateSignature* sig = catalog.find(c.gate);
  if (!sig) {
    throw CompileError(CompileErrorKind::UnknownGate, c.pos, "'" + c.gate + "'");
  }
  if (sig->arity() != c.args.size()) {
    throw CompileError(CompileErrorKind::Arity, c.pos,
                       sig->name + " takes " + std::to_string(sig->arity()) +
                           " arguments, got " + std::to_string(c.args.size()));
  }
  b.call.gate = *sig;
  b.call.pos = c.pos;
  for (const auto& a : c.args) b.call.args.push_back(lower(a, scope));
  return b;
}

inline void collect_params(const AffineExpr& e, std::set<std::string>& out) {
  for (const auto& [p, c] : e.params) out.insert(p);
}

inline void collect_params(const Body& b, std::set<std::string>& out) {
  if (b.is_gate) {
    for (const auto& a : b.call.args) collect_params(a, out);
  } else {
    for (const auto& c : b.children) collect_params(c, out);
  }
}

inline void collect_leaves(const CompExpr& c, std::vector<const CompExpr*>& out) {
  if (c.is_leaf()) {
    out.push_back(&c);
  } else {
    for (const auto& k : c.children) collect_leaves(k, out);
  }
}

}  // namespace detail

/// Resolves `source`. `overrides` are merged into every directive binding
/// (overrides win), which is how command-line parameters are applied.
inline ResolvedProgram validate(const SourceProgram& source,
                                const GateCatalog& catalog = GateCatalog::standard(),
                                const ParamBinding& overrides = {}) {
  ResolvedProgram out;
  std::set<std::string> params;
  for (const auto& p : source.params) {
    if (!params.insert(p.name).second) {
      throw CompileError(CompileErrorKind::Duplicate, p.pos, "parameter '" + p.name + "'");
    }
    out.params.push_back(p.name);
  }
  std::set<std::string> declared;
  for (const auto& s : source.declared_statements) {
    if (params.count(s.name) || !declared.insert(s.name).second) {
      throw CompileError(CompileErrorKind::Duplicate, s.pos, "statement '" + s.name + "'");
    }
  }
  std::set<std::string> defined;
  for (const auto& s : source.statements) {
    if (!declared.count(s.name)) {
      throw CompileError(CompileErrorKind::UnknownName, s.pos,
                         "statement '" + s.name + "' was not declared");
    }
    if (!defined.insert(s.name).second) {
      throw CompileError(CompileErrorKind::Duplicate, s.pos,
                         "statement '" + s.name + "' defined twice");
    }
    std::set<std::string> seen;
    for (const auto& it : s.domain.iterators) {
      if (params.count(it) || !seen.insert(it).second) {
        throw CompileError(CompileErrorKind::Duplicate, s.domain.pos,
                           "iterator '" + it + "' of " + s.name);
      }
    }
    detail::Scope scope{&s.domain.iterators, &params, s.name};
    Statement st;
    st.name = s.name;
    st.pos = s.pos;
    st.domain.iterators = s.domain.iterators;
    for (const auto& c : s.domain.constraints) {
      st.domain.constraints.push_back(detail::lower(c, scope));
    }
    st.body = detail::lower(s.body, scope, catalog);
    out.statements.push_back(std::move(st));
  }
  for (const auto& [name, value] : overrides) {
    if (!params.count(name)) {
      throw CompileError(CompileErrorKind::UnknownName, {},
                         "parameter '" + name + "' is not declared");
    }
    if (value < 0) {
      throw CompileError(CompileErrorKind::UnboundParameter, {},
                         "parameter '" + name + "' must be non-negative");
    }
  }
  for (const auto& d : source.directives) {
    Directive dir;
    dir.composition = d.composition;
    dir.pos = d.pos;
    if (d.transform.empty()) {
      dir.transform = TransformKind::Base;
    } else if (auto t = parse_transform(d.transform)) {
      dir.transform = *t;
    } else {
      throw CompileError(CompileErrorKind::UnknownTransform, d.pos, "'" + d.transform + "'");
    }
    for (const auto& [name, value] : d.bindings) {
      if (!params.count(name)) {
        throw CompileError(CompileErrorKind::UnknownName, d.pos,
                           "parameter '" + name + "' is not declared");
      }
      if (dir.binding.count(name)) {
        throw CompileError(CompileErrorKind::Duplicate, d.pos, "binding for '" + name + "'");
      }
      dir.binding[name] = value;
    }
    for (const auto& [name, value] : overrides) dir.binding[name] = value;
    std::vector<const CompExpr*> leaves;
    detail::collect_leaves(d.composition, leaves);
    std::set<std::string> needed;
    for (const CompExpr* leaf : leaves) {
      const Statement* st = out.find(leaf->name);
      if (!st) {
        throw CompileError(CompileErrorKind::UnknownName, leaf->pos,
                           "statement '" + leaf->name + "' is not defined");
      }
      for (const auto& c : st->domain.constraints) detail::collect_params(c.expr, needed);
      detail::collect_params(st->body, needed);
    }
    for (const auto& p : needed) {
      if (!dir.binding.count(p)) {
        throw CompileError(CompileErrorKind::UnboundParameter, d.pos,
                           "parameter '" + p + "' has no value in this directive");
      }
    }
    out.directives.push_back(std::move(dir));
  }
  return out;
}

}  // namespace paqc::axl
