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

// Unresolved syntax tree produced by the parser. Source positions are carried
// for diagnostics but ignored by the structural equality operators.

#include <string>
#include <utility>
#include <vector>

#include "paqc/affine.hpp"
#include "paqc/error.hpp"

namespace paqc::axl {

struct Expr {
  enum class Op { Int, Name, Add, Sub, Mul, Neg };
  Op op = Op::Int;
  Int value = 0;
  std::string name;
  std::vector<Expr> kids;
  SourcePos pos;

  static Expr integer(Int v, SourcePos p = {}) { return {Op::Int, v, {}, {}, p}; }
  static Expr ident(std::string n, SourcePos p = {}) {
    return {Op::Name, 0, std::move(n), {}, p};
  }
  static Expr binary(Op op, Expr a, Expr b, SourcePos p = {}) {
    Expr e{op, 0, {}, {}, p};
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.op == b.op && a.value == b.value && a.name == b.name && a.kids == b.kids;
  }
};

struct Comparison {
  enum class Rel { Lt, Le, Gt, Ge, Eq };
  Expr lhs;
  Rel rel = Rel::Le;
  Expr rhs;
  SourcePos pos;

  friend bool operator==(const Comparison& a, const Comparison& b) {
    return a.lhs == b.lhs && a.rel == b.rel && a.rhs == b.rhs;
  }
};

struct DomainSpec {
  std::vector<std::string> iterators;
  std::vector<Comparison> constraints;  // conjunction; chains already expanded
  SourcePos pos;

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    return a.iterators == b.iterators && a.constraints == b.constraints;
  }
};

/// A gate call `#G(e1,...,ek)` or a time composition of >= 2 children.
struct CircExpr {
  enum class Kind { GateCall, TimeCompose };
  Kind kind = Kind::GateCall;
  std::string gate;
  std::vector<Expr> args;
  std::vector<CircExpr> children;
  SourcePos pos;

  friend bool operator==(const CircExpr& a, const CircExpr& b) {
    return a.kind == b.kind && a.gate == b.gate && a.args == b.args &&
           a.children == b.children;
  }
};

struct StatementDecl {
  std::string name;
  DomainSpec domain;
  CircExpr body;
  SourcePos pos;

  friend bool operator==(const StatementDecl& a, const StatementDecl& b) {
    return a.name == b.name && a.domain == b.domain && a.body == b.body;
  }
};

/// Statement-level composition tree: a leaf names a statement.
struct CompExpr {
  std::string name;
  std::vector<CompExpr> children;
  SourcePos pos;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const CompExpr& a, const CompExpr& b) {
    return a.name == b.name && a.children == b.children;
  }
};

struct CodegenDirective {
  CompExpr composition;
  std::vector<std::pair<std::string, Int>> bindings;
  std::string transform;  // empty: base
  SourcePos pos;

  friend bool operator==(const CodegenDirective& a, const CodegenDirective& b) {
    return a.composition == b.composition && a.bindings == b.bindings &&
           a.transform == b.transform;
  }
};

struct NameDecl {
  std::string name;
  SourcePos pos;
  friend bool operator==(const NameDecl& a, const NameDecl& b) { return a.name == b.name; }
};

struct SourceProgram {
  std::vector<NameDecl> params;
  std::vector<NameDecl> declared_statements;
  std::vector<StatementDecl> statements;
  std::vector<CodegenDirective> directives;

  friend bool operator==(const SourceProgram&, const SourceProgram&) = default;
};

}  // namespace paqc::axl
