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

// Canonical AXL pretty-printer. parse(print(p)) is structurally equal to p.

#include <sstream>
#include <string>

#include "paqc/axl/ast.hpp"

namespace paqc::axl {

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul: return 2;
    case Expr::Op::Neg: return 3;
    default: return 4;
  }
}

inline void print_expr(std::ostream& os, const Expr& e);

inline void print_operand(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    os << "(";
    print_expr(os, e);
    os << ")";
  } else {
    print_expr(os, e);
  }
}

inline void print_expr(std::ostream& os, const Expr& e) {
  switch (e.op) {
    case Expr::Op::Int: os << e.value; break;
    case Expr::Op::Name: os << e.name; break;
    case Expr::Op::Neg:
      os << "-";
      print_operand(os, e.kids[0], 3);
      break;
    case Expr::Op::Add:
    case Expr::Op::Sub:
      print_operand(os, e.kids[0], 1);
      os << (e.op == Expr::Op::Add ? " + " : " - ");
      print_operand(os, e.kids[1], 2);
      break;
    case Expr::Op::Mul:
      print_operand(os, e.kids[0], 2);
      os << "*";
      print_operand(os, e.kids[1], 3);
      break;
  }
}

inline const char* rel_text(Comparison::Rel r) {
  switch (r) {
    case Comparison::Rel::Lt: return "<";
    case Comparison::Rel::Le: return "<=";
    case Comparison::Rel::Gt: return ">";
    case Comparison::Rel::Ge: return ">=";
    case Comparison::Rel::Eq: return "=";
  }
  return "?";
}

inline void print_circ(std::ostream& os, const CircExpr& c, bool nested) {
  if (c.kind == CircExpr::Kind::GateCall) {
    os << "#" << c.gate << "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) os << ", ";
      print_expr(os, c.args[i]);
    }
    os << ")";
    return;
  }
  if (nested) os << "(";
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    if (i) os << " (+) ";
    print_circ(os, c.children[i], true);
  }
  if (nested) os << ")";
}

inline void print_comp(std::ostream& os, const CompExpr& c, bool nested) {
  if (c.is_leaf()) {
    os << c.name;
    return;
  }
  if (nested) os << "(";
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    if (i) os << " (+) ";
    print_comp(os, c.children[i], true);
  }
  if (nested) os << ")";
}

inline void print_names(std::ostream& os, const char* kw, const std::vector<NameDecl>& names) {
  if (names.empty()) return;
  os << kw << " ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ", ";
    os << names[i].name;
  }
  os << ";\n";
}

}  // namespace detail

inline std::string print(const Expr& e) {
  std::ostringstream os;
  detail::print_expr(os, e);
  return os.str();
}

inline std::string print(const CircExpr& c) {
  std::ostringstream os;
  detail::print_circ(os, c, false);
  return os.str();
}

inline std::string print(const CompExpr& c) {
  std::ostringstream os;
  detail::print_comp(os, c, false);
  return os.str();
}

inline std::string print(const SourceProgram& p) {
  std::ostringstream os;
  detail::print_names(os, "param", p.params);
  detail::print_names(os, "statement", p.declared_statements);
  for (const auto& s : p.statements) {
    os << s.name << " := { ";
    for (std::size_t i = 0; i < s.domain.iterators.size(); ++i) {
      if (i) os << ", ";
      os << s.domain.iterators[i];
    }
    os << " : ";
    for (std::size_t i = 0; i < s.domain.constraints.size(); ++i) {
      const auto& c = s.domain.constraints[i];
      if (i) os << ", ";
      detail::print_expr(os, c.lhs);
      os << " " << detail::rel_text(c.rel) << " ";
      detail::print_expr(os, c.rhs);
    }
    os << " ( " << print(s.body) << " ) };\n";
  }
  for (const auto& d : p.directives) {
    os << "codegen { " << print(d.composition) << " }";
    if (!d.bindings.empty()) {
      os << " with { ";
      for (std::size_t i = 0; i < d.bindings.size(); ++i) {
        if (i) os << ", ";
        os << d.bindings[i].first << "=" << d.bindings[i].second;
      }
      os << " }";
    }
    if (!d.transform.empty()) os << " apply { " << d.transform << " }";
    os << ";\n";
  }
  return os.str();
}

}  // namespace paqc::axl
