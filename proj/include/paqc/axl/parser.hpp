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

// Recursive-descent parser for AXL.
//
//   program    := item*
//   item       := 'param' ident (',' ident)* ';'
//               | 'statement' ident (',' ident)* ';'
//               | ident ':=' '{' ident (',' ident)* ':' chain (',' chain)*
//                     '(' circ [')'] '}' ';'
//               | 'codegen' '{' comp '}' ['with' '{' binding (',' binding)* '}']
//                     ['apply' '{' ident '}'] ';'
//   chain      := expr (relop expr)+          a <= b <= c means a<=b and b<=c
//   circ       := catom ('(+)' catom)*
//   catom      := '#' ident '(' [expr (',' expr)*] ')' | '(' circ ')'
//   comp       := sref ('(+)' sref)*
//   sref       := ident | '(' comp ')'
//   expr       := term (('+'|'-') term)*
//   term       := unary ('*' unary)*
//   unary      := '-' unary | int | ident | '(' expr ')'
//
// The closing parenthesis of a statement body is optional.

#include <string>
#include <string_view>
#include <vector>

#include "paqc/axl/ast.hpp"
#include "paqc/axl/lexer.hpp"

namespace paqc::axl {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceProgram program() {
    SourceProgram p;
    while (!at(Tok::End)) {
      if (at(Tok::KwParam)) {
        next();
        name_list(p.params);
        expect(Tok::Semi, "after parameter list");
      } else if (at(Tok::KwStatement)) {
        next();
        name_list(p.declared_statements);
        expect(Tok::Semi, "after statement list");
      } else if (at(Tok::KwCodegen)) {
        p.directives.push_back(directive());
      } else if (at(Tok::Ident)) {
        p.statements.push_back(definition());
      } else {
        fail("expected 'param', 'statement', 'codegen' or a statement definition");
      }
    }
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  Token next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw CompileError(CompileErrorKind::Syntax, t.pos, what + ", found " + found);
  }
  Token expect(Tok t, const std::string& context) {
    if (!at(t)) fail(std::string("expected ") + to_string(t) + " " + context);
    return next();
  }

  void name_list(std::vector<NameDecl>& out) {
    do {
      Token t = expect(Tok::Ident, "in declaration");
      out.push_back({t.text, t.pos});
    } while (at(Tok::Comma) && (next(), true));
  }

  StatementDecl definition() {
    StatementDecl s;
    Token name = next();
    s.name = name.text;
    s.pos = name.pos;
    expect(Tok::Assign, "after statement name");
    Token brace = expect(Tok::LBrace, "to open the domain");
    s.domain.pos = brace.pos;
    do {
      s.domain.iterators.push_back(expect(Tok::Ident, "in iterator list").text);
    } while (at(Tok::Comma) && (next(), true));
    expect(Tok::Colon, "after iterator list");
    do {
      chain(s.domain.constraints);
    } while (at(Tok::Comma) && (next(), true));
    expect(Tok::LParen, "to open the statement body");
    s.body = circ();
    if (at(Tok::RParen)) next();
    expect(Tok::RBrace, "to close the statement");
    expect(Tok::Semi, "after statement definition");
    return s;
  }

  static bool relop(Tok t) {
    return t == Tok::Lt || t == Tok::Le || t == Tok::Gt || t == Tok::Ge || t == Tok::Eq;
  }

  void chain(std::vector<Comparison>& out) {
    Expr lhs = expr();
    if (!relop(peek().kind)) fail("expected a comparison operator");
    while (relop(peek().kind)) {
      Token op = next();
      Expr rhs = expr();
      Comparison c;
      c.lhs = lhs;
      c.rhs = rhs;
      c.pos = op.pos;
      switch (op.kind) {
        case Tok::Lt: c.rel = Comparison::Rel::Lt; break;
        case Tok::Le: c.rel = Comparison::Rel::Le; break;
        case Tok::Gt: c.rel = Comparison::Rel::Gt; break;
        case Tok::Ge: c.rel = Comparison::Rel::Ge; break;
        default: c.rel = Comparison::Rel::Eq; break;
      }
      out.push_back(std::move(c));
      lhs = std::move(rhs);
    }
  }

  CircExpr circ() {
    CircExpr first = catom();
    if (!at(Tok::Compose)) return first;
    CircExpr c;
    c.kind = CircExpr::Kind::TimeCompose;
    c.pos = first.pos;
    c.children.push_back(std::move(first));
    while (at(Tok::Compose)) {
      next();
      c.children.push_back(catom());
    }
    return c;
  }

  CircExpr catom() {
    if (at(Tok::LParen)) {
      next();
      CircExpr inner = circ();
      expect(Tok::RParen, "to close a parenthesised body");
      return inner;
    }
    Token hash = expect(Tok::Hash, "before a gate name");
    CircExpr g;
    g.kind = CircExpr::Kind::GateCall;
    g.pos = hash.pos;
    g.gate = expect(Tok::Ident, "after '#'").text;
    expect(Tok::LParen, "to open the argument list");
    if (!at(Tok::RParen)) {
      do {
        g.args.push_back(expr());
      } while (at(Tok::Comma) && (next(), true));
    }
    expect(Tok::RParen, "to close the argument list");
    return g;
  }

  CodegenDirective directive() {
    CodegenDirective d;
    d.pos = next().pos;
    expect(Tok::LBrace, "after 'codegen'");
    d.composition = comp();
    expect(Tok::RBrace, "to close the composition");
    if (at(Tok::KwWith)) {
      next();
      expect(Tok::LBrace, "after 'with'");
      if (!at(Tok::RBrace)) {
        do {
          std::string name = expect(Tok::Ident, "in parameter binding").text;
          expect(Tok::Eq, "in parameter binding");
          Int v = expect(Tok::Int, "as parameter value").value;
          d.bindings.emplace_back(name, v);
        } while (at(Tok::Comma) && (next(), true));
      }
      expect(Tok::RBrace, "to close the bindings");
    }
    if (at(Tok::KwApply)) {
      next();
      expect(Tok::LBrace, "after 'apply'");
      d.transform = expect(Tok::Ident, "as transform name").text;
      expect(Tok::RBrace, "to close the transform");
    }
    expect(Tok::Semi, "after codegen directive");
    return d;
  }

  CompExpr comp() {
    CompExpr first = sref();
    if (!at(Tok::Compose)) return first;
    CompExpr c;
    c.pos = first.pos;
    c.children.push_back(std::move(first));
    while (at(Tok::Compose)) {
      next();
      c.children.push_back(sref());
    }
    return c;
  }

  CompExpr sref() {
    if (at(Tok::LParen)) {
      next();
      CompExpr inner = comp();
      expect(Tok::RParen, "to close a parenthesised composition");
      return inner;
    }
    Token t = expect(Tok::Ident, "as statement name");
    return {t.text, {}, t.pos};
  }

  Expr expr() {
    Expr lhs = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token op = next();
      Expr rhs = term();
      lhs = Expr::binary(op.kind == Tok::Plus ? Expr::Op::Add : Expr::Op::Sub, std::move(lhs),
                         std::move(rhs), op.pos);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (at(Tok::Star)) {
      Token op = next();
      Expr rhs = unary();
      lhs = Expr::binary(Expr::Op::Mul, std::move(lhs), std::move(rhs), op.pos);
    }
    return lhs;
  }

  Expr unary() {
    if (at(Tok::Minus)) {
      Token op = next();
      Expr e{Expr::Op::Neg, 0, {}, {}, op.pos};
      e.kids.push_back(unary());
      return e;
    }
    if (at(Tok::Int)) {
      Token t = next();
      return Expr::integer(t.value, t.pos);
    }
    if (at(Tok::Ident)) {
      Token t = next();
      return Expr::ident(t.text, t.pos);
    }
    if (at(Tok::LParen)) {
      next();
      Expr e = expr();
      expect(Tok::RParen, "to close a parenthesised expression");
      return e;
    }
    fail("expected an expression");
  }
};

inline SourceProgram parse(std::string_view text) { return Parser(tokenize(text)).program(); }

}  // namespace paqc::axl
