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

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "paqc/affine.hpp"
#include "paqc/error.hpp"

namespace paqc::axl {

enum class Tok {
  KwParam,
  KwStatement,
  KwCodegen,
  KwWith,
  KwApply,
  Ident,
  Int,
  Assign,   // :=
  Compose,  // (+)
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Eq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Hash,
  End,
};

inline const char* to_string(Tok t) {
  switch (t) {
    case Tok::KwParam: return "'param'";
    case Tok::KwStatement: return "'statement'";
    case Tok::KwCodegen: return "'codegen'";
    case Tok::KwWith: return "'with'";
    case Tok::KwApply: return "'apply'";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Assign: return "':='";
    case Tok::Compose: return "'(+)'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Eq: return "'='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Hash: return "'#'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Int value = 0;
  SourcePos pos;
};

/// Splits AXL text into tokens. `//` comments run to end of line.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), 0, {line, col}});
    advance(len);
  };
  while (i < text.size()) {
    const char c = text[i];
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '/' && next == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "param") kind = Tok::KwParam;
      else if (word == "statement") kind = Tok::KwStatement;
      else if (word == "codegen") kind = Tok::KwCodegen;
      else if (word == "with") kind = Tok::KwWith;
      else if (word == "apply") kind = Tok::KwApply;
      push(kind, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      Int v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        v = v * 10 + (text[j] - '0');
        ++j;
      }
      SourcePos pos{line, col};
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), v, pos});
      advance(j - i);
    } else if (c == ':' && next == '=') {
      push(Tok::Assign, 2);
    } else if (c == '(' && next == '+' && i + 2 < text.size() && text[i + 2] == ')') {
      push(Tok::Compose, 3);
    } else if (c == '<' && next == '=') {
      push(Tok::Le, 2);
    } else if (c == '>' && next == '=') {
      push(Tok::Ge, 2);
    } else if (c == '=' && next == '=') {
      push(Tok::Eq, 2);
    } else {
      Tok kind;
      switch (c) {
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        case ':': kind = Tok::Colon; break;
        case '=': kind = Tok::Eq; break;
        case '<': kind = Tok::Lt; break;
        case '>': kind = Tok::Gt; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '#': kind = Tok::Hash; break;
        default: {
          std::string shown = std::isprint(static_cast<unsigned char>(c))
                                  ? std::string(1, c)
                                  : "\\x" + std::to_string(static_cast<unsigned char>(c));
          throw CompileError(CompileErrorKind::Lexical, {line, col},
                             "illegal character '" + shown + "'");
        }
      }
      push(kind, 1);
    }
  }
  out.push_back({Tok::End, "", 0, {line, col}});
  return out;
}

}  // namespace paqc::axl
