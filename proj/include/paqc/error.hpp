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

#include <stdexcept>
#include <string>

namespace paqc {

struct SourcePos {
  int line = 0;
  int column = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Base class for every error raised by the toolchain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CompileErrorKind {
  Lexical,
  Syntax,
  UnknownGate,
  Arity,
  UnboundParameter,
  UnboundIterator,
  NonAffine,
  Duplicate,
  UnknownName,
  UnknownTransform,
};

inline const char* to_string(CompileErrorKind kind) {
  switch (kind) {
    case CompileErrorKind::Lexical: return "lexical error";
    case CompileErrorKind::Syntax: return "syntax error";
    case CompileErrorKind::UnknownGate: return "unknown gate";
    case CompileErrorKind::Arity: return "arity mismatch";
    case CompileErrorKind::UnboundParameter: return "unbound parameter";
    case CompileErrorKind::UnboundIterator: return "unbound iterator";
    case CompileErrorKind::NonAffine: return "non-affine expression";
    case CompileErrorKind::Duplicate: return "duplicate declaration";
    case CompileErrorKind::UnknownName: return "undeclared name";
    case CompileErrorKind::UnknownTransform: return "unknown transform";
  }
  return "error";
}

/// Front-end diagnostic carrying a source position.
class CompileError : public Error {
 public:
  CompileError(CompileErrorKind kind, SourcePos pos, const std::string& msg)
      : Error(pos.str() + ": " + to_string(kind) + ": " + msg),
        kind_(kind),
        pos_(pos) {}

  CompileErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  CompileErrorKind kind_;
  SourcePos pos_;
};

class MissingParameterError : public Error {
 public:
  explicit MissingParameterError(const std::string& name)
      : Error("missing binding for parameter '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnboundedDomainError : public Error {
 public:
  using Error::Error;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

class CodegenError : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace paqc
