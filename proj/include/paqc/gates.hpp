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

// Gate catalog: per-argument access modes and register spaces. New gates are
// data, so the catalog can be extended from a line-oriented text file:
//
//   # name  arity  mode:space ...   [qasm-mnemonic]
//   CCZ     3      r:q r:q rw:q      ccz
//
// Modes are r, rw, w; spaces are q (quantum) and c (classical).

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paqc/error.hpp"

namespace paqc {

enum class AccessMode { Read, ReadWrite, Write };
enum class Space { Quantum, Classical };

inline bool writes(AccessMode m) { return m != AccessMode::Read; }

inline const char* to_string(AccessMode m) {
  switch (m) {
    case AccessMode::Read: return "r";
    case AccessMode::ReadWrite: return "rw";
    case AccessMode::Write: return "w";
  }
  return "?";
}

inline const char* register_name(Space s) { return s == Space::Quantum ? "q" : "c"; }

struct GateSignature {
  std::string name;
  std::vector<AccessMode> modes;
  std::vector<Space> spaces;
  std::string qasm;  // empty: no OpenQASM 2.0 mnemonic

  std::size_t arity() const { return modes.size(); }
  std::size_t quantum_arity() const {
    return static_cast<std::size_t>(std::count(spaces.begin(), spaces.end(), Space::Quantum));
  }
  friend bool operator==(const GateSignature&, const GateSignature&) = default;
};

class GateCatalog {
 public:
  /// The built-in gates: X, Y, Z, H, Measure, CNOT, CY, CZ, Swap, Toffoli.
  static GateCatalog standard() {
    using M = AccessMode;
    using S = Space;
    GateCatalog c;
    for (const char* n : {"X", "Y", "Z", "H"}) {
      std::string lower(1, static_cast<char>(std::tolower(n[0])));
      c.add({n, {M::ReadWrite}, {S::Quantum}, lower});
    }
    c.add({"Measure", {M::ReadWrite, M::Write}, {S::Quantum, S::Classical}, "measure"});
    c.add({"CNOT", {M::Read, M::ReadWrite}, {S::Quantum, S::Quantum}, "cx"});
    c.add({"CY", {M::Read, M::ReadWrite}, {S::Quantum, S::Quantum}, "cy"});
    c.add({"CZ", {M::Read, M::ReadWrite}, {S::Quantum, S::Quantum}, "cz"});
    c.add({"Swap", {M::ReadWrite, M::ReadWrite}, {S::Quantum, S::Quantum}, "swap"});
    c.add({"Toffoli", {M::Read, M::Read, M::ReadWrite},
           {S::Quantum, S::Quantum, S::Quantum}, "ccx"});
    c.alias("NOT", "X");
    c.alias("CX", "CNOT");
    c.alias("CCNOT", "Toffoli");
    c.alias("CCX", "Toffoli");
    c.alias("SWAP", "Swap");
    c.alias("MEASURE", "Measure");
    c.alias("TOFFOLI", "Toffoli");
    return c;
  }

  void add(GateSignature sig) {
    if (sig.modes.size() != sig.spaces.size() || sig.modes.empty()) {
      throw Error("gate '" + sig.name + "' needs one mode and space per argument");
    }
    aliases_[sig.name] = sig.name;
    gates_[sig.name] = std::move(sig);
  }

  void alias(const std::string& alias, const std::string& canonical) {
    aliases_[alias] = canonical;
  }

  bool contains(const std::string& name) const { return aliases_.count(name) != 0; }

  /// Canonical signature for `name` (aliases resolved).
  const GateSignature& signature(const std::string& name) const {
    auto it = aliases_.find(name);
    if (it == aliases_.end()) throw Error("unknown gate '" + name + "'");
    return gates_.at(it->second);
  }

  const GateSignature* find(const std::string& name) const {
    auto it = aliases_.find(name);
    return it == aliases_.end() ? nullptr : &gates_.at(it->second);
  }

  /// Signature by OpenQASM mnemonic, used by the QASM reader.
  const GateSignature* find_qasm(const std::string& mnemonic) const {
    for (const auto& [n, g] : gates_) {
      if (!g.qasm.empty() && g.qasm == mnemonic) return &g;
    }
    return nullptr;
  }

  /// Reads extension entries; throws on malformed lines.
  void load_extensions(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string name;
      if (!(ls >> name)) continue;
      std::size_t arity = 0;
      if (!(ls >> arity) || arity == 0) {
        throw Error("gate catalog line " + std::to_string(lineno) + ": bad arity");
      }
      GateSignature sig{name, {}, {}, {}};
      for (std::size_t i = 0; i < arity; ++i) {
        std::string tok;
        if (!(ls >> tok)) {
          throw Error("gate catalog line " + std::to_string(lineno) +
                      ": expected " + std::to_string(arity) + " mode:space entries");
        }
        auto colon = tok.find(':');
        std::string mode = tok.substr(0, colon);
        std::string space = colon == std::string::npos ? "q" : tok.substr(colon + 1);
        if (mode == "r") {
          sig.modes.push_back(AccessMode::Read);
        } else if (mode == "rw") {
          sig.modes.push_back(AccessMode::ReadWrite);
        } else if (mode == "w") {
          sig.modes.push_back(AccessMode::Write);
        } else {
          throw Error("gate catalog line " + std::to_string(lineno) + ": bad mode '" + mode + "'");
        }
        if (space == "q") {
          sig.spaces.push_back(Space::Quantum);
        } else if (space == "c") {
          sig.spaces.push_back(Space::Classical);
        } else {
          throw Error("gate catalog line " + std::to_string(lineno) + ": bad space '" + space + "'");
        }
      }
      ls >> sig.qasm;
      add(std::move(sig));
    }
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, g] : gates_) out.push_back(n);
    return out;
  }

 private:
  std::map<std::string, GateSignature> gates_;
  std::map<std::string, std::string> aliases_;
};

}  // namespace paqc
