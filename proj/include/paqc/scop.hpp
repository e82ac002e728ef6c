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

// Program Assembly: a codegen directive is lowered to a Scop, a flat list of
// units, one per gate call in the bodies of the composed statements. Every unit
// carries its iteration domain, its access relations and a global schedule
// built from three parts:
//
//   prefix scalars   position in the directive's statement composition
//   iterator dims    the identity on the domain iterators (zero padded)
//   suffix scalars   position of the gate in the statement body composition
//
// so that `S2 (+) S3` yields <0,i> / <1,i> and `#X(t) (+) #CNOT(t,0)` yields
// <t,0> / <t,1>.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "paqc/affine.hpp"
#include "paqc/axl/validate.hpp"
#include "paqc/gates.hpp"
#include "paqc/transform_kind.hpp"

namespace paqc {

struct AccessRelation {
  std::string statement;
  std::size_t gate_position = 0;  // index of the gate in the body composition
  std::size_t argument = 0;
  AffineMap map;                  // single output: the register index
  AccessMode mode = AccessMode::Read;
  Space space = Space::Quantum;
};

/// One relation per gate argument, in body order.
inline std::vector<AccessRelation> access_relations(const axl::Statement& stmt) {
  std::vector<AccessRelation> out;
  const auto gates = stmt.body.gates();
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const auto& call = *gates[g];
    for (std::size_t a = 0; a < call.args.size(); ++a) {
      out.push_back({stmt.name, g, a, AffineMap{stmt.domain.iterators, {call.args[a]}},
                     call.gate.modes[a], call.gate.spaces[a]});
    }
  }
  return out;
}

/// A gate family: one gate call of a statement body over the statement domain.
struct Unit {
  std::string name;       // S1, or S1_1, S1_2 ... when the body has several gates
  std::string statement;  // statement label (with an occurrence suffix if reused)
  std::size_t gate_position = 0;
  IntegerSet domain;
  GateSignature gate;
  std::vector<AffineExpr> args;
  AffineMap schedule;

  const std::vector<std::string>& iterators() const { return domain.iterators; }
};

struct Scop {
  std::vector<std::string> params;
  std::vector<Unit> units;
  ParamBinding binding;  // the directive's binding
  TransformKind transform = TransformKind::Base;

  std::size_t schedule_depth() const {
    std::size_t d = 0;
    for (const auto& u : units) d = std::max(d, u.schedule.size());
    return d;
  }
  std::size_t max_iterators() const {
    std::size_t d = 0;
    for (const auto& u : units) d = std::max(d, u.domain.iterators.size());
    return d;
  }
};

namespace detail {

inline void scalar_paths(const axl::CompExpr& c, std::vector<Int>& path,
                         std::vector<std::pair<std::string, std::vector<Int>>>& out) {
  if (c.is_leaf()) {
    out.emplace_back(c.name, path);
    return;
  }
  for (std::size_t k = 0; k < c.children.size(); ++k) {
    path.push_back(static_cast<Int>(k));
    scalar_paths(c.children[k], path, out);
    path.pop_back();
  }
}

inline void scalar_paths(const axl::Body& b, std::vector<Int>& path,
                         std::vector<std::pair<const axl::GateCall*, std::vector<Int>>>& out) {
  if (b.is_gate) {
    out.emplace_back(&b.call, path);
    return;
  }
  for (std::size_t k = 0; k < b.children.size(); ++k) {
    path.push_back(static_cast<Int>(k));
    scalar_paths(b.children[k], path, out);
    path.pop_back();
  }
}

}  // namespace detail

/// Assembles `directive` of `program` into a Scop with identity schedules.
inline Scop assemble(const axl::ResolvedProgram& program, const axl::Directive& directive) {
  Scop scop;
  scop.params = program.params;
  scop.binding = directive.binding;
  scop.transform = directive.transform;

  std::vector<std::pair<std::string, std::vector<Int>>> stmts;
  std::vector<Int> path;
  detail::scalar_paths(directive.composition, path, stmts);

  struct Pending {
    Unit unit;
    std::vector<Int> prefix, suffix;
  };
  std::vector<Pending> pending;
  std::map<std::string, int> occurrences;
  for (const auto& [name, prefix] : stmts) {
    const axl::Statement* st = program.find(name);
    if (!st) throw Error("statement '" + name + "' is not defined");
    const int occ = ++occurrences[name];
    const std::string label = occ == 1 ? name : name + "." + std::to_string(occ);
    std::vector<std::pair<const axl::GateCall*, std::vector<Int>>> gates;
    std::vector<Int> p;
    detail::scalar_paths(st->body, p, gates);
    for (std::size_t g = 0; g < gates.size(); ++g) {
      Pending pu;
      pu.unit.statement = label;
      pu.unit.name = gates.size() == 1 ? label : label + "_" + std::to_string(g + 1);
      pu.unit.gate_position = g;
      pu.unit.domain = st->domain;
      pu.unit.gate = gates[g].first->gate;
      pu.unit.args = gates[g].first->args;
      pu.prefix = prefix;
      pu.suffix = gates[g].second;
      pending.push_back(std::move(pu));
    }
  }
  std::size_t max_prefix = 0, max_iters = 0, max_suffix = 0;
  for (const auto& p : pending) {
    max_prefix = std::max(max_prefix, p.prefix.size());
    max_iters = std::max(max_iters, p.unit.domain.iterators.size());
    max_suffix = std::max(max_suffix, p.suffix.size());
  }
  for (auto& p : pending) {
    AffineMap& s = p.unit.schedule;
    s.domain_iterators = p.unit.domain.iterators;
    for (std::size_t k = 0; k < max_prefix; ++k) {
      s.outputs.emplace_back(k < p.prefix.size() ? p.prefix[k] : 0);
    }
    for (std::size_t k = 0; k < max_iters; ++k) {
      s.outputs.push_back(k < s.domain_iterators.size() ? AffineExpr::iterator(s.domain_iterators[k])
                                                        : AffineExpr(0));
    }
    for (std::size_t k = 0; k < max_suffix; ++k) {
      s.outputs.emplace_back(k < p.suffix.size() ? p.suffix[k] : 0);
    }
    if (s.outputs.empty()) s.outputs.emplace_back(0);
    scop.units.push_back(std::move(p.unit));
  }
  return scop;
}

inline Scop assemble(const axl::ResolvedProgram& program, std::size_t directive_index = 0) {
  if (directive_index >= program.directives.size()) {
    throw Error("program has no codegen directive #" + std::to_string(directive_index));
  }
  return assemble(program, program.directives[directive_index]);
}

/// A dynamic gate instance.
struct Instance {
  std::size_t unit = 0;
  Point point;
  Point timestamp;  // under the unit's schedule
};

/// Register index of argument `arg` of unit `u` at `point`.
inline Int register_index(const Unit& u, std::size_t arg, const Point& point,
                          const ParamBinding& binding) {
  return eval(u.args[arg], u.domain.iterators, point, binding);
}

/// Every instance of `scop` under `binding`, sorted by timestamp; equal
/// timestamps keep assembly order.
inline std::vector<Instance> enumerate_instances(const Scop& scop, const ParamBinding& binding) {
  std::vector<Instance> out;
  for (std::size_t u = 0; u < scop.units.size(); ++u) {
    const Unit& unit = scop.units[u];
    for (auto& p : enumerate(unit.domain, binding)) {
      Point ts = apply_map(unit.schedule, p, binding);
      out.push_back({u, std::move(p), std::move(ts)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) {
    if (lex_less(a.timestamp, b.timestamp)) return true;
    if (lex_less(b.timestamp, a.timestamp)) return false;
    return a.unit < b.unit;
  });
  return out;
}

struct RegisterSizes {
  std::size_t quantum = 0;
  std::size_t classical = 0;
};

/// One plus the largest index touched in each space; throws on negative
/// indices and on gates that name the same register entry twice.
inline RegisterSizes register_sizes(const Scop& scop, const ParamBinding& binding) {
  RegisterSizes r;
  for (const Unit& u : scop.units) {
    for (const auto& p : enumerate(u.domain, binding)) {
      for (std::size_t a = 0; a < u.args.size(); ++a) {
        Int idx = register_index(u, a, p, binding);
        if (idx < 0) {
          throw Error("unit " + u.name + " accesses negative register index " +
                      std::to_string(idx));
        }
        auto& slot = u.gate.spaces[a] == Space::Quantum ? r.quantum : r.classical;
        slot = std::max(slot, static_cast<std::size_t>(idx) + 1);
      }
    }
  }
  return r;
}

}  // namespace paqc
