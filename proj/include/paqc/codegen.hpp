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

// Code generation: polyhedral scanning of scheduled units into a loop AST,
// C-like loop listings, execution of the AST into a time-stamped gate stream,
// and OpenQASM 2.0 emission.
//
// Loop c<d> scans schedule dimension d. Each unit's iterators are recovered
// from the schedule (every linear row is +-x + offset, so x = +-(c<d> - offset)),
// which turns its domain into constraints over the c variables. At a dimension
// where every unit is constant, units are grouped by value; otherwise one loop
// covers the hull of the per-unit ranges and units whose range differs from the
// hull are guarded at the leaves.

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "paqc/affine.hpp"
#include "paqc/scop.hpp"
#include "paqc/transform.hpp"

namespace paqc {

inline std::string loop_var(std::size_t d) { return "c" + std::to_string(d); }

struct LoopNode {
  enum class Kind { Block, Loop, Let, Leaf };
  Kind kind = Kind::Leaf;
  std::size_t dim = 0;

  // Block: constant value of dimension `dim` shared by the body.
  Int value = 0;
  // Loop: c<dim> runs from min over groups of (max of terms) to max over
  // groups of (min of terms).
  std::vector<std::vector<BoundTerm>> lower, upper;
  // Let: c<dim> takes a single value.
  AffineExpr let;
  std::vector<LoopNode> body;

  // Leaf
  std::size_t unit = 0;
  GateSignature gate;
  std::vector<AffineExpr> args;   // over c variables and parameters
  std::vector<Constraint> guard;  // printed condition
  std::vector<Constraint> exact;  // full domain, checked on execution
};

struct LoopAST {
  std::size_t dims = 0;
  std::vector<LoopNode> roots;
};

namespace detail {

struct ScanUnit {
  std::size_t unit;
  const AffineMap* schedule;
  std::vector<Constraint> cons;
  std::vector<AffineExpr> args;
  std::vector<Constraint> guard;
};

inline bool is_const_row(const AffineMap& m, std::size_t d) {
  return d >= m.size() || m.outputs[d].is_constant();
}

inline Int const_row(const AffineMap& m, std::size_t d) {
  return d >= m.size() ? 0 : m.outputs[d].constant;
}

inline AffineExpr subst_all(AffineExpr e, const std::string& name, const AffineExpr& v) {
  return e.substitute(name, v);
}

inline void subst_unit(ScanUnit& u, const std::string& name, const AffineExpr& v) {
  for (auto& c : u.cons) c.expr = c.expr.substitute(name, v);
  for (auto& a : u.args) a = a.substitute(name, v);
  for (auto& g : u.guard) g.expr = g.expr.substitute(name, v);
}

/// Linear dimensions >= d of a unit, in order.
inline std::vector<std::string> inner_linear(const ScanUnit& u, std::size_t d, std::size_t dims) {
  std::vector<std::string> out;
  for (std::size_t k = d; k < dims; ++k) {
    if (!is_const_row(*u.schedule, k)) out.push_back(loop_var(k));
  }
  return out;
}

inline std::vector<LoopNode> build(std::size_t d, std::size_t dims, std::vector<ScanUnit> active,
                                   const Scop& scop) {
  std::vector<LoopNode> out;
  if (active.empty()) return out;
  if (d == dims) {
    for (auto& u : active) {
      LoopNode leaf;
      leaf.kind = LoopNode::Kind::Leaf;
      leaf.unit = u.unit;
      leaf.gate = scop.units[u.unit].gate;
      leaf.args = std::move(u.args);
      leaf.guard = std::move(u.guard);
      leaf.exact = std::move(u.cons);
      out.push_back(std::move(leaf));
    }
    return out;
  }
  const bool all_const = std::all_of(active.begin(), active.end(), [&](const ScanUnit& u) {
    return is_const_row(*u.schedule, d);
  });
  if (all_const) {
    std::map<Int, std::vector<ScanUnit>> groups;
    for (auto& u : active) groups[const_row(*u.schedule, d)].push_back(std::move(u));
    for (auto& [v, members] : groups) {
      LoopNode b;
      b.kind = LoopNode::Kind::Block;
      b.dim = d;
      b.value = v;
      b.body = build(d + 1, dims, std::move(members), scop);
      out.push_back(std::move(b));
    }
    return out;
  }
  // Per-unit ranges of c<d>.
  const std::string var = loop_var(d);
  std::vector<IteratorBounds> ranges;
  for (const auto& u : active) {
    if (is_const_row(*u.schedule, d)) {
      BoundTerm t{AffineExpr(const_row(*u.schedule, d)), 1};
      ranges.push_back({{t}, {t}});
    } else {
      IntegerSet s{inner_linear(u, d, dims), u.cons};
      auto b = extract_bounds(s, s.iterators);
      if (b[0].lower.empty() || b[0].upper.empty()) {
        throw CodegenError("unit " + scop.units[u.unit].name + " is unbounded in " + var);
      }
      ranges.push_back(std::move(b[0]));
    }
  }
  const bool same = std::all_of(ranges.begin(), ranges.end(), [&](const IteratorBounds& r) {
    return r.lower == ranges[0].lower && r.upper == ranges[0].upper;
  });
  const bool all_linear = std::none_of(active.begin(), active.end(), [&](const ScanUnit& u) {
    return is_const_row(*u.schedule, d);
  });
  if (same && all_linear && ranges[0].lower.size() == 1 && ranges[0].lower == ranges[0].upper &&
      ranges[0].lower[0].div == 1) {
    // Single-valued dimension: no loop, substitute the value.
    const AffineExpr v = ranges[0].lower[0].numer;
    for (auto& u : active) subst_unit(u, var, v);
    LoopNode let;
    let.kind = LoopNode::Kind::Let;
    let.dim = d;
    let.let = v;
    let.body = build(d + 1, dims, std::move(active), scop);
    out.push_back(std::move(let));
    return out;
  }
  LoopNode loop;
  loop.kind = LoopNode::Kind::Loop;
  loop.dim = d;
  for (const auto& r : ranges) {
    if (std::find(loop.lower.begin(), loop.lower.end(), r.lower) == loop.lower.end()) {
      loop.lower.push_back(r.lower);
    }
    if (std::find(loop.upper.begin(), loop.upper.end(), r.upper) == loop.upper.end()) {
      loop.upper.push_back(r.upper);
    }
  }
  const bool exact_hull = loop.lower.size() == 1 && loop.upper.size() == 1;
  // a <= b is provable when the difference is a non-positive constant.
  auto le = [](const BoundTerm& a, const BoundTerm& b) {
    if (a.div != 1 || b.div != 1) return a == b;
    AffineExpr diff = a.numer - b.numer;
    return diff.is_constant() && diff.constant <= 0;
  };
  // max(terms) of `mine` is <= max(terms) of every group: mine is the hull.
  auto lower_is_hull = [&](const std::vector<BoundTerm>& mine) {
    for (const auto& g : loop.lower) {
      for (const auto& a : mine) {
        if (std::none_of(g.begin(), g.end(), [&](const BoundTerm& t) { return le(a, t); })) {
          return false;
        }
      }
    }
    return true;
  };
  auto upper_is_hull = [&](const std::vector<BoundTerm>& mine) {
    for (const auto& g : loop.upper) {
      for (const auto& a : mine) {
        if (std::none_of(g.begin(), g.end(), [&](const BoundTerm& t) { return le(t, a); })) {
          return false;
        }
      }
    }
    return true;
  };
  for (std::size_t k = 0; k < active.size(); ++k) {
    auto& u = active[k];
    if (is_const_row(*u.schedule, d)) {
      if (!exact_hull) {
        u.guard.push_back(Constraint::eq(AffineExpr::iterator(var), AffineExpr(const_row(*u.schedule, d))));
      }
      continue;
    }
    if (exact_hull) continue;
    const AffineExpr x = AffineExpr::iterator(var);
    if (!lower_is_hull(ranges[k].lower)) {
      for (const auto& t : ranges[k].lower) u.guard.push_back(Constraint::ge(x * t.div, t.numer));
    }
    if (!upper_is_hull(ranges[k].upper)) {
      for (const auto& t : ranges[k].upper) u.guard.push_back(Constraint::ge(t.numer, x * t.div));
    }
  }
  loop.body = build(d + 1, dims, std::move(active), scop);
  out.push_back(std::move(loop));
  return out;
}

}  // namespace detail

/// Builds the loop AST for `solution`. Every non-constant schedule output
/// must be +-iterator + constant with each iterator used exactly once.
inline LoopAST scan(const Scop& scop, const ScheduleSolution& solution) {
  LoopAST ast;
  ast.dims = solution.dims();
  std::vector<detail::ScanUnit> active;
  for (std::size_t u = 0; u < scop.units.size(); ++u) {
    const Unit& unit = scop.units[u];
    const AffineMap& m = solution.schedules.at(u);
    detail::ScanUnit su{u, &m, unit.domain.constraints, unit.args, {}};
    std::set<std::string> seen;
    for (std::size_t d = 0; d < m.size(); ++d) {
      const AffineExpr& row = m.outputs[d];
      if (row.is_constant()) continue;
      if (row.iters.size() != 1 || !row.params.empty()) {
        throw CodegenError("non-invertible schedule row " + row.str() + " for " + unit.name);
      }
      const auto& [name, coeff] = *row.iters.begin();
      if ((coeff != 1 && coeff != -1) || !seen.insert(name).second) {
        throw CodegenError("non-invertible schedule row " + row.str() + " for " + unit.name);
      }
      // x = coeff * (c<d> - offset)
      AffineExpr value = (AffineExpr::iterator(loop_var(d)) - row.constant) * coeff;
      for (auto& c : su.cons) c.expr = c.expr.substitute(name, value);
      for (auto& a : su.args) a = a.substitute(name, value);
    }
    if (seen.size() != unit.iterators().size()) {
      throw CodegenError("schedule of " + unit.name + " does not determine every iterator");
    }
    active.push_back(std::move(su));
  }
  ast.roots = detail::build(0, ast.dims, std::move(active), scop);
  return ast;
}

namespace detail {

inline std::string term_text(const BoundTerm& t, bool lower, const ParamBinding& b) {
  AffineExpr e = t.numer.bind(b);
  if (t.div == 1) return e.str();
  if (e.is_constant()) {
    return std::to_string(lower ? ceil_div(e.constant, t.div) : floor_div(e.constant, t.div));
  }
  return std::string(lower ? "ceild(" : "floord(") + e.str() + ", " + std::to_string(t.div) + ")";
}

/// Renders max/min of terms; constant terms are folded.
inline std::string group_text(const std::vector<BoundTerm>& terms, bool lower,
                              const ParamBinding& b) {
  std::vector<std::string> parts;
  std::optional<Int> folded;
  for (const auto& t : terms) {
    AffineExpr e = t.numer.bind(b);
    if (e.is_constant()) {
      Int v = lower ? ceil_div(e.constant, t.div) : floor_div(e.constant, t.div);
      folded = folded ? (lower ? std::max(*folded, v) : std::min(*folded, v)) : v;
    } else {
      parts.push_back(term_text(t, lower, b));
    }
  }
  if (folded) parts.push_back(std::to_string(*folded));
  if (parts.size() == 1) return parts[0];
  std::string s = lower ? "max(" : "min(";
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? ", " : "") + parts[k];
  return s + ")";
}

inline std::optional<Int> group_const(const std::vector<BoundTerm>& terms, bool lower,
                                      const ParamBinding& b) {
  std::optional<Int> v;
  for (const auto& t : terms) {
    AffineExpr e = t.numer.bind(b);
    if (!e.is_constant()) return std::nullopt;
    Int x = lower ? ceil_div(e.constant, t.div) : floor_div(e.constant, t.div);
    v = v ? (lower ? std::max(*v, x) : std::min(*v, x)) : x;
  }
  return v;
}

inline std::string hull_text(const std::vector<std::vector<BoundTerm>>& groups, bool lower,
                             const ParamBinding& b) {
  if (groups.size() == 1) return group_text(groups[0], lower, b);
  // Fold when every group is constant under the binding.
  std::optional<Int> folded;
  bool all_const = true;
  for (const auto& g : groups) {
    auto v = group_const(g, lower, b);
    if (!v) {
      all_const = false;
      break;
    }
    folded = folded ? (lower ? std::min(*folded, *v) : std::max(*folded, *v)) : *v;
  }
  if (all_const) return std::to_string(*folded);
  std::string s = lower ? "min(" : "max(";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    s += (k ? ", " : "") + group_text(groups[k], lower, b);
  }
  return s + ")";
}

inline std::string mnemonic_upper(const GateSignature& g) {
  std::string s = g.qasm.empty() ? g.name : g.qasm;
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

inline std::string guard_text(const Constraint& c, const ParamBinding& b) {
  // e >= 0 (or == 0) rendered as "<loop vars> op <rest>".
  AffineExpr e = c.expr.bind(b);
  AffineExpr lhs, rhs = e * -1;
  lhs.iters = e.iters;
  rhs.iters.clear();
  const char* op = c.kind == Constraint::Kind::Equal ? " == " : " >= ";
  if (!lhs.iters.empty() && lhs.iters.begin()->second < 0) {
    lhs = lhs * -1;
    rhs = rhs * -1;
    if (c.kind != Constraint::Kind::Equal) op = " <= ";
  }
  return lhs.str() + op + rhs.str();
}

inline void emit_nodes(std::ostream& os, const std::vector<LoopNode>& nodes, int indent,
                       const ParamBinding& b) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& n : nodes) {
    switch (n.kind) {
      case LoopNode::Kind::Block:
      case LoopNode::Kind::Let:
        emit_nodes(os, n.body, indent, b);
        break;
      case LoopNode::Kind::Loop: {
        const std::string v = loop_var(n.dim);
        os << pad << "for (int " << v << " = " << hull_text(n.lower, true, b) << "; " << v
           << " <= " << hull_text(n.upper, false, b) << "; " << v << " += 1) {\n";
        emit_nodes(os, n.body, indent + 1, b);
        os << pad << "}\n";
        break;
      }
      case LoopNode::Kind::Leaf: {
        os << pad;
        std::vector<std::string> conds;
        for (const auto& g : n.guard) {
          std::string t = guard_text(g, b);
          if (std::find(conds.begin(), conds.end(), t) == conds.end()) conds.push_back(t);
        }
        if (!conds.empty()) {
          os << "if (";
          for (std::size_t k = 0; k < conds.size(); ++k) os << (k ? " && " : "") << conds[k];
          os << ") ";
        }
        os << mnemonic_upper(n.gate);
        for (const auto& a : n.args) os << "[" << a.bind(b).str() << "]";
        os << ";\n";
        break;
      }
    }
  }
}

}  // namespace detail

/// C-like listing; parameters are replaced by their values in `binding`.
inline std::string emit_loops(const LoopAST& ast, const ParamBinding& binding) {
  std::ostringstream os;
  detail::emit_nodes(os, ast.roots, 0, binding);
  return os.str();
}

struct GateOp {
  Point timestamp;
  GateSignature gate;
  std::vector<Int> operands;
  std::size_t unit = 0;

  friend bool operator==(const GateOp& a, const GateOp& b) {
    return a.timestamp == b.timestamp && a.gate.name == b.gate.name &&
           a.operands == b.operands && a.unit == b.unit;
  }
};

struct GateStream {
  std::vector<GateOp> ops;
  std::size_t qubits = 0;
  std::size_t clbits = 0;
};

namespace detail {

struct Executor {
  const ParamBinding& binding;
  std::vector<std::string> names;
  Point env;
  std::vector<GateOp> out;

  Int value(const AffineExpr& e) const { return eval(e, names, env, binding); }

  Int lower(const std::vector<std::vector<BoundTerm>>& groups) const {
    Int best = kInf;
    for (const auto& g : groups) {
      Int v = -kInf;
      for (const auto& t : g) v = std::max(v, ceil_div(value(t.numer), t.div));
      best = std::min(best, v);
    }
    return best;
  }
  Int upper(const std::vector<std::vector<BoundTerm>>& groups) const {
    Int best = -kInf;
    for (const auto& g : groups) {
      Int v = kInf;
      for (const auto& t : g) v = std::min(v, floor_div(value(t.numer), t.div));
      best = std::max(best, v);
    }
    return best;
  }

  void run(const std::vector<LoopNode>& nodes) {
    for (const auto& n : nodes) {
      switch (n.kind) {
        case LoopNode::Kind::Block:
          env[n.dim] = n.value;
          run(n.body);
          break;
        case LoopNode::Kind::Let:
          env[n.dim] = value(n.let);
          run(n.body);
          break;
        case LoopNode::Kind::Loop: {
          const Int lo = lower(n.lower), hi = upper(n.upper);
          for (Int c = lo; c <= hi; ++c) {
            env[n.dim] = c;
            run(n.body);
          }
          break;
        }
        case LoopNode::Kind::Leaf: {
          bool ok = true;
          for (const auto& c : n.exact) {
            if (!c.holds(names, env, binding)) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
          GateOp op{env, n.gate, {}, n.unit};
          for (const auto& a : n.args) {
            Int v = value(a);
            if (v < 0) throw CodegenError("negative operand index " + std::to_string(v));
            op.operands.push_back(v);
          }
          out.push_back(std::move(op));
          break;
        }
      }
    }
  }
};

}  // namespace detail

/// Executes `ast` under `binding`.
inline GateStream flatten(const LoopAST& ast, const ParamBinding& binding) {
  detail::Executor ex{binding, {}, Point(ast.dims, 0), {}};
  for (std::size_t d = 0; d < ast.dims; ++d) ex.names.push_back(loop_var(d));
  ex.run(ast.roots);
  GateStream s;
  s.ops = std::move(ex.out);
  for (const auto& op : s.ops) {
    for (std::size_t k = 0; k < op.operands.size(); ++k) {
      auto& slot = op.gate.spaces[k] == Space::Quantum ? s.qubits : s.clbits;
      slot = std::max(slot, static_cast<std::size_t>(op.operands[k]) + 1);
    }
  }
  return s;
}

inline GateStream flatten(const Scop& scop, const ScheduleSolution& solution,
                          const ParamBinding& binding) {
  return flatten(scan(scop, solution), binding);
}

/// OpenQASM 2.0 text for `stream`.
inline std::string emit_qasm(const GateStream& stream) {
  bool measure = false;
  for (const auto& op : stream.ops) {
    if (op.gate.qasm.empty()) {
      throw CodegenError("// unsupported gate '" + op.gate.name + "' has no OpenQASM 2.0 mnemonic");
    }
    measure = measure || op.gate.qasm == "measure";
  }
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  os << "qreg q[" << stream.qubits << "];\n";
  if (measure || stream.clbits > 0) os << "creg c[" << std::max<std::size_t>(stream.clbits, 1) << "];\n";
  for (const auto& op : stream.ops) {
    if (op.gate.qasm == "measure") {
      os << "measure q[" << op.operands[0] << "] -> c[" << op.operands[1] << "];\n";
      continue;
    }
    os << op.gate.qasm << " ";
    for (std::size_t k = 0; k < op.operands.size(); ++k) {
      os << (k ? "," : "") << register_name(op.gate.spaces[k]) << "[" << op.operands[k] << "]";
    }
    os << ";\n";
  }
  return os.str();
}

/// Minimal OpenQASM 2.0 reader for the subset emit_qasm produces (plus
/// comments and blank lines). Timestamps are the op positions.
inline GateStream read_qasm(std::istream& in, const GateCatalog& catalog = GateCatalog::standard()) {
  GateStream s;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("qasm line " + std::to_string(lineno) + ": " + msg);
  };
  auto parse_ref = [&](std::string tok, Space& space) -> Int {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    auto lb = tok.find('['), rb = tok.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail("bad operand '" + tok + "'");
    const std::string reg = tok.substr(0, lb);
    space = reg == "c" ? Space::Classical : Space::Quantum;
    if (reg != "q" && reg != "c") fail("unknown register '" + reg + "'");
    return std::stoll(tok.substr(lb + 1, rb - lb - 1));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find("//"); c != std::string::npos) line.erase(c);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    auto semi = line.rfind(';');
    if (semi == std::string::npos) fail("missing ';'");
    line.erase(semi);
    if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;
    if (line.rfind("qreg", 0) == 0 || line.rfind("creg", 0) == 0) {
      Space sp;
      Int n = parse_ref(line.substr(4), sp);
      (line[0] == 'q' ? s.qubits : s.clbits) = static_cast<std::size_t>(n);
      continue;
    }
    auto sp = line.find(' ');
    if (sp == std::string::npos) fail("expected operands");
    const std::string mnemonic = line.substr(0, sp);
    const GateSignature* g = catalog.find_qasm(mnemonic);
    if (!g) fail("unsupported gate '" + mnemonic + "'");
    std::string rest = line.substr(sp + 1);
    std::vector<std::string> toks;
    if (mnemonic == "measure") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) fail("measure needs '->'");
      toks = {rest.substr(0, arrow), rest.substr(arrow + 2)};
    } else {
      std::stringstream ss(rest);
      std::string t;
      while (std::getline(ss, t, ',')) toks.push_back(t);
    }
    if (toks.size() != g->arity()) fail("wrong operand count for '" + mnemonic + "'");
    GateOp op{{static_cast<Int>(s.ops.size())}, *g, {}, 0};
    for (std::size_t k = 0; k < toks.size(); ++k) {
      Space space;
      Int idx = parse_ref(toks[k], space);
      if (space != g->spaces[k]) fail("operand " + std::to_string(k) + " in the wrong register");
      op.operands.push_back(idx);
    }
    s.ops.push_back(std::move(op));
  }
  return s;
}

inline GateStream read_qasm(const std::string& text,
                            const GateCatalog& catalog = GateCatalog::standard()) {
  std::istringstream in(text);
  return read_qasm(in, catalog);
}

}  // namespace paqc
