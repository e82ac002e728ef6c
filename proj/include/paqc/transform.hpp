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

// Affine schedulers: base (identity), Pluto with minimal or maximal fusion,
// and Feautrier's greedy latency-minimizing scheduler, plus a legality check.
//
// Schedules are built level by level. At a linear level every unit that still
// has unused iterators picks one of them with coefficient +1 or -1 plus a
// non-negative offset; units whose iterators are exhausted get a constant. A
// splitter level gives every unit a constant (its component's position in a
// topological order), which distributes loops. Rows are unimodular, so the
// final schedules can always be inverted by code generation.
//
// Candidate rows are validated exactly against instance-level dependences,
// enumerated at several parameter bindings: the codegen binding, a canonical
// binding (every parameter = 8) and one unit step of each parameter above the
// canonical point. Offsets are the least solution of a system of difference
// constraints. Pluto's bound v(p) = u.p + w is measured on that sample: w is
// the smallest feasible bound on the dependence distance at the canonical
// binding, and u_p the growth of the largest distance when p is incremented.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "paqc/deps.hpp"
#include "paqc/scop.hpp"
#include "paqc/transform_kind.hpp"

namespace paqc {

struct ScheduleRow {
  int iter = -1;  // index into the unit's iterators; -1 for a constant row
  Int coeff = 0;
  Int offset = 0;

  bool is_scalar() const { return iter < 0; }
  friend bool operator==(const ScheduleRow&, const ScheduleRow&) = default;
};

struct ScheduleSolution {
  TransformKind transform = TransformKind::Base;
  std::vector<AffineMap> schedules;  // one per unit, equal lengths
  std::vector<bool> linear_levels;   // per dimension: searched linear row or splitter

  std::size_t dims() const { return schedules.empty() ? 0 : schedules.front().size(); }

  std::string dump(const Scop& scop) const {
    std::ostringstream os;
    os << "transform " << to_string(transform) << ", " << dims() << " dimensions\n";
    for (std::size_t u = 0; u < schedules.size(); ++u) {
      os << "  " << scop.units[u].name << " " << schedules[u].str() << "\n";
    }
    return os.str();
  }
};

struct ScheduleOptions {
  Int canonical_value = 8;           // value of every parameter in the canonical binding
  std::size_t exhaustive_limit = 4096;  // max combinations searched exhaustively per component
};

inline ScheduleSolution schedule_base(const Scop& scop) {
  ScheduleSolution s;
  s.transform = TransformKind::Base;
  const std::size_t depth = scop.schedule_depth();
  for (const auto& u : scop.units) {
    AffineMap m = u.schedule;
    while (m.outputs.size() < depth) m.outputs.emplace_back(0);
    s.schedules.push_back(std::move(m));
  }
  for (std::size_t d = 0; d < depth; ++d) {
    bool linear = false;
    for (const auto& m : s.schedules) linear = linear || !m.is_scalar_dim(d);
    s.linear_levels.push_back(linear);
  }
  return s;
}

namespace detail {

struct Choice {
  int iter = -1;
  Int coeff = 0;
  friend bool operator==(const Choice&, const Choice&) = default;
};

struct PendingPair {
  Point src, dst;
  std::size_t binding = 0;
};

struct SchedRelation {
  std::size_t src = 0, dst = 0;
  std::vector<PendingPair> pending;
};

constexpr Int kInf = std::numeric_limits<Int>::max() / 4;

/// A difference constraint off[to] >= off[from] + c.
struct Diff {
  std::size_t from, to;
  Int c;
};

class LevelScheduler {
 public:
  LevelScheduler(const Scop& scop, const ScheduleOptions& opts) : scop_(scop), opts_(opts) {
    n_ = scop.units.size();
    bound_ = static_cast<Int>(n_);
    build_bindings();
    collect_relations();
    rows_.assign(n_, {});
    used_.assign(n_, std::vector<bool>());
    for (std::size_t u = 0; u < n_; ++u) used_[u].assign(scop.units[u].iterators().size(), false);
  }

  ScheduleSolution run(TransformKind kind) {
    ScheduleSolution sol;
    sol.transform = kind;
    const std::size_t max_levels = 4 * (n_ + scop_.max_iterators()) + 8;
    bool first = true;
    while (has_pending() || !all_full_rank()) {
      if (levels_.size() > max_levels) throw ScheduleError("scheduler did not converge");
      if (kind == TransformKind::PlutoMin && first) {
        apply_splitter();
      } else if (!has_pending()) {
        apply_completion();
      } else if (kind == TransformKind::Feautrier) {
        feautrier_level();
      } else {
        pluto_level();
      }
      first = false;
    }
    sol.linear_levels = levels_;
    for (std::size_t u = 0; u < n_; ++u) sol.schedules.push_back(to_map(u));
    if (sol.schedules.empty()) return sol;
    if (sol.dims() == 0) {
      for (auto& m : sol.schedules) m.outputs.emplace_back(0);
      sol.linear_levels.push_back(false);
    }
    return sol;
  }

 private:
  const Scop& scop_;
  ScheduleOptions opts_;
  std::size_t n_ = 0;
  Int bound_ = 0;  // offsets live in [0, bound_]
  std::vector<ParamBinding> bindings_;
  std::size_t canonical_ = 0;
  std::vector<std::size_t> bumped_;  // bindings with one parameter incremented
  std::vector<SchedRelation> rels_;
  std::vector<std::vector<ScheduleRow>> rows_;
  std::vector<std::vector<bool>> used_;
  std::vector<bool> levels_;

  void build_bindings() {
    auto add = [&](const ParamBinding& b) {
      for (std::size_t k = 0; k < bindings_.size(); ++k) {
        if (bindings_[k] == b) return k;
      }
      bindings_.push_back(b);
      return bindings_.size() - 1;
    };
    add(scop_.binding);
    ParamBinding canon;
    for (const auto& p : scop_.params) canon[p] = opts_.canonical_value;
    canonical_ = add(canon);
    for (const auto& p : scop_.params) {
      ParamBinding b = canon;
      b[p] += 1;
      bumped_.push_back(add(b));
    }
  }

  void collect_relations() {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
    for (std::size_t b = 0; b < bindings_.size(); ++b) {
      for (const auto& e : compute_instance_deps(scop_, bindings_[b])) {
        auto key = std::make_pair(e.source.unit, e.sink.unit);
        auto [it, fresh] = slot.emplace(key, rels_.size());
        if (fresh) rels_.push_back({key.first, key.second, {}});
        rels_[it->second].pending.push_back({e.source.point, e.sink.point, b});
      }
    }
  }

  bool has_pending() const {
    for (const auto& r : rels_) {
      if (!r.pending.empty()) return true;
    }
    return false;
  }

  bool full_rank(std::size_t u) const {
    return std::all_of(used_[u].begin(), used_[u].end(), [](bool b) { return b; });
  }
  bool all_full_rank() const {
    for (std::size_t u = 0; u < n_; ++u) {
      if (!full_rank(u)) return false;
    }
    return true;
  }

  std::vector<Choice> choices(std::size_t u) const {
    std::vector<Choice> out;
    for (std::size_t k = 0; k < used_[u].size(); ++k) {
      if (used_[u][k]) continue;
      out.push_back({static_cast<int>(k), 1});
      out.push_back({static_cast<int>(k), -1});
    }
    if (out.empty()) out.push_back({-1, 0});
    return out;
  }

  static Int lin(const Choice& c, const Point& p) {
    return c.iter < 0 ? 0 : c.coeff * p[static_cast<std::size_t>(c.iter)];
  }

  // Extremes of the linear part of the distance per binding.
  struct Stats {
    std::vector<Int> lo, hi;
    Int lo_all = kInf;
  };

  Stats stats(const SchedRelation& r, const Choice& cs, const Choice& cd) const {
    Stats s;
    s.lo.assign(bindings_.size(), kInf);
    s.hi.assign(bindings_.size(), -kInf);
    for (const auto& pp : r.pending) {
      Int v = lin(cd, pp.dst) - lin(cs, pp.src);
      s.lo[pp.binding] = std::min(s.lo[pp.binding], v);
      s.hi[pp.binding] = std::max(s.hi[pp.binding], v);
      s.lo_all = std::min(s.lo_all, v);
    }
    return s;
  }

  /// Least non-negative solution of `diffs` over `vars` unit indices, or none
  /// when infeasible within [0, bound_].
  std::optional<std::map<std::size_t, Int>> solve(const std::vector<std::size_t>& vars,
                                                  const std::vector<Diff>& diffs) const {
    std::map<std::size_t, Int> off;
    for (std::size_t v : vars) off[v] = 0;
    for (std::size_t round = 0; round <= vars.size() + 1; ++round) {
      bool changed = false;
      for (const auto& d : diffs) {
        Int need = off[d.from] + d.c;
        if (off[d.to] < need) {
          off[d.to] = need;
          if (need > bound_) return std::nullopt;
          changed = true;
        }
      }
      if (!changed) return off;
    }
    return std::nullopt;
  }

  struct Component {
    std::vector<std::size_t> units;
    std::vector<std::size_t> rels;
  };

  /// Weakly connected components of the pending-dependence graph.
  std::vector<Component> components() const {
    std::vector<std::size_t> parent(n_);
    for (std::size_t u = 0; u < n_; ++u) parent[u] = u;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& r : rels_) {
      if (!r.pending.empty()) parent[find(r.src)] = find(r.dst);
    }
    std::map<std::size_t, std::size_t> index;
    std::vector<Component> out;
    for (std::size_t u = 0; u < n_; ++u) {
      auto [it, fresh] = index.emplace(find(u), out.size());
      if (fresh) out.emplace_back();
      out[it->second].units.push_back(u);
    }
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      if (!rels_[r].pending.empty()) out[index[find(rels_[r].src)]].rels.push_back(r);
    }
    return out;
  }

  struct Candidate {
    std::map<std::size_t, Choice> choice;
    std::map<std::size_t, Int> offset;
  };

  // Builds the constraint system for `comp` under `choice`. Relations listed in
  // `strong` must be strongly satisfied. Returns false on a violated
  // self-relation.
  bool constraints(const Component& comp, const std::map<std::size_t, Choice>& choice,
                   const std::vector<bool>& strong, std::optional<Int> w,
                   std::vector<Diff>& out) const {
    for (std::size_t k = 0; k < comp.rels.size(); ++k) {
      const auto& r = rels_[comp.rels[k]];
      Stats s = stats(r, choice.at(r.src), choice.at(r.dst));
      const Int need = strong[k] ? 1 : 0;
      if (r.src == r.dst) {
        if (s.lo_all < need) return false;
        if (w && s.hi[canonical_] > *w) return false;
        continue;
      }
      out.push_back({r.src, r.dst, need - s.lo_all});
      if (w && s.hi[canonical_] > -kInf) out.push_back({r.dst, r.src, s.hi[canonical_] - *w});
    }
    return true;
  }

  std::optional<std::map<std::size_t, Int>> offsets(const Component& comp,
                                                    const std::map<std::size_t, Choice>& choice,
                                                    const std::vector<bool>& strong,
                                                    std::optional<Int> w) const {
    std::vector<Diff> diffs;
    if (!constraints(comp, choice, strong, w, diffs)) return std::nullopt;
    return solve(comp.units, diffs);
  }

  Int max_distance(const Component& comp, const Candidate& c, std::size_t b) const {
    Int d = -kInf;
    for (std::size_t r : comp.rels) {
      const auto& rel = rels_[r];
      Stats s = stats(rel, c.choice.at(rel.src), c.choice.at(rel.dst));
      if (s.hi[b] == -kInf) continue;
      d = std::max(d, s.hi[b] + c.offset.at(rel.dst) - c.offset.at(rel.src));
    }
    return d;
  }

  // Pluto cost of a choice vector: (sum u, w), or none when infeasible.
  std::optional<std::pair<std::tuple<Int, Int>, Candidate>> pluto_eval(
      const Component& comp, const std::map<std::size_t, Choice>& choice) const {
    std::vector<bool> weak(comp.rels.size(), false);
    auto base = offsets(comp, choice, weak, std::nullopt);
    if (!base) return std::nullopt;
    Candidate c{choice, *base};
    Int hi = max_distance(comp, c, canonical_);
    if (hi == -kInf) {
      return std::make_pair(std::make_tuple(Int{0}, Int{0}), c);
    }
    Int lo = -1;  // infeasible sentinel below any useful bound
    // Smallest w in (lo, hi] for which the system stays feasible.
    while (hi - lo > 1) {
      Int mid = lo + (hi - lo) / 2;
      if (offsets(comp, choice, weak, mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    c.offset = *offsets(comp, choice, weak, hi);
    Int du = 0;
    const Int d0 = max_distance(comp, c, canonical_);
    for (std::size_t b : bumped_) du += std::max<Int>(0, max_distance(comp, c, b) - d0);
    return std::make_pair(std::make_tuple(du, hi), c);
  }

  // Feautrier objective: number of pending relations that can be strongly
  // satisfied, added greedily in relation order.
  std::optional<std::pair<std::tuple<Int, Int>, Candidate>> feautrier_eval(
      const Component& comp, const std::map<std::size_t, Choice>& choice) const {
    std::vector<bool> strong(comp.rels.size(), false);
    auto best = offsets(comp, choice, strong, std::nullopt);
    if (!best) return std::nullopt;
    Int count = 0;
    for (std::size_t k = 0; k < comp.rels.size(); ++k) {
      strong[k] = true;
      if (auto o = offsets(comp, choice, strong, std::nullopt)) {
        best = o;
        ++count;
      } else {
        strong[k] = false;
      }
    }
    // Lower tuples are better: negate the count.
    return std::make_pair(std::make_tuple(-count, Int{0}), Candidate{choice, *best});
  }

  template <typename Eval>
  std::optional<Candidate> search(const Component& comp, Eval eval) const {
    std::vector<std::vector<Choice>> opts;
    std::size_t product = 1;
    for (std::size_t u : comp.units) {
      opts.push_back(choices(u));
      product = product > opts_.exhaustive_limit ? product : product * opts.back().size();
    }
    std::optional<std::pair<std::tuple<Int, Int>, Candidate>> best;
    auto consider = [&](const std::vector<std::size_t>& pick) {
      std::map<std::size_t, Choice> choice;
      for (std::size_t k = 0; k < comp.units.size(); ++k) choice[comp.units[k]] = opts[k][pick[k]];
      auto r = eval(comp, choice);
      if (r && (!best || r->first < best->first)) {
        best = std::move(r);
        return true;
      }
      return false;
    };
    std::vector<std::size_t> pick(comp.units.size(), 0);
    if (product <= opts_.exhaustive_limit) {
      // Odometer over the choice lists; the first unit is most significant,
      // so candidates are visited in lexicographic order.
      bool done = false;
      while (!done) {
        consider(pick);
        done = true;
        for (std::size_t k = pick.size(); k-- > 0;) {
          if (++pick[k] < opts[k].size()) {
            done = false;
            break;
          }
          pick[k] = 0;
        }
      }
    } else {
      // Coordinate descent from the all-first choice.
      consider(pick);
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t k = 0; k < pick.size(); ++k) {
          const std::size_t keep = pick[k];
          std::size_t best_at = keep;
          for (std::size_t c = 0; c < opts[k].size(); ++c) {
            if (c == keep) continue;
            pick[k] = c;
            if (consider(pick)) {
              best_at = c;
              improved = true;
            }
          }
          pick[k] = best_at;
        }
      }
    }
    if (!best) return std::nullopt;
    return best->second;
  }

  void push_row(std::size_t u, const Choice& c, Int offset) {
    if (c.iter >= 0) used_[u][static_cast<std::size_t>(c.iter)] = true;
    rows_[u].push_back({c.iter, c.coeff, offset});
  }

  // Drops every pending pair the newest level strictly orders.
  void retire_satisfied() {
    for (auto& r : rels_) {
      const ScheduleRow& a = rows_[r.src].back();
      const ScheduleRow& b = rows_[r.dst].back();
      std::vector<PendingPair> keep;
      for (auto& pp : r.pending) {
        Int delta = lin({b.iter, b.coeff}, pp.dst) + b.offset - lin({a.iter, a.coeff}, pp.src) -
                    a.offset;
        if (delta < 0) {
          throw ScheduleError("internal: row violates a dependence of " + scop_.units[r.src].name +
                              " -> " + scop_.units[r.dst].name);
        }
        if (delta == 0) keep.push_back(std::move(pp));
      }
      r.pending = std::move(keep);
    }
  }

  /// Topological rank of each unit's component in the pending graph.
  std::vector<std::size_t> splitter_values() const {
    DepGraph g;
    g.num_units = n_;
    for (const auto& r : rels_) {
      if (!r.pending.empty()) g.relations.push_back({r.src, r.dst, DepKind::Flow, false, {}, {}});
    }
    detail::condense(g);
    return g.scc_of;
  }

  std::size_t splitter_gain() const {
    auto v = splitter_values();
    std::size_t gain = 0;
    for (const auto& r : rels_) {
      if (!r.pending.empty() && v[r.src] != v[r.dst]) ++gain;
    }
    return gain;
  }

  void apply_splitter() {
    auto v = splitter_values();
    for (std::size_t u = 0; u < n_; ++u) push_row(u, {-1, 0}, static_cast<Int>(v[u]));
    levels_.push_back(false);
    retire_satisfied();
  }

  void apply_completion() {
    for (std::size_t u = 0; u < n_; ++u) push_row(u, choices(u).front(), 0);
    levels_.push_back(true);
  }

  template <typename Eval>
  bool linear_level(Eval eval) {
    if (all_full_rank()) return false;
    std::vector<Candidate> picked;
    for (const auto& comp : components()) {
      auto c = search(comp, eval);
      if (!c) return false;
      picked.push_back(std::move(*c));
    }
    for (const auto& c : picked) {
      for (const auto& [u, ch] : c.choice) push_row(u, ch, c.offset.at(u));
    }
    levels_.push_back(true);
    retire_satisfied();
    return true;
  }

  void pluto_level() {
    if (linear_level([this](const Component& c, const std::map<std::size_t, Choice>& ch) {
          return pluto_eval(c, ch);
        })) {
      return;
    }
    if (splitter_gain() == 0) {
      throw ScheduleError("no legal schedule row within the search space");
    }
    apply_splitter();
  }

  void feautrier_level() {
    auto eval = [this](const Component& c, const std::map<std::size_t, Choice>& ch) {
      return feautrier_eval(c, ch);
    };
    const std::size_t split = splitter_gain();
    std::vector<Candidate> picked;
    std::size_t gain = 0;
    bool feasible = !all_full_rank();
    if (feasible) {
      for (const auto& comp : components()) {
        auto c = search(comp, eval);
        if (!c) {
          feasible = false;
          break;
        }
        gain += strong_count(comp, *c);
        picked.push_back(std::move(*c));
      }
    }
    // A linear row wins ties with the splitter.
    if (feasible && gain >= split) {
      for (const auto& c : picked) {
        for (const auto& [u, ch] : c.choice) push_row(u, ch, c.offset.at(u));
      }
      levels_.push_back(true);
      retire_satisfied();
      return;
    }
    if (split == 0) throw ScheduleError("no legal schedule row within the search space");
    apply_splitter();
  }

  std::size_t strong_count(const Component& comp, const Candidate& c) const {
    std::size_t count = 0;
    for (std::size_t r : comp.rels) {
      const auto& rel = rels_[r];
      Stats s = stats(rel, c.choice.at(rel.src), c.choice.at(rel.dst));
      if (s.lo_all + c.offset.at(rel.dst) - c.offset.at(rel.src) >= 1) ++count;
    }
    return count;
  }

  AffineMap to_map(std::size_t u) const {
    const Unit& unit = scop_.units[u];
    AffineMap m{unit.iterators(), {}};
    for (const auto& row : rows_[u]) {
      if (row.is_scalar()) {
        m.outputs.emplace_back(row.offset);
      } else {
        m.outputs.push_back(
            AffineExpr::iterator(unit.iterators()[static_cast<std::size_t>(row.iter)], row.coeff) +
            row.offset);
      }
    }
    return m;
  }
};

}  // namespace detail

inline ScheduleSolution schedule_pluto(const Scop& scop, bool max_fusion,
                                       const ScheduleOptions& opts = {}) {
  return detail::LevelScheduler(scop, opts).run(max_fusion ? TransformKind::PlutoMax
                                                           : TransformKind::PlutoMin);
}

inline ScheduleSolution schedule_feautrier(const Scop& scop, const ScheduleOptions& opts = {}) {
  return detail::LevelScheduler(scop, opts).run(TransformKind::Feautrier);
}

inline ScheduleSolution schedule(const Scop& scop, TransformKind kind,
                                 const ScheduleOptions& opts = {}) {
  switch (kind) {
    case TransformKind::Base: return schedule_base(scop);
    case TransformKind::PlutoMin: return schedule_pluto(scop, false, opts);
    case TransformKind::PlutoMax: return schedule_pluto(scop, true, opts);
    case TransformKind::Feautrier: return schedule_feautrier(scop, opts);
  }
  return schedule_base(scop);
}

struct LegalityReport {
  enum class Status { Strong, Weak, Violated };
  struct EdgeStatus {
    DependenceEdge edge;
    Status status = Status::Strong;
    std::size_t dim = 0;  // first dimension that orders the endpoints
  };
  std::vector<EdgeStatus> edges;
  bool legal = true;
  std::size_t violations = 0;
  std::size_t weak = 0;
};

/// Checks every instance dependence of `scop` under `binding` against the
/// timestamps of `solution`.
inline LegalityReport check_legality(const Scop& scop, const ScheduleSolution& solution,
                                     const ParamBinding& binding) {
  LegalityReport rep;
  for (const auto& e : compute_instance_deps(scop, binding)) {
    Point a = apply_map(solution.schedules[e.source.unit], e.source.point, binding);
    Point b = apply_map(solution.schedules[e.sink.unit], e.sink.point, binding);
    LegalityReport::EdgeStatus st{e, LegalityReport::Status::Weak, 0};
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t d = 0; d < n; ++d) {
      Int x = d < a.size() ? a[d] : 0;
      Int y = d < b.size() ? b[d] : 0;
      if (x != y) {
        st.status = x < y ? LegalityReport::Status::Strong : LegalityReport::Status::Violated;
        st.dim = d;
        break;
      }
    }
    if (st.status == LegalityReport::Status::Violated) ++rep.violations;
    if (st.status == LegalityReport::Status::Weak) ++rep.weak;
    rep.edges.push_back(std::move(st));
  }
  rep.legal = rep.violations == 0 && rep.weak == 0;
  return rep;
}

}  // namespace paqc
