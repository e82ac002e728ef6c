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

// Qubit allocation: places the logical qubits of a gate stream on the vertices
// of a coupling graph and inserts SWAPs (3 CNOTs each) so that every
// multi-qubit gate acts on adjacent vertices; on directed graphs CNOTs against
// the native orientation become REVERSE groups (H H CNOT H H).
//
// Allocators:
//   trivial     identity placement, shortest-path SWAP chains per gate
//   wpm_lite    greedy placement of the most frequent interaction pairs onto
//               graph edges, then the same single-pass routing
//   sabre_lite  front-layer routing scored by front + look-ahead distances,
//               started from a seeded random placement refined by routing the
//               reversed circuit once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "paqc/codegen.hpp"
#include "paqc/topology.hpp"

namespace paqc {

enum class Allocator { Trivial, WpmLite, SabreLite };

inline const char* to_string(Allocator a) {
  switch (a) {
    case Allocator::Trivial: return "trivial";
    case Allocator::WpmLite: return "wpm_lite";
    case Allocator::SabreLite: return "sabre_lite";
  }
  return "?";
}

inline Allocator parse_allocator(const std::string& s) {
  if (s == "trivial") return Allocator::Trivial;
  if (s == "wpm_lite") return Allocator::WpmLite;
  if (s == "sabre_lite") return Allocator::SabreLite;
  throw Error("unknown allocator '" + s + "' (expected trivial, wpm_lite or sabre_lite)");
}

inline const std::vector<Allocator>& all_allocators() {
  static const std::vector<Allocator> kAll{Allocator::Trivial, Allocator::WpmLite,
                                           Allocator::SabreLite};
  return kAll;
}

struct PhysOp {
  enum class Tag { Original, SwapPart, ReversePart };
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  GateSignature gate;
  std::vector<Int> operands;  // physical vertices (quantum) or classical bits
  Tag tag = Tag::Original;
  std::size_t origin = kNone;  // index of the logical op this stands for

  friend bool operator==(const PhysOp&, const PhysOp&) = default;
};

struct PhysicalCircuit {
  std::vector<PhysOp> ops;
  std::vector<int> initial;  // logical qubit -> vertex; a permutation of all vertices
  std::vector<int> final;
  std::size_t clbits = 0;

  friend bool operator==(const PhysicalCircuit&, const PhysicalCircuit&) = default;
};

struct Metrics {
  std::size_t depth = 0;
  std::size_t size = 0;
  std::size_t added_gates = 0;
  std::size_t swaps = 0;
  std::size_t reverses = 0;
  double alloc_time = 0.0;  // seconds
};

struct AllocOptions {
  std::uint64_t seed = 0;
  std::optional<double> timeout_seconds;  // wall-clock budget of one allocate call
  std::size_t lookahead = 20;
  double lookahead_weight = 0.5;
};

struct Allocation {
  PhysicalCircuit circuit;
  Metrics metrics;
};

/// As-soon-as-possible levelling: an op's level is one more than the highest
/// level among the last ops on its operands; depth is the maximum level.
/// Quantum and classical operands are separate lanes.
template <typename Op>
std::size_t circuit_depth(const std::vector<Op>& ops) {
  std::map<std::pair<Space, Int>, std::size_t> lane;
  std::size_t depth = 0;
  for (const auto& op : ops) {
    std::size_t level = 0;
    for (std::size_t k = 0; k < op.operands.size(); ++k) {
      auto it = lane.find({op.gate.spaces[k], op.operands[k]});
      if (it != lane.end()) level = std::max(level, it->second);
    }
    ++level;
    for (std::size_t k = 0; k < op.operands.size(); ++k) lane[{op.gate.spaces[k], op.operands[k]}] = level;
    depth = std::max(depth, level);
  }
  return depth;
}

inline std::size_t circuit_depth(const GateStream& s) { return circuit_depth(s.ops); }
inline std::size_t circuit_depth(const PhysicalCircuit& c) { return circuit_depth(c.ops); }

namespace detail {

/// Quantum operands of a logical op, in argument order.
inline std::vector<int> quantum_operands(const GateOp& op) {
  std::vector<int> q;
  for (std::size_t k = 0; k < op.operands.size(); ++k) {
    if (op.gate.spaces[k] == Space::Quantum) q.push_back(static_cast<int>(op.operands[k]));
  }
  return q;
}

inline bool is_cnot(const GateSignature& g) { return g.name == "CNOT"; }

class Router {
 public:
  Router(const CouplingGraph& g, std::vector<int> initial,
         std::optional<std::chrono::steady_clock::time_point> deadline)
      : g_(g), l2p_(std::move(initial)), p2l_(g.size()), deadline_(deadline) {
    for (int l = 0; l < g.size(); ++l) p2l_[l2p_[l]] = l;
    const auto& cat = catalog();
    cnot_ = cat.signature("CNOT");
    h_ = cat.signature("H");
  }

  static const GateCatalog& catalog() {
    static const GateCatalog kCatalog = GateCatalog::standard();
    return kCatalog;
  }

  int phys(int logical) const { return l2p_[logical]; }
  const std::vector<int>& mapping() const { return l2p_; }
  std::vector<PhysOp>& ops() { return ops_; }
  std::size_t swaps() const { return swaps_; }
  std::size_t reverses() const { return reverses_; }

  void check_deadline() const {
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
      throw TimeoutError("allocation exceeded its time budget");
    }
  }

  /// Exchanges the logical qubits on adjacent vertices a and b.
  void swap(int a, int b) {
    if (!g_.adjacent(a, b)) throw MappingError("swap on non-adjacent vertices");
    if (g_.directed() && !g_.oriented(a, b)) std::swap(a, b);
    ops_.push_back({cnot_, {a, b}, PhysOp::Tag::SwapPart, PhysOp::kNone});
    ops_.push_back({cnot_, {b, a}, PhysOp::Tag::SwapPart, PhysOp::kNone});
    ops_.push_back({cnot_, {a, b}, PhysOp::Tag::SwapPart, PhysOp::kNone});
    std::swap(p2l_[a], p2l_[b]);
    l2p_[p2l_[a]] = a;
    l2p_[p2l_[b]] = b;
    ++swaps_;
    check_deadline();
  }

  /// Moves the qubit on path.front() to path.back().
  void move_along(const std::vector<int>& path) {
    for (std::size_t k = 0; k + 1 < path.size(); ++k) swap(path[k], path[k + 1]);
  }

  /// Brings logical qubit a next to logical qubit b along a shortest path.
  void route_pair(int a, int b) {
    while (!g_.adjacent(phys(a), phys(b))) {
      auto p = g_.path(phys(a), phys(b));
      swap(p[0], p[1]);
    }
  }

  /// Star placement: both controls on distinct neighbours of the target's
  /// vertex, choosing the cheapest placement by summed distances.
  void route_star(int c1, int c2, int t) {
    if (g_.adjacent(phys(c1), phys(t)) && g_.adjacent(phys(c2), phys(t))) return;
    struct Cand {
      int cost, v, n1, n2;
    };
    std::vector<Cand> cands;
    for (int v = 0; v < g_.size(); ++v) {
      const auto& nb = g_.neighbors(v);
      for (int n1 : nb) {
        for (int n2 : nb) {
          if (n1 == n2) continue;
          cands.push_back({g_.distance(phys(t), v) + g_.distance(phys(c1), n1) +
                               g_.distance(phys(c2), n2),
                           v, n1, n2});
        }
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      return std::tie(x.cost, x.v, x.n1, x.n2) < std::tie(y.cost, y.v, y.n1, y.n2);
    });
    for (const auto& c : cands) {
      // Plan on a copy of the placement; commit only if every leg exists.
      std::vector<int> l2p = l2p_, p2l = p2l_;
      auto plan_move = [&](int logical, int dest, const std::vector<bool>& blocked,
                           std::vector<std::vector<int>>& legs) {
        auto p = g_.path(l2p[logical], dest, blocked);
        if (p.empty()) return false;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
          std::swap(p2l[p[k]], p2l[p[k + 1]]);
          l2p[p2l[p[k]]] = p[k];
          l2p[p2l[p[k + 1]]] = p[k + 1];
        }
        legs.push_back(std::move(p));
        return true;
      };
      std::vector<std::vector<int>> legs;
      std::vector<bool> blocked(g_.size(), false);
      if (!plan_move(t, c.v, blocked, legs)) continue;
      blocked[c.v] = true;
      if (!plan_move(c1, c.n1, blocked, legs)) continue;
      blocked[c.n1] = true;
      if (!plan_move(c2, c.n2, blocked, legs)) continue;
      for (const auto& leg : legs) move_along(leg);
      return;
    }
    throw MappingError("no vertex can host the three operands of a Toffoli");
  }

  /// Makes `op` executable on the current placement.
  void route(const GateOp& op) {
    auto q = quantum_operands(op);
    if (q.size() == 2) {
      route_pair(q[0], q[1]);
    } else if (q.size() == 3) {
      route_star(q[0], q[1], q[2]);
    } else if (q.size() > 3) {
      throw MappingError("gate " + op.gate.name + " has more than three qubit operands");
    }
  }

  bool executable(const GateOp& op) const {
    auto q = quantum_operands(op);
    if (q.size() == 2) return g_.adjacent(phys(q[0]), phys(q[1]));
    if (q.size() == 3) {
      return g_.adjacent(phys(q[0]), phys(q[2])) && g_.adjacent(phys(q[1]), phys(q[2]));
    }
    return q.size() < 2;
  }

  /// Routing cost of `op` on the current placement (0 when executable).
  int cost(const GateOp& op) const {
    auto q = quantum_operands(op);
    if (q.size() == 2) return g_.distance(phys(q[0]), phys(q[1])) - 1;
    if (q.size() == 3) {
      return g_.distance(phys(q[0]), phys(q[2])) + g_.distance(phys(q[1]), phys(q[2])) - 2;
    }
    return 0;
  }

  /// Emits an executable op on its current physical images.
  void emit(const GateOp& op, std::size_t origin) {
    PhysOp p{op.gate, op.operands, PhysOp::Tag::Original, origin};
    for (std::size_t k = 0; k < p.operands.size(); ++k) {
      if (op.gate.spaces[k] == Space::Quantum) p.operands[k] = phys(static_cast<int>(op.operands[k]));
    }
    if (g_.directed() && is_cnot(op.gate) && !g_.oriented(static_cast<int>(p.operands[0]),
                                                          static_cast<int>(p.operands[1]))) {
      const Int c = p.operands[0], t = p.operands[1];
      ops_.push_back({h_, {c}, PhysOp::Tag::ReversePart, PhysOp::kNone});
      ops_.push_back({h_, {t}, PhysOp::Tag::ReversePart, PhysOp::kNone});
      ops_.push_back({cnot_, {t, c}, PhysOp::Tag::ReversePart, origin});
      ops_.push_back({h_, {c}, PhysOp::Tag::ReversePart, PhysOp::kNone});
      ops_.push_back({h_, {t}, PhysOp::Tag::ReversePart, PhysOp::kNone});
      ++reverses_;
      return;
    }
    ops_.push_back(std::move(p));
  }

  /// Temporarily applies a swap to the placement (no ops, no counting).
  void virtual_swap(int a, int b) {
    std::swap(p2l_[a], p2l_[b]);
    l2p_[p2l_[a]] = a;
    l2p_[p2l_[b]] = b;
  }

 private:
  const CouplingGraph& g_;
  std::vector<int> l2p_, p2l_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  GateSignature cnot_, h_;
  std::vector<PhysOp> ops_;
  std::size_t swaps_ = 0, reverses_ = 0;
};

inline std::vector<int> identity_placement(int n) {
  std::vector<int> p(n);
  for (int k = 0; k < n; ++k) p[k] = k;
  return p;
}

/// Greedy placement of interaction pairs, heaviest first.
inline std::vector<int> wpm_placement(const GateStream& s, const CouplingGraph& g) {
  std::map<std::pair<int, int>, int> weight;
  for (const auto& op : s.ops) {
    auto q = quantum_operands(op);
    if (q.size() < 2) continue;
    const int target = q.back();
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      ++weight[{std::min(q[k], target), std::max(q[k], target)}];
    }
  }
  std::vector<std::pair<std::pair<int, int>, int>> pairs(weight.begin(), weight.end());
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const int n = g.size();
  std::vector<int> l2p(n, -1);
  std::vector<bool> used(n, false);
  auto place = [&](int l, int v) {
    l2p[l] = v;
    used[v] = true;
  };
  auto nearest_free = [&](int from) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[v] && (best < 0 || g.distance(from, v) < g.distance(from, best))) best = v;
    }
    return best;
  };
  auto free_neighbours = [&](int v) {
    int c = 0;
    for (int w : g.neighbors(v)) c += used[w] ? 0 : 1;
    return c;
  };
  for (const auto& [pair, w] : pairs) {
    auto [a, b] = pair;
    if (l2p[a] >= 0 && l2p[b] >= 0) continue;
    if (l2p[a] < 0 && l2p[b] < 0) {
      // Open a new cluster on the free vertex with most free neighbours,
      // closest to what is already placed.
      int best = -1;
      long best_key_dist = 0;
      int best_free = -1;
      for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        long dist = 0;
        for (int l = 0; l < n; ++l) {
          if (l2p[l] >= 0) dist += g.distance(v, l2p[l]);
        }
        const int f = free_neighbours(v);
        if (best < 0 || f > best_free || (f == best_free && dist < best_key_dist)) {
          best = v;
          best_free = f;
          best_key_dist = dist;
        }
      }
      place(a, best);
    }
    const int placed = l2p[a] >= 0 ? a : b;
    const int other = placed == a ? b : a;
    place(other, nearest_free(l2p[placed]));
  }
  for (int l = 0; l < n; ++l) {
    if (l2p[l] < 0) place(l, nearest_free(0));
  }
  return l2p;
}

}  // namespace detail

namespace detail {

/// Dependence DAG of a logical op sequence over quantum and classical lanes.
struct OpDag {
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::size_t> indeg;
};

inline OpDag op_dag(const std::vector<const GateOp*>& ops) {
  OpDag d;
  d.succ.resize(ops.size());
  d.indeg.assign(ops.size(), 0);
  std::map<std::pair<Space, Int>, std::size_t> last;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::set<std::size_t> preds;
    for (std::size_t k = 0; k < ops[i]->operands.size(); ++k) {
      auto key = std::make_pair(ops[i]->gate.spaces[k], ops[i]->operands[k]);
      if (auto it = last.find(key); it != last.end()) preds.insert(it->second);
      last[key] = i;
    }
    for (std::size_t p : preds) {
      d.succ[p].push_back(i);
      ++d.indeg[i];
    }
  }
  return d;
}

/// Front-layer routing of `ops` (in order) from the router's placement.
/// Executed ops are emitted with their index in `origins`.
inline void sabre_pass(Router& r, const std::vector<const GateOp*>& ops,
                       const std::vector<std::size_t>& origins, const CouplingGraph& g,
                       const AllocOptions& opt, std::mt19937_64& rng) {
  OpDag dag = op_dag(ops);
  std::set<std::size_t> front;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (dag.indeg[i] == 0) front.insert(i);
  }
  std::vector<bool> done(ops.size(), false);
  std::vector<double> decay(g.size(), 1.0);
  std::size_t next_pending = 0;  // lowest index that may still be unexecuted
  std::size_t stalled = 0;
  const std::size_t stall_limit = 3 * static_cast<std::size_t>(g.size());
  while (!front.empty()) {
    bool progress = false;
    for (auto it = front.begin(); it != front.end();) {
      const std::size_t i = *it;
      if (!r.executable(*ops[i])) {
        ++it;
        continue;
      }
      r.emit(*ops[i], origins[i]);
      done[i] = true;
      it = front.erase(it);
      for (std::size_t s : dag.succ[i]) {
        if (--dag.indeg[s] == 0) front.insert(s);
      }
      progress = true;
    }
    if (progress) {
      std::fill(decay.begin(), decay.end(), 1.0);
      stalled = 0;
      continue;
    }
    if (front.empty()) break;
    if (stalled >= stall_limit) {
      // Guaranteed progress: route the first blocked gate directly.
      r.route(*ops[*front.begin()]);
      stalled = 0;
      continue;
    }
    // Look-ahead window: the next unexecuted multi-qubit ops outside the front.
    while (next_pending < ops.size() && done[next_pending]) ++next_pending;
    std::vector<std::size_t> window;
    for (std::size_t i = next_pending; i < ops.size() && window.size() < opt.lookahead; ++i) {
      if (!done[i] && !front.count(i) && quantum_operands(*ops[i]).size() >= 2) window.push_back(i);
    }
    std::set<std::pair<int, int>> cands;
    for (std::size_t i : front) {
      for (int q : quantum_operands(*ops[i])) {
        const int p = r.phys(q);
        for (int w : g.neighbors(p)) cands.insert({std::min(p, w), std::max(p, w)});
      }
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> ties;
    for (const auto& [a, b] : cands) {
      r.virtual_swap(a, b);
      double f = 0, e = 0;
      for (std::size_t i : front) f += r.cost(*ops[i]);
      for (std::size_t i : window) e += r.cost(*ops[i]);
      r.virtual_swap(a, b);
      double score = f / static_cast<double>(front.size());
      if (!window.empty()) score += opt.lookahead_weight * e / static_cast<double>(window.size());
      score *= std::max(decay[a], decay[b]);
      if (score < best - 1e-12) {
        best = score;
        ties.assign(1, {a, b});
      } else if (score <= best + 1e-12) {
        ties.emplace_back(a, b);
      }
    }
    const auto [a, b] = ties[rng() % ties.size()];
    r.swap(a, b);
    decay[a] += 0.001;
    decay[b] += 0.001;
    ++stalled;
  }
}

}  // namespace detail

/// Maps `circuit` onto `g` with the given allocator.
inline Allocation allocate(const GateStream& circuit, const CouplingGraph& g, Allocator policy,
                           const AllocOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (circuit.qubits > static_cast<std::size_t>(g.size())) {
    throw MappingError("circuit needs " + std::to_string(circuit.qubits) + " qubits, device '" +
                       g.name() + "' has " + std::to_string(g.size()));
  }
  for (const auto& op : circuit.ops) {
    for (int q : detail::quantum_operands(op)) {
      if (q < 0 || q >= g.size()) throw MappingError("qubit operand out of device range");
    }
  }
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (opt.timeout_seconds) {
    deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(*opt.timeout_seconds));
  }
  std::vector<int> initial;
  switch (policy) {
    case Allocator::Trivial: initial = detail::identity_placement(g.size()); break;
    case Allocator::WpmLite: initial = detail::wpm_placement(circuit, g); break;
    case Allocator::SabreLite: {
      std::mt19937_64 rng(opt.seed);
      initial = detail::identity_placement(g.size());
      std::shuffle(initial.begin(), initial.end(), rng);
      std::vector<const GateOp*> rev;
      std::vector<std::size_t> origins;
      for (std::size_t i = circuit.ops.size(); i-- > 0;) {
        rev.push_back(&circuit.ops[i]);
        origins.push_back(i);
      }
      detail::Router refine(g, initial, deadline);
      detail::sabre_pass(refine, rev, origins, g, opt, rng);
      initial = refine.mapping();
      break;
    }
  }
  detail::Router r(g, initial, deadline);
  if (policy == Allocator::SabreLite) {
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<const GateOp*> fwd;
    std::vector<std::size_t> origins;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
      fwd.push_back(&circuit.ops[i]);
      origins.push_back(i);
    }
    detail::sabre_pass(r, fwd, origins, g, opt, rng);
  } else {
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
      r.route(circuit.ops[i]);
      r.emit(circuit.ops[i], i);
      r.check_deadline();
    }
  }
  Allocation out;
  out.circuit.ops = std::move(r.ops());
  out.circuit.initial = std::move(initial);
  out.circuit.final = r.mapping();
  out.circuit.clbits = circuit.clbits;
  out.metrics.size = out.circuit.ops.size();
  out.metrics.added_gates = out.metrics.size - circuit.ops.size();
  out.metrics.swaps = r.swaps();
  out.metrics.reverses = r.reverses();
  out.metrics.depth = circuit_depth(out.circuit);
  out.metrics.alloc_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Replays `phys` against `logical`: SWAP groups update the placement, every
/// logical op must appear exactly once, after all ops it depends on (shared
/// qubit or classical bit), on the current images of its operands with
/// its qubits adjacent (Toffoli: target adjacent to both controls), and
/// REVERSE groups must realise a CNOT against the native orientation.
inline bool verify_mapped(const GateStream& logical, const PhysicalCircuit& phys,
                          const CouplingGraph& g, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = g.size();
  if (phys.initial.size() != static_cast<std::size_t>(n)) return fail("initial placement size");
  std::vector<int> l2p = phys.initial, p2l(n, -1);
  for (int l = 0; l < n; ++l) {
    if (l2p[l] < 0 || l2p[l] >= n || p2l[l2p[l]] >= 0) return fail("initial placement is not a bijection");
    p2l[l2p[l]] = l;
  }
  std::vector<const GateOp*> lops;
  for (const auto& op : logical.ops) lops.push_back(&op);
  detail::OpDag dag = detail::op_dag(lops);
  std::vector<bool> matched(lops.size(), false);
  std::size_t count = 0;
  // The logical op `origin` may be matched now.
  auto ready = [&](std::size_t origin) {
    return origin < lops.size() && !matched[origin] && dag.indeg[origin] == 0;
  };
  auto retire = [&](std::size_t origin) {
    matched[origin] = true;
    ++count;
    for (std::size_t s : dag.succ[origin]) --dag.indeg[s];
  };
  auto match = [&](const GateOp& op, const std::vector<Int>& operands) {
    if (operands.size() != op.operands.size()) return false;
    for (std::size_t k = 0; k < operands.size(); ++k) {
      const Int want = op.gate.spaces[k] == Space::Quantum ? l2p[op.operands[k]] : op.operands[k];
      if (operands[k] != want) return false;
    }
    return true;
  };
  const auto& ops = phys.ops;
  for (std::size_t i = 0; i < ops.size();) {
    const PhysOp& p = ops[i];
    const std::string at = "op " + std::to_string(i) + ": ";
    if (p.tag == PhysOp::Tag::SwapPart) {
      if (i + 3 > ops.size()) return fail(at + "truncated swap group");
      const Int a = p.operands.at(0), b = p.operands.at(1);
      for (std::size_t k = 0; k < 3; ++k) {
        const PhysOp& q = ops[i + k];
        const std::vector<Int> want = k == 1 ? std::vector<Int>{b, a} : std::vector<Int>{a, b};
        if (q.tag != PhysOp::Tag::SwapPart || !detail::is_cnot(q.gate) || q.operands != want) {
          return fail(at + "malformed swap group");
        }
      }
      if (!g.adjacent(static_cast<int>(a), static_cast<int>(b))) return fail(at + "swap on non-adjacent vertices");
      std::swap(p2l[a], p2l[b]);
      l2p[p2l[a]] = static_cast<int>(a);
      l2p[p2l[b]] = static_cast<int>(b);
      i += 3;
      continue;
    }
    if (p.tag == PhysOp::Tag::ReversePart) {
      if (i + 5 > ops.size()) return fail(at + "truncated reverse group");
      const Int c = ops[i].operands.at(0), t = ops[i + 1].operands.at(0);
      const std::vector<std::vector<Int>> shape{{c}, {t}, {t, c}, {c}, {t}};
      for (std::size_t k = 0; k < 5; ++k) {
        const PhysOp& q = ops[i + k];
        const bool cnot = k == 2;
        if (q.tag != PhysOp::Tag::ReversePart || q.operands != shape[k] ||
            (cnot ? !detail::is_cnot(q.gate) : q.gate.name != "H")) {
          return fail(at + "malformed reverse group");
        }
      }
      const std::size_t origin = ops[i + 2].origin;
      if (!ready(origin)) return fail(at + "reverse group out of dependence order");
      const GateOp& want = *lops[origin];
      if (!detail::is_cnot(want.gate) || !match(want, {c, t})) {
        return fail(at + "reverse group does not realise its gate");
      }
      if (!g.adjacent(static_cast<int>(c), static_cast<int>(t)) ||
          !g.oriented(static_cast<int>(t), static_cast<int>(c))) {
        return fail(at + "reverse group on a non-native edge");
      }
      retire(origin);
      i += 5;
      continue;
    }
    if (!ready(p.origin)) return fail(at + "operation out of dependence order or unknown");
    const GateOp& want = *lops[p.origin];
    if (p.gate.name != want.gate.name || !match(want, p.operands)) {
      return fail(at + "does not realise logical op " + std::to_string(p.origin) + " (" +
                  want.gate.name + ")");
    }
    std::vector<int> q;
    for (std::size_t k = 0; k < p.operands.size(); ++k) {
      if (p.gate.spaces[k] == Space::Quantum) q.push_back(static_cast<int>(p.operands[k]));
    }
    if (q.size() == 2 && !g.adjacent(q[0], q[1])) return fail(at + "operands not adjacent");
    if (q.size() == 3 && !(g.adjacent(q[0], q[2]) && g.adjacent(q[1], q[2]))) {
      return fail(at + "Toffoli target not adjacent to both controls");
    }
    if (q.size() > 3) return fail(at + "too many qubit operands");
    if (g.directed() && detail::is_cnot(p.gate) && !g.oriented(q[0], q[1])) {
      return fail(at + "CNOT against the native orientation");
    }
    retire(p.origin);
    ++i;
  }
  if (count != lops.size()) {
    return fail("missing " + std::to_string(lops.size() - count) + " logical ops");
  }
  if (l2p != phys.final) return fail("final placement differs from the replay");
  return true;
}

}  // namespace paqc
