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

// Instance-level dependences between register accesses and their aggregation
// into a unit-level dependence graph.
//
// Only direct dependences are kept: an edge a -> b exists when a precedes b in
// the original schedule, both touch the same register entry, at least one of
// them writes it, and no write to that entry lies strictly between them. Two
// reads never conflict (controls commute).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "paqc/scop.hpp"

namespace paqc {

enum class DepKind { Flow, Anti, Output };

inline const char* to_string(DepKind k) {
  switch (k) {
    case DepKind::Flow: return "flow";
    case DepKind::Anti: return "anti";
    case DepKind::Output: return "output";
  }
  return "?";
}

inline DepKind classify(AccessMode src, AccessMode dst) {
  if (writes(src) && writes(dst)) return DepKind::Output;
  return writes(src) ? DepKind::Flow : DepKind::Anti;
}

struct AccessInstance {
  std::size_t unit = 0;
  std::size_t argument = 0;
  Point point;
  Point timestamp;
  std::size_t order = 0;  // rank of the gate instance in the original order
  Int register_index = 0;
  AccessMode mode = AccessMode::Read;
  Space space = Space::Quantum;

  friend bool operator==(const AccessInstance&, const AccessInstance&) = default;
};

struct DependenceEdge {
  AccessInstance source;
  AccessInstance sink;
  DepKind kind = DepKind::Flow;

  friend bool operator==(const DependenceEdge&, const DependenceEdge&) = default;
};

/// Canonical order for comparing edge lists.
inline bool edge_less(const DependenceEdge& a, const DependenceEdge& b) {
  return std::tie(a.source.order, a.source.argument, a.sink.order, a.sink.argument) <
         std::tie(b.source.order, b.source.argument, b.sink.order, b.sink.argument);
}

/// All register accesses of `scop` in original program order. Throws when a
/// single gate instance names the same register entry twice.
inline std::vector<AccessInstance> access_instances(const Scop& scop, const ParamBinding& binding) {
  std::vector<AccessInstance> out;
  const auto instances = enumerate_instances(scop, binding);
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Instance& inst = instances[k];
    const Unit& u = scop.units[inst.unit];
    const std::size_t first = out.size();
    for (std::size_t a = 0; a < u.args.size(); ++a) {
      AccessInstance ai{inst.unit, a,  inst.point,        inst.timestamp, k,
                        register_index(u, a, inst.point, binding), u.gate.modes[a],
                        u.gate.spaces[a]};
      for (std::size_t j = first; j < out.size(); ++j) {
        if (out[j].space == ai.space && out[j].register_index == ai.register_index) {
          throw Error("gate instance of " + u.name + " uses " + register_name(ai.space) + "[" +
                      std::to_string(ai.register_index) + "] twice");
        }
      }
      out.push_back(std::move(ai));
    }
  }
  return out;
}

/// Direct dependences, computed by one sweep per register entry.
inline std::vector<DependenceEdge> compute_instance_deps(const Scop& scop,
                                                         const ParamBinding& binding) {
  const auto accesses = access_instances(scop, binding);
  std::map<std::pair<Space, Int>, std::vector<std::size_t>> lanes;
  for (std::size_t k = 0; k < accesses.size(); ++k) {
    lanes[{accesses[k].space, accesses[k].register_index}].push_back(k);
  }
  std::vector<DependenceEdge> edges;
  for (const auto& [key, lane] : lanes) {
    std::optional<std::size_t> writer;
    std::vector<std::size_t> readers;  // reads since the last write
    for (std::size_t k : lane) {
      const AccessInstance& a = accesses[k];
      if (writes(a.mode)) {
        if (writer) edges.push_back({accesses[*writer], a, DepKind::Output});
        for (std::size_t r : readers) edges.push_back({accesses[r], a, DepKind::Anti});
        writer = k;
        readers.clear();
      } else {
        if (writer) edges.push_back({accesses[*writer], a, DepKind::Flow});
        readers.push_back(k);
      }
    }
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  return edges;
}

/// Straight transcription of the definition over all access pairs; quadratic,
/// used as the reference for compute_instance_deps.
inline std::vector<DependenceEdge> brute_force_deps(const Scop& scop, const ParamBinding& binding) {
  const auto acc = access_instances(scop, binding);
  std::vector<DependenceEdge> edges;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    for (std::size_t j = 0; j < acc.size(); ++j) {
      const auto& a = acc[i];
      const auto& b = acc[j];
      if (a.order >= b.order) continue;
      if (a.space != b.space || a.register_index != b.register_index) continue;
      if (!writes(a.mode) && !writes(b.mode)) continue;
      bool intermediate = false;
      for (const auto& c : acc) {
        if (c.order > a.order && c.order < b.order && c.space == a.space &&
            c.register_index == a.register_index && writes(c.mode)) {
          intermediate = true;
          break;
        }
      }
      if (!intermediate) edges.push_back({a, b, classify(a.mode, b.mode)});
    }
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  return edges;
}

/// Dependences of one kind between two units.
struct DepRelation {
  std::size_t src = 0;
  std::size_t dst = 0;
  DepKind kind = DepKind::Flow;
  bool uniform = false;
  Point distance;  // sink point minus source point, when uniform
  std::vector<std::pair<Point, Point>> instances;
};

struct DepGraph {
  std::size_t num_units = 0;
  std::vector<DepRelation> relations;
  std::vector<std::size_t> scc_of;             // unit -> component
  std::vector<std::vector<std::size_t>> sccs;  // components in topological order

  std::size_t relation_count() const { return relations.size(); }
};

namespace detail {

/// Tarjan's algorithm; components are renumbered into a topological order
/// (Kahn's algorithm, smallest unit index first among ready components).
inline void condense(DepGraph& g) {
  const std::size_t n = g.num_units;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& r : g.relations) adj[r.src].push_back(r.dst);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> comp(n, 0);
  std::size_t ncomp = 0;
  int counter = 0;
  auto strong = [&](auto&& self, std::size_t v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) strong(strong, v);
  }
  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::vector<std::set<std::size_t>> succ(ncomp);
  std::vector<std::size_t> indeg(ncomp, 0);
  for (const auto& r : g.relations) {
    std::size_t a = comp[r.src], b = comp[r.dst];
    if (a != b && succ[a].insert(b).second) ++indeg[b];
  }
  std::set<std::pair<std::size_t, std::size_t>> ready;  // (smallest member, comp)
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (indeg[c] == 0) ready.insert({members[c].front(), c});
  }
  std::vector<std::size_t> rank(ncomp, 0);
  g.sccs.clear();
  while (!ready.empty()) {
    auto [m, c] = *ready.begin();
    ready.erase(ready.begin());
    rank[c] = g.sccs.size();
    g.sccs.push_back(members[c]);
    for (std::size_t d : succ[c]) {
      if (--indeg[d] == 0) ready.insert({members[d].front(), d});
    }
  }
  g.scc_of.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) g.scc_of[v] = rank[comp[v]];
}

}  // namespace detail

/// Groups edges by (source unit, sink unit, kind).
inline DepGraph aggregate_relations(const std::vector<DependenceEdge>& edges, std::size_t num_units) {
  DepGraph g;
  g.num_units = num_units;
  std::map<std::tuple<std::size_t, std::size_t, DepKind>, std::size_t> slot;
  for (const auto& e : edges) {
    auto key = std::make_tuple(e.source.unit, e.sink.unit, e.kind);
    auto [it, fresh] = slot.emplace(key, g.relations.size());
    if (fresh) g.relations.push_back({e.source.unit, e.sink.unit, e.kind, true, {}, {}});
    g.relations[it->second].instances.emplace_back(e.source.point, e.sink.point);
  }
  for (auto& r : g.relations) {
    std::optional<Point> d;
    for (const auto& [s, t] : r.instances) {
      if (s.size() != t.size()) {
        r.uniform = false;
        break;
      }
      Point diff(s.size());
      for (std::size_t k = 0; k < s.size(); ++k) diff[k] = t[k] - s[k];
      if (!d) {
        d = diff;
      } else if (*d != diff) {
        r.uniform = false;
        break;
      }
    }
    if (r.uniform && d) r.distance = *d;
  }
  detail::condense(g);
  return g;
}

inline DepGraph dependence_graph(const Scop& scop, const ParamBinding& binding) {
  return aggregate_relations(compute_instance_deps(scop, binding), scop.units.size());
}

inline std::string format_point(const Point& p) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(p[k]);
  }
  return s;
}

/// Line-oriented debug export:
///   S1_1[3]@<3,0> -> S1_2[3]@<3,1> flow q[3]
inline std::string format_edges(const Scop& scop, const std::vector<DependenceEdge>& edges) {
  std::ostringstream os;
  for (const auto& e : edges) {
    os << scop.units[e.source.unit].name << "[" << format_point(e.source.point) << "]@<"
       << format_point(e.source.timestamp) << "> -> " << scop.units[e.sink.unit].name << "["
       << format_point(e.sink.point) << "]@<" << format_point(e.sink.timestamp) << "> "
       << to_string(e.kind) << " " << register_name(e.source.space) << "["
       << e.source.register_index << "]\n";
  }
  return os.str();
}

}  // namespace paqc
