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

// Coupling graphs: the three 36-qubit device topologies, their structural
// properties (diameter, degree histogram, bisection) and an edge-list JSON
// format.
//
//   grid6x6      the 6x6 lattice, vertex 6r+c
//   multiring36  three 12-vertex rings A (0..11), B (12..23), C (24..35);
//                hubs A0, A3, C0, C3 and B0, B3, B6, B9; every B hub is linked
//                to one A hub and one C hub
//   tiled36      four 3x3 lattices (tile t holds 9t..9t+8, row-major) whose
//                corners facing the centre form a 4-cycle

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "paqc/error.hpp"

namespace paqc {

class CouplingGraph {
 public:
  using Edge = std::pair<int, int>;

  CouplingGraph() = default;

  /// Edges are stored as given; in directed mode (u, v) means a CNOT with
  /// control u and target v is native. Throws on self-loops, duplicates,
  /// out-of-range vertices and disconnected graphs.
  CouplingGraph(std::string name, int n, std::vector<Edge> edges, bool directed = false)
      : name_(std::move(name)), n_(n), edges_(std::move(edges)), directed_(directed), adj_(n) {
    if (n <= 0) throw Error("coupling graph needs at least one vertex");
    std::set<Edge> seen;
    for (const auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
      if (u == v) throw Error("self-loop on vertex " + std::to_string(u));
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
        throw Error("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
      }
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    dist_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int s = 0; s < n; ++s) bfs_into(s);
    for (int v = 0; v < n; ++v) {
      if (distance(0, v) < 0) throw Error("coupling graph '" + name_ + "' is not connected");
    }
  }

  const std::string& name() const { return name_; }
  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool directed() const { return directed_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int distance(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

  bool adjacent(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Native orientation of a CNOT from `control` to `target` (always true in
  /// undirected mode).
  bool oriented(int control, int target) const {
    if (!directed_) return adjacent(control, target);
    return std::find(edges_.begin(), edges_.end(), Edge{control, target}) != edges_.end();
  }

  /// Same vertices and edges with the given orientation mode.
  CouplingGraph with_directed(bool directed) const {
    return CouplingGraph(name_, n_, edges_, directed);
  }

  /// Shortest path from `from` to `to` (inclusive) avoiding `blocked`
  /// vertices other than the endpoints; neighbours are explored in increasing
  /// index order. Empty when unreachable.
  std::vector<int> path(int from, int to, const std::vector<bool>& blocked = {}) const {
    if (from == to) return {from};
    std::vector<int> parent(n_, -1);
    std::queue<int> q;
    parent[from] = from;
    q.push(from);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj_[u]) {
        if (parent[w] >= 0) continue;
        if (w != to && !blocked.empty() && blocked[w]) continue;
        parent[w] = u;
        if (w == to) {
          std::vector<int> p{to};
          while (p.back() != from) p.push_back(parent[p.back()]);
          std::reverse(p.begin(), p.end());
          return p;
        }
        q.push(w);
      }
    }
    return {};
  }

 private:
  void bfs_into(int s) {
    std::queue<int> q;
    dist_[static_cast<std::size_t>(s) * n_ + s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj_[u]) {
        int& d = dist_[static_cast<std::size_t>(s) * n_ + w];
        if (d < 0) {
          d = distance(s, u) + 1;
          q.push(w);
        }
      }
    }
  }

  std::string name_;
  int n_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = false;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
};

/// A balanced bipartition given by one side.
struct Cut {
  std::vector<int> side;

  int crossing(const CouplingGraph& g) const {
    std::vector<bool> in(g.size(), false);
    for (int v : side) in[v] = true;
    int c = 0;
    for (const auto& [u, v] : g.edges()) c += in[u] != in[v] ? 1 : 0;
    return c;
  }
};

namespace topology {

inline CouplingGraph grid6x6() {
  std::vector<CouplingGraph::Edge> e;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      if (c + 1 < 6) e.emplace_back(6 * r + c, 6 * r + c + 1);
      if (r + 1 < 6) e.emplace_back(6 * r + c, 6 * (r + 1) + c);
    }
  }
  return CouplingGraph("grid6x6", 36, std::move(e));
}

inline CouplingGraph multiring36() {
  std::vector<CouplingGraph::Edge> e;
  for (int ring = 0; ring < 3; ++ring) {
    for (int k = 0; k < 12; ++k) e.emplace_back(12 * ring + k, 12 * ring + (k + 1) % 12);
  }
  const int a0 = 0, a3 = 3, b0 = 12, b3 = 15, b6 = 18, b9 = 21, c0 = 24, c3 = 27;
  for (auto link : {CouplingGraph::Edge{a0, b0}, {a0, b3}, {a3, b6}, {a3, b9},
                    {c0, b3}, {c0, b6}, {c3, b9}, {c3, b0}}) {
    e.push_back(link);
  }
  return CouplingGraph("multiring36", 36, std::move(e));
}

inline CouplingGraph tiled36() {
  std::vector<CouplingGraph::Edge> e;
  for (int t = 0; t < 4; ++t) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const int v = 9 * t + 3 * r + c;
        if (c + 1 < 3) e.emplace_back(v, v + 1);
        if (r + 1 < 3) e.emplace_back(v, v + 3);
      }
    }
  }
  // Tiles sit in a 2x2 arrangement (0 1 / 2 3); each links the corner facing
  // the centre: tile 0 -> 8, tile 1 -> 15, tile 2 -> 20, tile 3 -> 27.
  const int c0 = 8, c1 = 9 + 6, c2 = 18 + 2, c3 = 27;
  for (auto link : {CouplingGraph::Edge{c0, c1}, {c1, c3}, {c3, c2}, {c2, c0}}) e.push_back(link);
  return CouplingGraph("tiled36", 36, std::move(e));
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames{"grid6x6", "multiring36", "tiled36"};
  return kNames;
}

inline CouplingGraph build(const std::string& name) {
  if (name == "grid6x6") return grid6x6();
  if (name == "multiring36") return multiring36();
  if (name == "tiled36") return tiled36();
  throw Error("unknown topology '" + name + "'");
}

/// Balanced cut whose crossing count equals the published bisection width.
inline std::optional<Cut> witness_cut(const std::string& name) {
  Cut c;
  if (name == "grid6x6") {
    for (int r = 0; r < 6; ++r) {
      for (int col = 0; col < 3; ++col) c.side.push_back(6 * r + col);
    }
  } else if (name == "multiring36") {
    for (int v = 0; v < 12; ++v) c.side.push_back(v);   // ring A
    for (int v = 12; v < 18; ++v) c.side.push_back(v);  // B0..B5
  } else if (name == "tiled36") {
    for (int v = 0; v < 18; ++v) c.side.push_back(v);  // tiles 0 and 1
  } else {
    return std::nullopt;
  }
  return c;
}

}  // namespace topology

struct GraphProps {
  int vertices = 0;
  std::size_t edges = 0;
  int diameter = 0;
  std::map<int, int> degree_histogram;  // degree -> vertex count
  std::optional<int> witness_bisection;
  int searched_bisection = 0;  // best balanced cut found by randomized search

  int high_degree_vertices(int min_degree = 3) const {
    int c = 0;
    for (const auto& [d, k] : degree_histogram) c += d >= min_degree ? k : 0;
    return c;
  }
};

/// Smallest balanced cut found by `trials` randomized restarts of pairwise
/// swap descent (Kernighan-Lin style). An upper bound on the bisection width.
inline Cut search_bisection(const CouplingGraph& g, int trials = 64, std::uint64_t seed = 1) {
  const int n = g.size();
  std::mt19937_64 rng(seed);
  Cut best;
  int best_cut = -1;
  if (n < 2) return best;
  std::vector<int> order(n);
  for (int trial = 0; trial < trials; ++trial) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> in(n, false);
    for (int k = 0; k < n / 2; ++k) in[order[k]] = true;
    // gain of moving v to the other side = external - internal edges
    auto gain = [&](int v) {
      int ext = 0, intl = 0;
      for (int w : g.neighbors(v)) (in[w] != in[v] ? ext : intl) += 1;
      return ext - intl;
    };
    for (bool improved = true; improved;) {
      improved = false;
      int best_delta = 0, ba = -1, bb = -1;
      for (int a = 0; a < n; ++a) {
        if (!in[a]) continue;
        for (int b = 0; b < n; ++b) {
          if (in[b]) continue;
          int delta = gain(a) + gain(b) - (g.adjacent(a, b) ? 2 : 0);
          if (delta > best_delta) {
            best_delta = delta;
            ba = a;
            bb = b;
          }
        }
      }
      if (ba >= 0) {
        in[ba] = false;
        in[bb] = true;
        improved = true;
      }
    }
    Cut c;
    for (int v = 0; v < n; ++v) {
      if (in[v]) c.side.push_back(v);
    }
    const int value = c.crossing(g);
    if (best_cut < 0 || value < best_cut) {
      best_cut = value;
      best = std::move(c);
    }
  }
  return best;
}

inline GraphProps graph_props(const CouplingGraph& g, int search_trials = 64) {
  GraphProps p;
  p.vertices = g.size();
  p.edges = g.edges().size();
  for (int u = 0; u < g.size(); ++u) {
    for (int v = 0; v < g.size(); ++v) p.diameter = std::max(p.diameter, g.distance(u, v));
    ++p.degree_histogram[g.degree(u)];
  }
  if (auto w = topology::witness_cut(g.name()); w && g.size() == 36) {
    p.witness_bisection = w->crossing(g);
  }
  p.searched_bisection = search_bisection(g, search_trials).crossing(g);
  return p;
}

// ---- JSON edge lists: {"name": "...", "n": 36, "edges": [[0,1], ...]} ----

inline nlohmann::json to_json(const CouplingGraph& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["n"] = g.size();
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  if (g.directed()) j["directed"] = true;
  return j;
}

inline CouplingGraph graph_from_json(const nlohmann::json& j) {
  try {
    std::vector<CouplingGraph::Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return CouplingGraph(j.value("name", std::string("custom")), j.at("n").get<int>(),
                         std::move(edges), j.value("directed", false));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad topology JSON: ") + e.what());
  }
}

inline CouplingGraph read_graph(std::istream& in) {
  try {
    return graph_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("bad topology JSON: ") + e.what());
  }
}

inline void write_graph(std::ostream& out, const CouplingGraph& g) { out << to_json(g).dump() << "\n"; }

}  // namespace paqc
