// Copyright 2026 The gsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsep/error.hpp"
#include "gsep/linalg.hpp"
#include "gsep/tolerance.hpp"

namespace gsep {

enum class Field { Real, Complex };

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Vertex v_(ij) under a cut: `outer` = i, `inner` = j, both 1-based.
struct VertexCoord {
  Index outer;
  Index inner;

  friend bool operator==(const VertexCoord&, const VertexCoord&) = default;
};

/// 1-based vertex -> (i, j).
inline VertexCoord to_coord(int vertex, const Cut& cut) {
  const Index f = vertex - 1;
  return {cut.outer_of(f) + 1, cut.inner_of(f) + 1};
}

/// (i, j) -> 1-based vertex, (i-1) * 2^(n-m) + j.
inline int to_vertex(VertexCoord c, const Cut& cut) {
  return static_cast<int>((c.outer - 1) * cut.inner_dim() + c.inner);
}

/// Undirected weighted graph on 2^n vertices labelled 1..2^n; vertex v is the
/// computational basis state with bit string v-1 (first qubit most
/// significant).
///
/// Each unordered pair is stored once as (min, max). A complex weight w on
/// u -> v means w on (u, v) and conj(w) on (v, u).
class WeightedGraph {
 public:
  using EdgeMap = std::map<std::pair<int, int>, cd>;
  using LoopMap = std::map<int, cd>;

  WeightedGraph(int n_qubits, Field field) : n_(n_qubits), field_(field) {
    if (n_ < 1 || n_ > kMaxQubits)
      throw Error(ErrorKind::Range, "qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                        "], got " + std::to_string(n_));
  }

  int qubits() const noexcept { return n_; }
  Field field() const noexcept { return field_; }
  int vertex_count() const noexcept { return 1 << n_; }
  const EdgeMap& edges() const noexcept { return edges_; }
  const LoopMap& loops() const noexcept { return loops_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Adds the edge u -> v with weight w. Throws on out-of-range vertices,
  /// self pairs, zero weights, duplicates, or imaginary weights in a real
  /// graph.
  void add_edge(int u, int v, cd w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
      throw Error(ErrorKind::InvalidArgument, "edge endpoints coincide at vertex " +
                                                  std::to_string(u) + "; use a loop");
    if (w == cd(0.0, 0.0))
      throw Error(ErrorKind::InvalidArgument, "zero-weight edge " + pair_name(u, v));
    check_field(w);
    auto key = u < v ? std::pair{u, v} : std::pair{v, u};
    if (edges_.count(key))
      throw Error(ErrorKind::DuplicateEntry, "duplicate edge " + pair_name(key.first, key.second));
    edges_.emplace(key, u < v ? w : std::conj(w));
  }

  /// Loop weights are real in both fields; zero loops are not stored.
  void add_loop(int v, cd w) {
    check_vertex(v);
    if (w.imag() != 0.0)
      throw Error(ErrorKind::FieldMismatch, "loop weight on vertex " + std::to_string(v) +
                                                " has an imaginary part");
    if (loops_.count(v))
      throw Error(ErrorKind::DuplicateEntry, "duplicate loop on vertex " + std::to_string(v));
    if (w.real() != 0.0) loops_.emplace(v, w);
  }

  bool has_edge(int u, int v) const {
    return u != v && edges_.count(u < v ? std::pair{u, v} : std::pair{v, u}) != 0;
  }

  /// Weight carried from u to v (0 when absent).
  cd weight(int u, int v) const {
    auto it = edges_.find(u < v ? std::pair{u, v} : std::pair{v, u});
    if (it == edges_.end()) return 0.0;
    return u < v ? it->second : std::conj(it->second);
  }

  cd loop(int v) const {
    auto it = loops_.find(v);
    return it == loops_.end() ? cd(0.0) : it->second;
  }

  /// Unit weights, no loops.
  bool is_simple() const {
    if (!loops_.empty()) return false;
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const auto& e) { return e.second == cd(1.0, 0.0); });
  }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void check_vertex(int v) const {
    if (v < 1 || v > vertex_count())
      throw Error(ErrorKind::Range, "vertex " + std::to_string(v) + " outside [1, " +
                                        std::to_string(vertex_count()) + "]");
  }

  void check_field(cd w) const {
    if (field_ == Field::Real && w.imag() != 0.0)
      throw Error(ErrorKind::FieldMismatch, "imaginary weight in a real-field graph");
  }

  static std::string pair_name(int u, int v) {
    return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
  }

  int n_;
  Field field_;
  EdgeMap edges_;
  LoopMap loops_;
};

/// Field-specific Laplacian.
///
/// Real:    L_ii = sum_l a_il + loop_i,   L_ij = -a_ij.
/// Complex: L_ii = sum_l |a_il| + loop_i, L_ij = a_ij, L_ji = conj(a_ij).
inline HermitianMatrix laplacian(const WeightedGraph& g) {
  const Index dim = g.vertex_count();
  CMatrix l = CMatrix::Zero(dim, dim);
  std::vector<double> diag(static_cast<std::size_t>(dim), 0.0);
  const bool real = g.field() == Field::Real;
  for (const auto& [key, w] : g.edges()) {
    const Index u = key.first - 1;
    const Index v = key.second - 1;
    if (real) {
      l(u, v) = l(v, u) = cd(-w.real(), 0.0);
      diag[u] += w.real();
      diag[v] += w.real();
    } else {
      l(u, v) = w;
      l(v, u) = std::conj(w);
      diag[u] += std::abs(w);
      diag[v] += std::abs(w);
    }
  }
  for (const auto& [v, w] : g.loops()) diag[v - 1] += w.real();
  for (Index i = 0; i < dim; ++i) l(i, i) = cd(diag[i], 0.0);
  return HermitianMatrix(std::move(l));
}

/// rho_G = L / Tr L. Throws ZeroOrNegativeTrace or NotPositiveSemidefinite when
/// the graph does not define a quantum state.
inline DensityMatrix density_from_graph(const WeightedGraph& g,
                                        const Tolerance& tol = kDefaultTolerance) {
  HermitianMatrix l = laplacian(g);
  const double tr = l.trace();
  if (!(tr > tol.structural * std::max(1.0, l.scale())))
    throw Error(ErrorKind::ZeroOrNegativeTrace,
                "Laplacian trace " + std::to_string(tr) + " is not positive");
  CMatrix rho = l.matrix() / tr;
  return DensityMatrix::validate(HermitianMatrix(std::move(rho)), tol);
}

/// Sorted adjacency lists (open neighbourhoods), 1-based, index 0 unused.
inline std::vector<std::vector<int>> adjacency(const WeightedGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (const auto& [key, w] : g.edges()) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

inline std::vector<int> open_neighbourhood(const WeightedGraph& g, int v) {
  if (v < 1 || v > g.vertex_count())
    throw Error(ErrorKind::Range, "vertex " + std::to_string(v) + " out of range");
  std::vector<int> out;
  for (const auto& [key, w] : g.edges()) {
    if (key.first == v) out.push_back(key.second);
    if (key.second == v) out.push_back(key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Open neighbourhood plus v itself; an isolated vertex is its own neighbour.
inline std::vector<int> closed_neighbourhood(const WeightedGraph& g, int v) {
  std::vector<int> out = open_neighbourhood(g, v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

inline std::vector<int> degrees(const WeightedGraph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& [key, w] : g.edges()) {
    ++d[key.first - 1];
    ++d[key.second - 1];
  }
  return d;
}

/// Image of the ordered pair (u, v) under the per-edge partial gate: inner
/// qubits whose labels differ are flipped on both endpoints.
inline std::pair<int, int> partial_gate_pair(int u, int v, const Cut& cut) {
  const Index mask = cut.inner_dim() - 1;
  const Index a = u - 1;
  const Index b = v - 1;
  const Index flip = (a ^ b) & mask;
  return {static_cast<int>((a ^ flip) + 1), static_cast<int>((b ^ flip) + 1)};
}

/// Applies the partial quantum gate edge by edge. Each image edge keeps the
/// weight of its source (in the source's orientation); loops are unchanged.
inline WeightedGraph partial_gate_graph(const WeightedGraph& g, const Cut& cut) {
  if (cut.qubits() != g.qubits())
    throw Error(ErrorKind::DimensionMismatch, "cut and graph disagree on the qubit count");
  WeightedGraph out(g.qubits(), g.field());
  std::map<std::pair<int, int>, std::pair<int, int>> source;
  for (const auto& [key, w] : g.edges()) {
    auto [ua, ub] = partial_gate_pair(key.first, key.second, cut);
    auto image = ua < ub ? std::pair{ua, ub} : std::pair{ub, ua};
    if (auto hit = source.find(image); hit != source.end()) {
      const cd prior = out.weight(ua, ub);
      if (prior != w)
        throw Error(ErrorKind::EdgeCollision,
                    "edges (" + std::to_string(hit->second.first) + ", " +
                        std::to_string(hit->second.second) + ") and (" +
                        std::to_string(key.first) + ", " + std::to_string(key.second) +
                        ") map to the same pair with different weights");
      continue;
    }
    source.emplace(image, key);
    out.add_edge(ua, ub, w);
  }
  for (const auto& [v, w] : g.loops()) out.add_loop(v, w);
  return out;
}

}  // namespace gsep
