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

// Separability criteria beyond the block-decomposition solver: commuting
// blocks, edge and neighbourhood structure, partial-gate invariance,
// equivalence relations and the spectral test, plus `run_all`.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsep/graph.hpp"
#include "gsep/linalg.hpp"
#include "gsep/th1.hpp"
#include "gsep/tolerance.hpp"
#include "gsep/verdict.hpp"

namespace gsep {

namespace detail {

inline std::string vertex_label(int v, const Cut& cut) {
  const VertexCoord c = to_coord(v, cut);
  return "v(" + std::to_string(c.outer) + "," + std::to_string(c.inner) + ")";
}

inline std::string edge_label(int u, int v, const Cut& cut) {
  return vertex_label(u, cut) + "-" + vertex_label(v, cut);
}

inline std::string block_label(Index x, Index y) {
  return "A^" + std::to_string(x + 1) + "," + std::to_string(y + 1);
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline void require_same_qubits(const WeightedGraph& g, const Cut& cut) {
  if (g.qubits() != cut.qubits())
    throw Error(ErrorKind::DimensionMismatch, "graph has " + std::to_string(g.qubits()) +
                                                  " qubits, cut expects " +
                                                  std::to_string(cut.qubits()));
}

inline std::optional<Verdict> require_simple(std::string_view id, const WeightedGraph& g) {
  if (g.is_simple()) return std::nullopt;
  return Verdict::inconclusive(id, "not applicable: needs a simple graph (unit weights, no loops)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commuting blocks

/// Separable when every pair of blocks, diagonal blocks included, commutes.
inline Verdict th3_commuting_blocks(const DensityMatrix& rho, const Cut& cut,
                                    const Tolerance& tol = kDefaultTolerance) {
  BlockGrid grid = block_grid(rho.matrix(), cut);
  const Index d = grid.size();
  const double limit = tol.structural * rho.scale();
  double worst = 0.0;
  std::string worst_pair;
  for (Index a = 0; a < d * d; ++a)
    for (Index b = a + 1; b < d * d; ++b) {
      const double n = commutator_norm(grid.block(a / d, a % d), grid.block(b / d, b % d));
      if (n > worst) {
        worst = n;
        worst_pair = detail::block_label(a / d, a % d) + " and " + detail::block_label(b / d, b % d);
      }
    }
  if (worst <= limit)
    return Verdict::separable(criterion::kTh3, "all blocks commute; max commutator norm " +
                                                   detail::sci(worst));
  return Verdict::inconclusive(criterion::kTh3, worst_pair + " do not commute; norm " +
                                                    detail::sci(worst));
}

// ---------------------------------------------------------------------------
// Edge structure

/// Separable when every edge joins inner indices j, l of equal parity.
inline Verdict edge_parity_check(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  for (const auto& [key, w] : g.edges()) {
    const auto a = to_coord(key.first, cut);
    const auto b = to_coord(key.second, cut);
    if ((a.inner - b.inner) % 2 != 0)
      return Verdict::inconclusive(criterion::kEdgeParity,
                                   "edge " + detail::edge_label(key.first, key.second, cut) +
                                       " joins inner indices of different parity");
  }
  return Verdict::separable(criterion::kEdgeParity,
                            "every edge joins inner indices of equal parity");
}

/// Separable when every edge stays inside one outer index (block-diagonal rho).
/// Covers both the edge-set and the neighbourhood-set phrasing.
inline Verdict same_block_edges_check(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  for (const auto& [key, w] : g.edges())
    if (to_coord(key.first, cut).outer != to_coord(key.second, cut).outer)
      return Verdict::inconclusive(criterion::kSameBlock,
                                   "edge " + detail::edge_label(key.first, key.second, cut) +
                                       " crosses outer blocks");
  return Verdict::separable(criterion::kSameBlock, "all edges lie inside diagonal blocks");
}

/// Separable when the partial gate maps the simple graph onto itself.
inline Verdict graph_partial_gate_invariance(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(criterion::kGraphPgateInv, g)) return *na;
  for (const auto& [key, w] : g.edges()) {
    auto [ua, ub] = partial_gate_pair(key.first, key.second, cut);
    if (!g.has_edge(ua, ub))
      return Verdict::inconclusive(criterion::kGraphPgateInv,
                                   "image of " + detail::edge_label(key.first, key.second, cut) +
                                       " is " + detail::edge_label(ua, ub, cut) +
                                       ", which is not an edge");
  }
  return Verdict::separable(criterion::kGraphPgateInv, "graph is fixed by the partial gate");
}

// ---------------------------------------------------------------------------
// Density-level partial gate

inline Verdict density_partial_gate_invariance(const DensityMatrix& rho, const Cut& cut,
                                               const Tolerance& tol = kDefaultTolerance,
                                               std::string_view id = criterion::kDensityPgateInv) {
  const CMatrix image = detail::partial_gate_map<false>(rho.matrix(), cut);
  const double change = max_abs(image - rho.matrix());
  if (change <= tol.structural * std::max(1.0, rho.scale()))
    return Verdict::separable(id, "rho is fixed by the partial gate; max change " +
                                      detail::sci(change));
  return Verdict::inconclusive(id, "partial gate moves rho; max change " + detail::sci(change));
}

/// Partial gate acting only on the last qubit: the cut m = n - 1.
inline Verdict last_qubit_sigma_x_invariance(const DensityMatrix& rho,
                                             const Tolerance& tol = kDefaultTolerance) {
  const int n = rho.qubits();
  if (n < 2)
    throw Error(ErrorKind::InvalidArgument, "last-qubit test needs at least two qubits");
  return density_partial_gate_invariance(rho, Cut(n, n - 1), tol, criterion::kLastQubitSx);
}

// ---------------------------------------------------------------------------
// Neighbourhood structure

namespace detail {

// Edge v(i,j)-v(k,l) with j odd and l even needs v(i,j+1)-v(k,l-1). Returns
// the first edge whose partner is missing.
inline std::optional<std::pair<int, int>> missing_parity_partner(const WeightedGraph& g,
                                                                 const Cut& cut,
                                                                 bool off_diagonal_only) {
  for (const auto& [key, w] : g.edges()) {
    VertexCoord a = to_coord(key.first, cut);
    VertexCoord b = to_coord(key.second, cut);
    if (off_diagonal_only && a.outer == b.outer) continue;
    if ((a.inner - b.inner) % 2 == 0) continue;
    if (a.inner % 2 == 0) std::swap(a, b);
    const int pu = to_vertex({a.outer, a.inner + 1}, cut);
    const int pv = to_vertex({b.outer, b.inner - 1}, cut);
    if (!g.has_edge(pu, pv)) return key;
  }
  return std::nullopt;
}

}  // namespace detail

/// Separable when each edge v(i,j)-v(k,l) with j odd, l even has the partner
/// edge v(i,j+1)-v(k,l-1) (mirrored parity by symmetry).
inline Verdict paired_edge_parity_check(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(criterion::kPairedEdge, g)) return *na;
  if (auto miss = detail::missing_parity_partner(g, cut, false))
    return Verdict::inconclusive(criterion::kPairedEdge,
                                 "edge " + detail::edge_label(miss->first, miss->second, cut) +
                                     " has no parity-shifted partner");
  return Verdict::separable(criterion::kPairedEdge, "every mixed-parity edge has its partner");
}

/// Separable when v(i,j) in N(v(k,l)) always implies v(i,l) in N(v(k,j)).
inline Verdict neighbourhood_swap_check(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(criterion::kNbhdSwap, g)) return *na;
  for (const auto& [key, w] : g.edges()) {
    const VertexCoord a = to_coord(key.first, cut);
    const VertexCoord b = to_coord(key.second, cut);
    const int pu = to_vertex({a.outer, b.inner}, cut);
    const int pv = to_vertex({b.outer, a.inner}, cut);
    if (!g.has_edge(pu, pv))
      return Verdict::inconclusive(criterion::kNbhdSwap,
                                   "edge " + detail::edge_label(key.first, key.second, cut) +
                                       " lacks swapped partner " + detail::edge_label(pu, pv, cut));
  }
  return Verdict::separable(criterion::kNbhdSwap, "neighbourhoods are closed under index swap");
}

enum class ShiftMode { OffDiagonalOnly, AllPairs };

/// Parity-shift closure of neighbourhoods; OffDiagonalOnly checks only edges
/// between different outer indices.
inline Verdict neighbourhood_parity_shift_check(const WeightedGraph& g, const Cut& cut,
                                                ShiftMode mode) {
  const std::string_view id =
      mode == ShiftMode::OffDiagonalOnly ? criterion::kNbhdShiftOffdiag : criterion::kNbhdShiftAll;
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(id, g)) return *na;
  if (auto miss = detail::missing_parity_partner(g, cut, mode == ShiftMode::OffDiagonalOnly))
    return Verdict::inconclusive(id, detail::vertex_label(miss->first, cut) + " in N(" +
                                         detail::vertex_label(miss->second, cut) +
                                         ") has no parity-shifted counterpart");
  return Verdict::separable(id, "neighbourhoods are closed under the parity shift");
}

// ---------------------------------------------------------------------------
// Relations

/// Relation on a finite labelled carrier as a boolean matrix.
struct FiniteRelation {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> related;

  std::size_t size() const { return labels.size(); }
};

struct RelationProperties {
  bool reflexive = true;
  bool symmetric = true;
  bool transitive = true;
  bool is_equivalence() const { return reflexive && symmetric && transitive; }
  /// Equivalence classes (indices into the carrier); empty unless an
  /// equivalence.
  std::vector<std::vector<std::size_t>> classes;

  std::string summary() const {
    std::string s = std::string("reflexive=") + (reflexive ? "yes" : "no") +
                    " symmetric=" + (symmetric ? "yes" : "no") +
                    " transitive=" + (transitive ? "yes" : "no");
    if (is_equivalence()) s += " classes=" + std::to_string(classes.size());
    return s;
  }
};

inline RelationProperties relation_properties(const FiniteRelation& rel) {
  const std::size_t n = rel.size();
  RelationProperties p;
  for (std::size_t a = 0; a < n; ++a) {
    if (!rel.related[a][a]) p.reflexive = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (rel.related[a][b] != rel.related[b][a]) p.symmetric = false;
      if (!rel.related[a][b]) continue;
      for (std::size_t c = 0; c < n && p.transitive; ++c)
        if (rel.related[b][c] && !rel.related[a][c]) p.transitive = false;
    }
  }
  if (p.is_equivalence()) {
    std::vector<bool> seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[a]) continue;
      std::vector<std::size_t> cls;
      for (std::size_t b = a; b < n; ++b)
        if (rel.related[a][b]) {
          cls.push_back(b);
          seen[b] = true;
        }
      p.classes.push_back(std::move(cls));
    }
  }
  return p;
}

/// Vertices related when their open neighbourhoods have equal size.
inline FiniteRelation cardinality_relation(const WeightedGraph& g) {
  const auto deg = degrees(g);
  FiniteRelation rel;
  const std::size_t n = deg.size();
  rel.related.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    rel.labels.push_back("N(" + std::to_string(a + 1) + ")");
    for (std::size_t b = 0; b < n; ++b) rel.related[a][b] = deg[a] == deg[b];
  }
  return rel;
}

/// Blocks related when they commute.
inline FiniteRelation commuting_relation(const DensityMatrix& rho, const Cut& cut,
                                         const Tolerance& tol = kDefaultTolerance) {
  BlockGrid grid = block_grid(rho.matrix(), cut);
  const Index d = grid.size();
  const double limit = tol.structural * rho.scale();
  FiniteRelation rel;
  const auto n = static_cast<std::size_t>(d * d);
  rel.related.assign(n, std::vector<bool>(n, false));
  for (Index a = 0; a < d * d; ++a) {
    rel.labels.push_back(detail::block_label(a / d, a % d));
    for (Index b = 0; b < d * d; ++b)
      rel.related[a][b] =
          commutator_norm(grid.block(a / d, a % d), grid.block(b / d, b % d)) <= limit;
  }
  return rel;
}

/// Fires when all neighbourhood cardinalities coincide (one class).
inline Verdict neighbourhood_cardinality_equivalence(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(criterion::kNbhdCardEquiv, g)) return *na;
  const RelationProperties p = relation_properties(cardinality_relation(g));
  if (p.is_equivalence() && p.classes.size() == 1)
    return Verdict::separable(criterion::kNbhdCardEquiv,
                              "all neighbourhoods have " + std::to_string(degrees(g).front()) +
                                  " vertices; " + p.summary());
  return Verdict::inconclusive(criterion::kNbhdCardEquiv,
                               "neighbourhood sizes differ; " + p.summary());
}

/// Fires when neighbourhood cardinalities are uniform within every outer row.
inline Verdict blockrow_cardinality_equivalence(const WeightedGraph& g, const Cut& cut) {
  detail::require_same_qubits(g, cut);
  if (auto na = detail::require_simple(criterion::kBlockrowCardEquiv, g)) return *na;
  const auto deg = degrees(g);
  std::string rows;
  for (Index i = 0; i < cut.outer_dim(); ++i) {
    const int first = deg[static_cast<std::size_t>(cut.flat(i, 0))];
    for (Index j = 1; j < cut.inner_dim(); ++j)
      if (deg[static_cast<std::size_t>(cut.flat(i, j))] != first)
        return Verdict::inconclusive(criterion::kBlockrowCardEquiv,
                                     "row " + std::to_string(i + 1) +
                                         " mixes neighbourhood sizes");
    rows += (i ? "," : "") + std::to_string(first);
  }
  return Verdict::separable(criterion::kBlockrowCardEquiv,
                            "uniform neighbourhood size per row: " + rows);
}

/// Fires when every block commutes with every other one, i.e. the commuting
/// relation is a single equivalence class.
inline Verdict commuting_relation_equivalence(const DensityMatrix& rho, const Cut& cut,
                                              const Tolerance& tol = kDefaultTolerance) {
  const RelationProperties p = relation_properties(commuting_relation(rho, cut, tol));
  if (p.is_equivalence() && p.classes.size() == 1)
    return Verdict::separable(criterion::kCommuteEquiv, "all blocks commute; " + p.summary());
  return Verdict::inconclusive(criterion::kCommuteEquiv, p.summary());
}

/// Fires when lambda_max(rho_G) = N1 / |E| with N1 the smallest degree.
inline Verdict spectral_neighbourhood_check(const WeightedGraph& g,
                                            const Tolerance& tol = kDefaultTolerance) {
  if (auto na = detail::require_simple(criterion::kSpectralNbhd, g)) return *na;
  if (g.edge_count() == 0)
    return Verdict::inconclusive(criterion::kSpectralNbhd, "not applicable: graph has no edges");
  const auto deg = degrees(g);
  const int n1 = *std::min_element(deg.begin(), deg.end());
  const double ratio = static_cast<double>(n1) / static_cast<double>(g.edge_count());
  const DensityMatrix rho = density_from_graph(g, tol);
  const double lambda_max = hermitian_eig(rho.hermitian()).values.maxCoeff();
  const std::string detail = "lambda_max " + detail::sci(lambda_max) + ", N1/|E| " +
                             detail::sci(ratio);
  if (std::abs(lambda_max - ratio) <= tol.spectral)
    return Verdict::separable(criterion::kSpectralNbhd, detail);
  return Verdict::inconclusive(criterion::kSpectralNbhd, detail);
}

// ---------------------------------------------------------------------------
// Catalog driver

/// A graph (with its density) or a bare density operator.
struct AnalysisInput {
  std::optional<WeightedGraph> graph;
  DensityMatrix rho;

  static AnalysisInput from_graph(WeightedGraph g, const Tolerance& tol = kDefaultTolerance) {
    DensityMatrix rho = density_from_graph(g, tol);
    return {std::move(g), std::move(rho)};
  }
  static AnalysisInput from_density(DensityMatrix rho) { return {std::nullopt, std::move(rho)}; }
};

struct CriterionOutcome {
  Verdict verdict;
  double seconds = 0.0;
};

struct CriteriaRun {
  std::vector<CriterionOutcome> outcomes;
  std::optional<Th1Witness> th1_witness;
  std::optional<Th1Witness> c1_witness;
  std::optional<double> th1_fast_path_min_eigenvalue;

  const CriterionOutcome* find(std::string_view id) const {
    for (const auto& o : outcomes)
      if (o.verdict.criterion == id) return &o;
    return nullptr;
  }
};

/// Evaluates the selected criteria in catalog order. Graph-structural criteria
/// are skipped when the input has no graph.
inline CriteriaRun run_all(const AnalysisInput& in, const Cut& cut,
                           std::span<const std::string_view> selection = criterion::kCatalog,
                           const Tolerance& tol = kDefaultTolerance) {
  cut.require_dim(in.rho.dim());
  for (auto id : selection)
    if (!criterion::in_catalog(id))
      throw Error(ErrorKind::InvalidArgument, "unknown criterion '" + std::string(id) + "'");
  CriteriaRun run;
  for (auto id : criterion::kCatalog) {
    if (std::find(selection.begin(), selection.end(), id) == selection.end()) continue;
    if (criterion::needs_graph(id) && !in.graph) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    if (id == criterion::kTh1) {
      Th1Result r = th1_check(in.rho, cut, tol);
      run.th1_fast_path_min_eigenvalue = r.fast_path_min_eigenvalue;
      run.th1_witness = std::move(r.witness);
      v = std::move(r.verdict);
    } else if (id == criterion::kC1) {
      Th1Result r = c1_check(in.rho, cut, tol);
      run.c1_witness = std::move(r.witness);
      v = std::move(r.verdict);
    } else if (id == criterion::kTh3) {
      v = th3_commuting_blocks(in.rho, cut, tol);
    } else if (id == criterion::kEdgeParity) {
      v = edge_parity_check(*in.graph, cut);
    } else if (id == criterion::kSameBlock) {
      v = same_block_edges_check(*in.graph, cut);
    } else if (id == criterion::kGraphPgateInv) {
      v = graph_partial_gate_invariance(*in.graph, cut);
    } else if (id == criterion::kDensityPgateInv) {
      v = density_partial_gate_invariance(in.rho, cut, tol);
    } else if (id == criterion::kLastQubitSx) {
      v = last_qubit_sigma_x_invariance(in.rho, tol);
    } else if (id == criterion::kPairedEdge) {
      v = paired_edge_parity_check(*in.graph, cut);
    } else if (id == criterion::kNbhdSwap) {
      v = neighbourhood_swap_check(*in.graph, cut);
    } else if (id == criterion::kNbhdShiftOffdiag) {
      v = neighbourhood_parity_shift_check(*in.graph, cut, ShiftMode::OffDiagonalOnly);
    } else if (id == criterion::kNbhdShiftAll) {
      v = neighbourhood_parity_shift_check(*in.graph, cut, ShiftMode::AllPairs);
    } else if (id == criterion::kNbhdCardEquiv) {
      v = neighbourhood_cardinality_equivalence(*in.graph, cut);
    } else if (id == criterion::kBlockrowCardEquiv) {
      v = blockrow_cardinality_equivalence(*in.graph, cut);
    } else if (id == criterion::kCommuteEquiv) {
      v = commuting_relation_equivalence(in.rho, cut, tol);
    } else if (id == criterion::kSpectralNbhd) {
      v = spectral_neighbourhood_check(*in.graph, tol);
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    run.outcomes.push_back({std::move(v), dt.count()});
  }
  return run;
}

}  // namespace gsep
