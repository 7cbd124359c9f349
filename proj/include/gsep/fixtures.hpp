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

// Exact constructors for the example graphs and the standard separable and
// entangled states, with their canonical cuts.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsep/error.hpp"
#include "gsep/graph.hpp"
#include "gsep/linalg.hpp"

namespace gsep {

enum class FixtureKind { Graph, State };
enum class Expectation { Separable, Entangled };

inline std::string_view to_string(Expectation e) {
  return e == Expectation::Separable ? "separable" : "entangled";
}

struct FixtureInfo {
  std::string_view id;
  FixtureKind kind;
  int qubits;
  /// Number of outer qubits at the canonical cut.
  int canonical_m;
  Expectation expected;
};

inline constexpr std::array<FixtureInfo, 24> kFixtures = {{
    {"g1", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"g2", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"g3", FixtureKind::Graph, 3, 2, Expectation::Separable},
    {"g_real_k4", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"g_th3_a", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"g_th3_b", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"g_parity", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"g_sameblock", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"g_pgate_3q", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"g_nbhd_weighted", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"g_swap", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"g_shift", FixtureKind::Graph, 3, 1, Expectation::Separable},
    {"k4_complete", FixtureKind::Graph, 2, 1, Expectation::Separable},
    {"ket00", FixtureKind::State, 2, 1, Expectation::Separable},
    {"ket000", FixtureKind::State, 3, 1, Expectation::Separable},
    {"cos_sin_2q", FixtureKind::State, 2, 1, Expectation::Separable},
    {"uniform_2q", FixtureKind::State, 2, 1, Expectation::Separable},
    {"one_exc_3q", FixtureKind::State, 3, 1, Expectation::Separable},
    {"two_exc_3q", FixtureKind::State, 3, 2, Expectation::Separable},
    {"werner_like", FixtureKind::State, 2, 1, Expectation::Entangled},
    {"mems", FixtureKind::State, 2, 1, Expectation::Entangled},
    {"ghz", FixtureKind::State, 3, 1, Expectation::Entangled},
    {"w3", FixtureKind::State, 3, 2, Expectation::Entangled},
    {"w_type", FixtureKind::State, 3, 2, Expectation::Entangled},
}};

inline const FixtureInfo& fixture_info(std::string_view id) {
  for (const auto& f : kFixtures)
    if (f.id == id) return f;
  throw Error(ErrorKind::InvalidArgument, "unknown fixture id '" + std::string(id) + "'");
}

inline Cut canonical_cut(std::string_view id) {
  const FixtureInfo& f = fixture_info(id);
  return Cut(f.qubits, f.canonical_m);
}

// ---------------------------------------------------------------------------
// Graphs

namespace detail {

struct EdgeSpec {
  int u, v;
  cd w;
};

inline WeightedGraph make_graph(int n, Field field, std::initializer_list<EdgeSpec> edges,
                                std::initializer_list<double> loops = {}) {
  WeightedGraph g(n, field);
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
  int v = 1;
  for (double l : loops) g.add_loop(v++, l);
  return g;
}

/// Flat vertex of v_ij at the 3-qubit cut m = 1 (4 inner indices).
constexpr int vij(int ij) { return (ij / 10 - 1) * 4 + ij % 10; }

inline WeightedGraph make_simple(int n, std::initializer_list<std::pair<int, int>> edges) {
  WeightedGraph g(n, Field::Real);
  for (auto [u, v] : edges) g.add_edge(u, v, 1.0);
  return g;
}

inline WeightedGraph make_simple_vij(std::initializer_list<std::pair<int, int>> edges) {
  WeightedGraph g(3, Field::Real);
  for (auto [a, b] : edges) g.add_edge(vij(a), vij(b), 1.0);
  return g;
}

}  // namespace detail

/// Example graph by id. Loop weights follow the printed density where the
/// figure labels disagree with it (g1, g_th3_b).
inline WeightedGraph paper_graph(std::string_view id) {
  using detail::make_graph;
  const cd i{0.0, 1.0};
  const double r5 = std::sqrt(5.0);
  const double r2 = std::numbers::sqrt2;
  const double r10 = std::sqrt(10.0);
  if (id == "g1")
    return make_graph(2, Field::Complex,
                      {{1, 2, -2.0 - i}, {1, 3, 1.0}, {1, 4, i},
                       {2, 3, -2.0 + i}, {2, 4, 1.0}, {3, 4, -2.0 - i}},
                      {1 - r5, 2 - 2 * r5, 2 - 2 * r5, 1 - r5});
  if (id == "g2")
    return make_graph(2, Field::Complex,
                      {{1, 2, 1.0}, {1, 3, i}, {1, 4, i}, {2, 3, i}, {2, 4, i}, {3, 4, 1.0}},
                      {-2, -2, -2, -2});
  if (id == "g3")
    return make_graph(3, Field::Real,
                      {{3, 4, -1.0}, {3, 5, 1.0}, {3, 6, 1.0}, {4, 5, 1.0}, {4, 6, 1.0},
                       {5, 6, -1.0}});
  if (id == "g_real_k4")
    return make_graph(2, Field::Real,
                      {{1, 2, -4.0}, {1, 3, 4.0}, {1, 4, 6.0}, {2, 3, 6.0}, {2, 4, 4.0},
                       {3, 4, -4.0}});
  if (id == "g_th3_a")
    return make_graph(2, Field::Complex,
                      {{1, 2, 1.0 + i}, {1, 3, 2.0}, {1, 4, 1.0 + i},
                       {2, 3, 1.0 - i}, {2, 4, 2.0}, {3, 4, 1.0 + i}},
                      {-2 * r2, -2 * r2, -2 * r2, -2 * r2});
  if (id == "g_th3_b") {
    const cd w = 1.0 + 3.0 * i;
    return make_graph(2, Field::Complex,
                      {{1, 2, 4.0}, {1, 3, w}, {1, 4, w}, {2, 3, w}, {2, 4, w}, {3, 4, 4.0}},
                      {-2 * r10, -2 * r10, -2 * r10, -2 * r10});
  }
  if (id == "g_parity") return detail::make_simple(3, {{1, 7}, {2, 8}, {3, 5}, {3, 7}});
  if (id == "g_sameblock")
    return detail::make_simple_vij({{11, 12}, {11, 13}, {11, 14}, {12, 13}, {12, 14}, {13, 14},
                                    {21, 22}, {21, 23}, {21, 24}, {22, 23}, {22, 24}, {23, 24}});
  if (id == "g_pgate_3q")
    return detail::make_simple(3, {{1, 5}, {1, 8}, {2, 6}, {3, 7}, {4, 5}, {4, 8}});
  if (id == "g_nbhd_weighted") {
    using detail::vij;
    return make_graph(3, Field::Complex,
                      {{vij(11), vij(12), -i}, {vij(11), vij(14), -1.0}, {vij(11), vij(13), -i},
                       {vij(12), vij(13), 1.0}, {vij(12), vij(14), -i}, {vij(13), vij(14), -i},
                       {vij(21), vij(22), i}, {vij(21), vij(23), i}, {vij(21), vij(24), -1.0},
                       {vij(22), vij(23), 1.0}, {vij(22), vij(24), i}, {vij(23), vij(24), i}},
                      {-2, -2, -2, -2, -2, -2, -2, -2});
  }
  if (id == "g_swap")
    return detail::make_simple_vij({{11, 12}, {11, 14}, {11, 24}, {11, 23}, {21, 22},
                                    {21, 13}, {21, 14}, {13, 14}, {23, 24}});
  if (id == "g_shift")
    return detail::make_simple_vij({{11, 21}, {11, 23}, {12, 22}, {12, 24},
                                    {13, 21}, {13, 23}, {14, 22}, {14, 24}});
  if (id == "k4_complete")
    return detail::make_simple(2, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const FixtureInfo& f = fixture_info(id);
  (void)f;
  throw Error(ErrorKind::InvalidArgument, "fixture '" + std::string(id) + "' is not a graph");
}

// ---------------------------------------------------------------------------
// States

/// Family parameters; unset fields take per-family defaults.
struct StateParams {
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> a;
  std::optional<double> delta;
  std::optional<int> nparam;
};

namespace detail {

inline double finite_param(std::optional<double> v, double fallback, const char* name) {
  const double x = v.value_or(fallback);
  if (!std::isfinite(x))
    throw Error(ErrorKind::Range, std::string("parameter ") + name + " must be finite");
  return x;
}

inline DensityMatrix projector(const CVector& psi) {
  const CVector u = psi / psi.norm();
  return DensityMatrix::validate(HermitianMatrix::hermitize(u * u.adjoint()));
}

inline CVector ket(int qubits, std::initializer_list<std::pair<Index, cd>> amps) {
  CVector psi = CVector::Zero(Index{1} << qubits);
  for (auto [k, c] : amps) psi(k) = c;
  return psi;
}

}  // namespace detail

/// MEMS z(delta): 1/3 below 2/3, delta/2 above.
inline double mems_z(double delta) { return delta < 2.0 / 3.0 ? 1.0 / 3.0 : delta / 2.0; }

inline DensityMatrix appendix_state(std::string_view id, const StateParams& p = {}) {
  using detail::ket;
  using detail::projector;
  const double quarter_pi = std::numbers::pi / 4.0;
  const double theta = detail::finite_param(p.theta, quarter_pi, "theta");
  const double phi = detail::finite_param(p.phi, 0.0, "phi");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cd phase = std::polar(1.0, phi);

  if (id == "ket00") return projector(ket(2, {{0, 1.0}}));
  if (id == "ket000") return projector(ket(3, {{0, 1.0}}));
  if (id == "cos_sin_2q") return projector(ket(2, {{0, c}, {1, s}}));
  if (id == "uniform_2q") return projector(ket(2, {{0, 0.5}, {1, 0.5}, {2, 0.5}, {3, 0.5}}));
  if (id == "one_exc_3q") return projector(ket(3, {{0, c}, {4, phase * s}}));
  if (id == "two_exc_3q") return projector(ket(3, {{0, c}, {6, phase * s}}));
  if (id == "ghz") return projector(ket(3, {{0, c}, {7, phase * s}}));
  if (id == "w3") return projector(ket(3, {{1, 1.0}, {2, 1.0}, {4, 1.0}}));
  if (id == "werner_like") {
    const double a = detail::finite_param(p.a, 0.5, "a");
    if (a < 0.0 || a > 1.0) throw Error(ErrorKind::Range, "werner_like needs a in [0, 1]");
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0 - a;
    m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = a / 2.0;
    return DensityMatrix::validate(HermitianMatrix(std::move(m)));
  }
  if (id == "mems") {
    const double delta = detail::finite_param(p.delta, 0.8, "delta");
    if (delta < 0.0 || delta > 1.0) throw Error(ErrorKind::Range, "mems needs delta in [0, 1]");
    const double z = mems_z(delta);
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = z;
    m(1, 1) = 1.0 - 2.0 * z;
    m(0, 3) = m(3, 0) = delta / 2.0;
    return DensityMatrix::validate(HermitianMatrix(std::move(m)));
  }
  if (id == "w_type") {
    const int n = p.nparam.value_or(1);
    if (n < 0) throw Error(ErrorKind::Range, "w_type needs n >= 0");
    const double delta = detail::finite_param(p.delta, 0.0, "delta");
    const cd e = std::polar(1.0, delta);
    const double nn = n;
    return projector(ket(3, {{4, 1.0}, {2, e * std::sqrt(nn)}, {1, e * std::sqrt(nn + 1.0)}}));
  }
  const FixtureInfo& f = fixture_info(id);
  (void)f;
  throw Error(ErrorKind::InvalidArgument, "fixture '" + std::string(id) + "' is not a state");
}

/// Density of any fixture: graphs go through density_from_graph.
inline DensityMatrix fixture_density(std::string_view id, const StateParams& p = {}) {
  if (fixture_info(id).kind == FixtureKind::Graph) return density_from_graph(paper_graph(id));
  return appendix_state(id, p);
}

}  // namespace gsep
