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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gsep/criteria.hpp"
#include "gsep/fixtures.hpp"
#include "gsep/harness.hpp"
#include "support.hpp"

using namespace gsep;
using Catch::Matchers::WithinAbs;

namespace {

const cd I{0.0, 1.0};

WeightedGraph simple(int n, std::initializer_list<std::pair<int, int>> edges) {
  WeightedGraph g(n, Field::Real);
  for (auto [u, v] : edges) g.add_edge(u, v, 1.0);
  return g;
}

// Flat index of v_ij for n = 3, m = 1.
int vij(int i, int j) { return (i - 1) * 4 + j; }

DensityMatrix rho_of(std::string_view id) { return fixture_density(id); }

}  // namespace

TEST_CASE("th3 on the commuting-block examples", "[criteria]") {
  CHECK(th3_commuting_blocks(rho_of("g_th3_a"), Cut(2, 1)).fired());
  CHECK(th3_commuting_blocks(rho_of("g_th3_b"), Cut(2, 1)).fired());
  const Verdict ghz = th3_commuting_blocks(appendix_state("ghz"), Cut(3, 2));
  CHECK_FALSE(ghz.fired());
  CHECK(ghz.detail.find("A^1,4 and A^4,1") != std::string::npos);
  CHECK_FALSE(th3_commuting_blocks(rho_of("g1"), Cut(2, 1)).fired());
}

TEST_CASE("edge parity", "[criteria]") {
  CHECK(edge_parity_check(paper_graph("g_parity"), Cut(3, 1)).fired());
  CHECK_FALSE(edge_parity_check(simple(3, {{vij(1, 1), vij(1, 2)}}), Cut(3, 1)).fired());
  WeightedGraph loops_only(2, Field::Real);
  loops_only.add_loop(1, 1.0);
  CHECK(edge_parity_check(loops_only, Cut(2, 1)).fired());
  CHECK_THROWS_AS(edge_parity_check(paper_graph("g1"), Cut(3, 1)), Error);
}

TEST_CASE("same-block edges", "[criteria]") {
  CHECK(same_block_edges_check(paper_graph("g_sameblock"), Cut(3, 1)).fired());
  CHECK(same_block_edges_check(paper_graph("g_nbhd_weighted"), Cut(3, 1)).fired());
  CHECK_FALSE(same_block_edges_check(simple(3, {{vij(1, 1), vij(2, 1)}}), Cut(3, 1)).fired());
}

TEST_CASE("graph partial-gate invariance", "[criteria]") {
  CHECK(graph_partial_gate_invariance(paper_graph("g_pgate_3q"), Cut(3, 1)).fired());
  CHECK_FALSE(graph_partial_gate_invariance(simple(2, {{1, 4}}), Cut(2, 1)).fired());
  CHECK(graph_partial_gate_invariance(WeightedGraph(2, Field::Real), Cut(2, 1)).fired());
  const Verdict weighted = graph_partial_gate_invariance(paper_graph("g1"), Cut(2, 1));
  CHECK_FALSE(weighted.fired());
  CHECK(weighted.detail.find("simple graph") != std::string::npos);
}

TEST_CASE("density partial-gate invariance and the last-qubit corollary", "[criteria]") {
  CMatrix blocks = CMatrix::Zero(4, 4);
  blocks << 0.3, 0.1, 0, 0, 0.1, 0.2, 0, 0, 0, 0, 0.25, -0.05, 0, 0, -0.05, 0.25;
  const DensityMatrix sym = DensityMatrix::validate(HermitianMatrix(blocks));
  CHECK(density_partial_gate_invariance(sym, Cut(2, 1)).fired());
  CHECK(density_partial_gate_invariance(rho_of("g3"), Cut(3, 2)).fired());
  CHECK_FALSE(density_partial_gate_invariance(rho_of("g1"), Cut(2, 1)).fired());

  CHECK(last_qubit_sigma_x_invariance(appendix_state("uniform_2q")).fired());
  CHECK_FALSE(last_qubit_sigma_x_invariance(appendix_state("ghz")).fired());
  CMatrix diag = CMatrix::Zero(8, 8);
  for (Index k = 0; k < 8; ++k) diag(k, k) = 0.125;
  const Verdict d = last_qubit_sigma_x_invariance(DensityMatrix::validate(HermitianMatrix(diag)));
  CHECK(d.fired());
  CHECK(d.criterion == "last-qubit-sx");
}

TEST_CASE("paired-edge parity", "[criteria]") {
  CHECK(paired_edge_parity_check(paper_graph("g_shift"), Cut(3, 1)).fired());
  CHECK_FALSE(paired_edge_parity_check(simple(3, {{vij(1, 1), vij(2, 2)}}), Cut(3, 1)).fired());
  CHECK(paired_edge_parity_check(simple(3, {{vij(1, 1), vij(2, 2)}, {vij(1, 2), vij(2, 1)}}),
                                 Cut(3, 1))
            .fired());
  CHECK(paired_edge_parity_check(WeightedGraph(3, Field::Real), Cut(3, 1)).fired());
}

TEST_CASE("neighbourhood swap", "[criteria]") {
  const WeightedGraph g = paper_graph("g_swap");
  CHECK(neighbourhood_swap_check(g, Cut(3, 1)).fired());
  // Drop (v21, v13): (v11, v23) loses its swapped partner.
  WeightedGraph cut_down(3, Field::Real);
  for (const auto& [key, w] : g.edges())
    if (key != std::pair{vij(1, 3), vij(2, 1)}) cut_down.add_edge(key.first, key.second, w);
  const Verdict v = neighbourhood_swap_check(cut_down, Cut(3, 1));
  CHECK_FALSE(v.fired());
  CHECK(v.detail.find("v(1,1)-v(2,3)") != std::string::npos);
  CHECK(neighbourhood_swap_check(paper_graph("g_sameblock"), Cut(3, 1)).fired());
}

TEST_CASE("neighbourhood parity shift", "[criteria]") {
  const WeightedGraph g = paper_graph("g_shift");
  CHECK(neighbourhood_parity_shift_check(g, Cut(3, 1), ShiftMode::OffDiagonalOnly).fired());
  CHECK(neighbourhood_parity_shift_check(g, Cut(3, 1), ShiftMode::AllPairs).fired());
  const WeightedGraph lone = simple(3, {{vij(1, 1), vij(2, 2)}});
  CHECK_FALSE(neighbourhood_parity_shift_check(lone, Cut(3, 1), ShiftMode::OffDiagonalOnly).fired());
  // A same-row mixed-parity edge only matters in AllPairs mode.
  const WeightedGraph row = simple(3, {{vij(1, 1), vij(1, 2)}, {vij(1, 1), vij(1, 4)}});
  CHECK(neighbourhood_parity_shift_check(row, Cut(3, 1), ShiftMode::OffDiagonalOnly).fired());
  CHECK_FALSE(neighbourhood_parity_shift_check(row, Cut(3, 1), ShiftMode::AllPairs).fired());
}

TEST_CASE("relation properties", "[criteria]") {
  FiniteRelation eq{{"a", "b", "c"}, {{true, false, false}, {false, true, false}, {false, false, true}}};
  const RelationProperties p = relation_properties(eq);
  CHECK(p.is_equivalence());
  CHECK(p.classes.size() == 3);

  FiniteRelation chain{{"a", "b", "c"}, {{true, true, false}, {true, true, true}, {false, true, true}}};
  const RelationProperties q = relation_properties(chain);
  CHECK(q.reflexive);
  CHECK(q.symmetric);
  CHECK_FALSE(q.transitive);
  CHECK(q.classes.empty());

  FiniteRelation lopsided{{"a", "b"}, {{false, true}, {false, true}}};
  const RelationProperties r = relation_properties(lopsided);
  CHECK_FALSE(r.reflexive);
  CHECK_FALSE(r.symmetric);

  const RelationProperties ghz = relation_properties(commuting_relation(appendix_state("ghz"), Cut(3, 2)));
  CHECK(ghz.reflexive);
  CHECK(ghz.symmetric);
  CHECK_FALSE(ghz.transitive);
}

TEST_CASE("same-cardinality is always an equivalence", "[criteria][property]") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedGraph g = testing::random_simple_graph(rng, 2 + trial % 3, rng.uniform());
    CHECK(relation_properties(cardinality_relation(g)).is_equivalence());
  }
}

TEST_CASE("neighbourhood cardinality equivalence", "[criteria]") {
  CHECK(neighbourhood_cardinality_equivalence(paper_graph("k4_complete"), Cut(2, 1)).fired());
  CHECK_FALSE(neighbourhood_cardinality_equivalence(simple(2, {{1, 2}, {2, 3}, {3, 4}}), Cut(2, 1)).fired());
  CHECK(neighbourhood_cardinality_equivalence(simple(2, {{1, 2}, {3, 4}}), Cut(2, 1)).fired());
}

TEST_CASE("block-row cardinality equivalence", "[criteria]") {
  CHECK(blockrow_cardinality_equivalence(paper_graph("g_sameblock"), Cut(3, 1)).fired());
  const WeightedGraph mixed = simple(3, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {7, 8}});
  const Verdict v = blockrow_cardinality_equivalence(mixed, Cut(3, 1));
  CHECK(v.fired());
  CHECK(v.detail.find("3,1") != std::string::npos);
  CHECK_FALSE(blockrow_cardinality_equivalence(simple(3, {{1, 2}}), Cut(3, 1)).fired());
}

TEST_CASE("commuting-relation equivalence", "[criteria]") {
  CHECK(commuting_relation_equivalence(rho_of("g_th3_a"), Cut(2, 1)).fired());
  CMatrix diag = CMatrix::Zero(4, 4);
  for (Index k = 0; k < 4; ++k) diag(k, k) = 0.25;
  CHECK(commuting_relation_equivalence(DensityMatrix::validate(HermitianMatrix(diag)), Cut(2, 1)).fired());
  const Verdict ghz = commuting_relation_equivalence(appendix_state("ghz"), Cut(3, 2));
  CHECK_FALSE(ghz.fired());
  CHECK(ghz.detail.find("transitive=no") != std::string::npos);
  // Equivalence with several classes is still not enough.
  const Verdict g1 = commuting_relation_equivalence(rho_of("g1"), Cut(2, 1));
  CHECK_FALSE(g1.fired());
}

TEST_CASE("spectral neighbourhood test", "[criteria]") {
  const WeightedGraph matching = simple(2, {{1, 2}, {3, 4}});
  CHECK(spectral_neighbourhood_check(matching).fired());
  CHECK_THAT(hermitian_eig(density_from_graph(matching).hermitian()).values.maxCoeff(),
             WithinAbs(0.5, 1e-12));
  const WeightedGraph star = simple(2, {{1, 2}, {1, 3}, {1, 4}});
  CHECK_THAT(hermitian_eig(density_from_graph(star).hermitian()).values.maxCoeff(),
             WithinAbs(2.0 / 3.0, 1e-12));
  CHECK_FALSE(spectral_neighbourhood_check(star).fired());
  CHECK_FALSE(spectral_neighbourhood_check(paper_graph("k4_complete")).fired());
  CHECK_FALSE(spectral_neighbourhood_check(WeightedGraph(2, Field::Real)).fired());
}

TEST_CASE("same-block implies th3 for simple 2-qubit graphs", "[criteria][property]") {
  for (int mask = 0; mask < 64; ++mask) {
    WeightedGraph g(2, Field::Real);
    int bit = 0;
    for (int u = 1; u <= 4; ++u)
      for (int v = u + 1; v <= 4; ++v)
        if (mask >> bit++ & 1) g.add_edge(u, v, 1.0);
    if (g.edge_count() == 0) continue;
    if (same_block_edges_check(g, Cut(2, 1)).fired())
      CHECK(th3_commuting_blocks(density_from_graph(g), Cut(2, 1)).fired());
  }
}

TEST_CASE("same-block does not imply th3 beyond two qubits", "[criteria]") {
  // Edge (1,2) on row 1 and (2,3) on row 2 (vertices 6, 7): block diagonal,
  // but the two edge Laplacians share inner index 2 and do not commute, so
  // the strict reading of th3 stays silent.
  const WeightedGraph g = simple(3, {{1, 2}, {6, 7}});
  CHECK(same_block_edges_check(g, Cut(3, 1)).fired());
  CHECK_FALSE(th3_commuting_blocks(density_from_graph(g), Cut(3, 1)).fired());
}

TEST_CASE("edge parity implies th3 when the inner factor is one qubit", "[criteria][property]") {
  SplitMix64 rng(23);
  int fired = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 3;
    const WeightedGraph g = testing::random_simple_graph(rng, n, 0.25);
    if (g.edge_count() == 0) continue;
    const Cut cut(n, n - 1);
    if (!edge_parity_check(g, cut).fired()) continue;
    ++fired;
    CHECK(th3_commuting_blocks(density_from_graph(g), cut).fired());
  }
  CHECK(fired > 5);
}

TEST_CASE("th1 verdict survives diagonal phase changes of the inner basis", "[criteria][property]") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = trial % 2 ? fixture_density("g1") : testing::random_density(rng, 2);
    const Cut cut(2, 1);
    CMatrix u = CMatrix::Zero(4, 4);
    const cd p0 = std::polar(1.0, rng.uniform(0.0, 6.28));
    const cd p1 = std::polar(1.0, rng.uniform(0.0, 6.28));
    for (Index x = 0; x < 2; ++x) {
      u(cut.flat(x, 0), cut.flat(x, 0)) = p0;
      u(cut.flat(x, 1), cut.flat(x, 1)) = p1;
    }
    const DensityMatrix turned =
        DensityMatrix::validate(HermitianMatrix::hermitize(u * rho.matrix() * u.adjoint()));
    CHECK(th1_check(rho, cut).verdict.fired() == th1_check(turned, cut).verdict.fired());
  }
}

TEST_CASE("a feasible fast path is accepted without sweeps", "[criteria][property]") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const DensityMatrix raw = testing::random_density(rng, 2);
    const CMatrix mixed = 0.3 * raw.matrix() + 0.7 * CMatrix::Identity(4, 4) / 4.0;
    const DensityMatrix rho = DensityMatrix::validate(HermitianMatrix::hermitize(mixed));
    const Th1Result r = th1_check(rho, Cut(2, 1));
    if (r.fast_path_min_eigenvalue >= 0.0) {
      CHECK(r.verdict.fired());
      CHECK(r.iterations == 0);
    }
  }
}

TEST_CASE("run_all", "[criteria]") {
  const CriteriaRun g1 = run_all(AnalysisInput::from_graph(paper_graph("g1")), Cut(2, 1));
  REQUIRE(g1.outcomes.size() == criterion::kCatalog.size());
  for (std::size_t k = 0; k < g1.outcomes.size(); ++k)
    CHECK(g1.outcomes[k].verdict.criterion == criterion::kCatalog[k]);
  CHECK(g1.find("th1")->verdict.fired());
  CHECK_FALSE(g1.find("th3")->verdict.fired());
  CHECK_FALSE(g1.find("c1")->verdict.fired());
  CHECK(g1.th1_witness.has_value());

  const CriteriaRun th3a = run_all(AnalysisInput::from_graph(paper_graph("g_th3_a")), Cut(2, 1));
  CHECK(th3a.find("th1")->verdict.fired());
  CHECK(th3a.find("th3")->verdict.fired());

  const CriteriaRun ghz = run_all(AnalysisInput::from_density(appendix_state("ghz")), Cut(3, 1));
  CHECK(ghz.outcomes.size() == 6);
  for (const auto& o : ghz.outcomes) CHECK_FALSE(o.verdict.fired());

  const CriteriaRun g3 = run_all(AnalysisInput::from_graph(paper_graph("g3")), Cut(3, 2));
  CHECK(g3.find("th1")->verdict.fired());
  CHECK(g3.find("density-pgate-inv")->verdict.fired());

  const std::array<std::string_view, 2> pick = {"th3", "edge-parity"};
  const CriteriaRun some = run_all(AnalysisInput::from_graph(paper_graph("g1")), Cut(2, 1), pick);
  CHECK(some.outcomes.size() == 2);
  const std::array<std::string_view, 1> bogus = {"nope"};
  CHECK_THROWS_AS(run_all(AnalysisInput::from_graph(paper_graph("g1")), Cut(2, 1), bogus), Error);
  CHECK_THROWS_AS(run_all(AnalysisInput::from_graph(paper_graph("g1")), Cut(3, 1)), Error);
}
