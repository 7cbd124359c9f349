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

// Shared test helpers: seeded random matrices and an independent eigenvalue
// route (real Jacobi on the 2n x 2n embedding of a Hermitian matrix).

#include <algorithm>
#include <cmath>
#include <vector>

#include "gsep/gsep.hpp"

namespace gsep::testing {

inline CMatrix random_complex(SplitMix64& rng, Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

inline HermitianMatrix random_hermitian(SplitMix64& rng, Index dim) {
  return HermitianMatrix::hermitize(random_complex(rng, dim, dim));
}

/// G G^dagger / tr with G of random rank in [1, dim].
inline DensityMatrix random_density(SplitMix64& rng, int qubits) {
  const Index dim = Index{1} << qubits;
  const Index rank = 1 + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(dim));
  const CMatrix g = random_complex(rng, dim, rank);
  const CMatrix m = g * g.adjoint();
  return DensityMatrix::validate(HermitianMatrix::hermitize(m / m.trace().real()));
}

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi on the
/// real symmetric embedding [[A, -B], [B, A]], whose spectrum is that of
/// A + iB with every eigenvalue doubled.
inline std::vector<double> jacobi_eigenvalues(const CMatrix& h, int max_sweeps = 100) {
  const Index n = h.rows();
  const Index m = 2 * n;
  Eigen::MatrixXd a(m, m);
  a.topLeftCorner(n, n) = h.real();
  a.topRightCorner(n, n) = -h.imag();
  a.bottomLeftCorner(n, n) = h.imag();
  a.bottomRightCorner(n, n) = h.real();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < m; ++p)
      for (Index q = p + 1; q < m; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Index p = 0; p < m; ++p)
      for (Index q = p + 1; q < m; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> all(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < all.size(); i += 2) out.push_back(0.5 * (all[i] + all[i + 1]));
  return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

/// Random graph with every vertex pair independently present.
inline WeightedGraph random_simple_graph(SplitMix64& rng, int qubits, double p = 0.5) {
  WeightedGraph g(qubits, Field::Real);
  const int nv = 1 << qubits;
  for (int u = 1; u <= nv; ++u)
    for (int v = u + 1; v <= nv; ++v)
      if (rng.uniform() < p) g.add_edge(u, v, 1.0);
  return g;
}

}  // namespace gsep::testing
