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

// Criterion-independent ground truth: PPT test, pure-state detection and
// Schmidt rank.

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/SVD>

#include "gsep/linalg.hpp"
#include "gsep/tolerance.hpp"

namespace gsep {

struct PptResult {
  bool is_ppt = false;
  double min_eig = 0.0;
};

/// Minimum eigenvalue of the inner partial transpose.
inline PptResult ppt_check(const DensityMatrix& rho, const Cut& cut,
                           const Tolerance& tol = kDefaultTolerance) {
  const CMatrix pt = partial_transpose(rho.matrix(), cut, Side::Inner);
  const double min_eig = detail::min_eigenvalue(pt);
  return {min_eig >= -tol.psd * rho.scale(), min_eig};
}

/// Top eigenvector when rho has rank one within `tol.purity`.
inline std::optional<CVector> pure_component(const DensityMatrix& rho,
                                             const Tolerance& tol = kDefaultTolerance) {
  const Eigensystem es = hermitian_eig(rho.hermitian());
  const Index top = es.values.size() - 1;
  if (es.values(top) < 1.0 - tol.purity) return std::nullopt;
  CVector psi = es.vectors.col(top);
  // Fix the global phase: first entry of largest modulus made real positive.
  Index k = 0;
  psi.cwiseAbs().maxCoeff(&k);
  psi *= std::conj(psi(k)) / std::abs(psi(k));
  return psi;
}

/// Number of singular values above `eps` of the d_out x d_in reshaping.
inline int schmidt_rank(const CVector& psi, const Cut& cut, double eps = kDefaultTolerance.schmidt) {
  cut.require_dim(psi.size());
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "state vector is zero");
  CMatrix m(cut.outer_dim(), cut.inner_dim());
  for (Index x = 0; x < cut.outer_dim(); ++x)
    for (Index j = 0; j < cut.inner_dim(); ++j) m(x, j) = psi(cut.flat(x, j)) / norm;
  Eigen::JacobiSVD<CMatrix> svd(m);
  int rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > eps) ++rank;
  return rank;
}

enum class OracleKind { Separable, Entangled, Unknown };

enum class OracleReason {
  PptConclusive2x2,
  ProductPureState,
  Npt,
  PureSchmidtRank,
  PptButInconclusiveDims,
};

inline std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::Separable: return "separable";
    case OracleKind::Entangled: return "entangled";
    case OracleKind::Unknown: return "unknown";
  }
  return "unknown";
}

inline std::string_view to_string(OracleReason r) {
  switch (r) {
    case OracleReason::PptConclusive2x2: return "ppt-2x2";
    case OracleReason::ProductPureState: return "product-pure-state";
    case OracleReason::Npt: return "npt";
    case OracleReason::PureSchmidtRank: return "pure-schmidt-rank";
    case OracleReason::PptButInconclusiveDims: return "ppt-inconclusive-dims";
  }
  return "unknown";
}

struct OracleVerdict {
  OracleKind kind = OracleKind::Unknown;
  OracleReason reason = OracleReason::PptButInconclusiveDims;
  /// Always reported, also for pure states.
  double min_pt_eig = 0.0;
  /// Schmidt rank when rho is pure, else 0.
  int schmidt_rank = 0;

  bool entangled() const noexcept { return kind == OracleKind::Entangled; }
  bool separable() const noexcept { return kind == OracleKind::Separable; }
};

/// Pure states are decided by Schmidt rank. Mixed states are entangled when
/// NPT and separable when PPT in 2x2; otherwise unknown.
inline OracleVerdict oracle_verdict(const DensityMatrix& rho, const Cut& cut,
                                    const Tolerance& tol = kDefaultTolerance) {
  cut.require_dim(rho.dim());
  OracleVerdict v;
  const PptResult ppt = ppt_check(rho, cut, tol);
  v.min_pt_eig = ppt.min_eig;
  if (auto psi = pure_component(rho, tol)) {
    v.schmidt_rank = schmidt_rank(*psi, cut, tol.schmidt);
    if (v.schmidt_rank == 1) {
      v.kind = OracleKind::Separable;
      v.reason = OracleReason::ProductPureState;
    } else {
      v.kind = OracleKind::Entangled;
      v.reason = OracleReason::PureSchmidtRank;
    }
    return v;
  }
  if (!ppt.is_ppt) {
    v.kind = OracleKind::Entangled;
    v.reason = OracleReason::Npt;
  } else if (cut.outer_dim() == 2 && cut.inner_dim() == 2) {
    v.kind = OracleKind::Separable;
    v.reason = OracleReason::PptConclusive2x2;
  } else {
    v.kind = OracleKind::Unknown;
    v.reason = OracleReason::PptButInconclusiveDims;
  }
  return v;
}

}  // namespace gsep
