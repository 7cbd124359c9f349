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

// Dense Hermitian kernel: eigensystems, PSD splits, block grids and the
// partial operations on bipartite density operators.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "gsep/error.hpp"
#include "gsep/tolerance.hpp"

namespace gsep {

using cd = std::complex<double>;
using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr int kMaxQubits = 10;

inline bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline int log2_exact(Index n) {
  int k = 0;
  while ((Index{1} << k) < n) ++k;
  return k;
}

inline double max_abs(const CMatrix& m) {
  double s = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) s = std::max(s, std::abs(m(i, j)));
  return s;
}

inline bool is_exactly_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i) {
    if (m(i, i).imag() != 0.0) return false;
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != std::conj(m(j, i))) return false;
  }
  return true;
}

/// Square complex matrix with exact conjugate symmetry and power-of-two
/// dimension.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Throws unless `m` is square, power-of-two sized and bit-exactly
  /// Hermitian (real diagonal, m(i,j) == conj(m(j,i))).
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || !is_power_of_two(m_.rows()))
      throw Error(ErrorKind::DimensionMismatch,
                  "Hermitian matrix must be square with power-of-two size, got " +
                      std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    if (!is_exactly_hermitian(m_))
      throw Error(ErrorKind::InvalidArgument, "matrix is not exactly Hermitian");
    scale_ = max_abs(m_);
  }

  /// Symmetrizes `m` as (m + m^dagger)/2, which is exactly Hermitian.
  static HermitianMatrix hermitize(const CMatrix& m) {
    CMatrix h(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
      h(i, i) = cd(m(i, i).real(), 0.0);
      for (Index j = i + 1; j < m.cols(); ++j) {
        h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        h(j, i) = std::conj(h(i, j));
      }
    }
    return HermitianMatrix(std::move(h));
  }

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  double scale() const noexcept { return scale_; }
  cd operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  CMatrix m_;
  double scale_ = 0.0;
};

/// Eigenvalues ascending with matching orthonormal eigenvector columns.
struct Eigensystem {
  RVector values;
  CMatrix vectors;
};

namespace detail {

inline Eigensystem eigh(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::ConvergenceFailure,
                "Hermitian eigensolver did not converge (dim " +
                    std::to_string(m.rows()) + ")");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
  return solver.eigenvalues()(0);
}

inline CMatrix from_spectrum(const CMatrix& vectors, const RVector& values) {
  CMatrix out = vectors * values.asDiagonal() * vectors.adjoint();
  // restore exact conjugate symmetry lost in the product
  for (Index i = 0; i < out.rows(); ++i) {
    out(i, i) = cd(out(i, i).real(), 0.0);
    for (Index j = i + 1; j < out.cols(); ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

/// Positive spectral part max(M, 0) of a Hermitian matrix.
inline CMatrix positive_part(const CMatrix& m) {
  Eigensystem es = eigh(m);
  return from_spectrum(es.vectors, es.values.cwiseMax(0.0));
}

inline CMatrix absolute_value(const CMatrix& m) {
  Eigensystem es = eigh(m);
  return from_spectrum(es.vectors, es.values.cwiseAbs());
}

}  // namespace detail

/// Full eigendecomposition. Throws ConvergenceFailure on breakdown.
inline Eigensystem hermitian_eig(const HermitianMatrix& m) {
  return detail::eigh(m.matrix());
}

struct PsdSplit {
  HermitianMatrix positive;
  HermitianMatrix negative;
};

/// H = P - N with P, N PSD, PN = 0, built from the signed spectral parts.
inline PsdSplit psd_split(const HermitianMatrix& h) {
  Eigensystem es = hermitian_eig(h);
  return {HermitianMatrix(detail::from_spectrum(es.vectors, es.values.cwiseMax(0.0))),
          HermitianMatrix(detail::from_spectrum(es.vectors, (-es.values).cwiseMax(0.0)))};
}

/// A = re + i * im with both parts Hermitian.
struct HermitianSplit {
  CMatrix re;
  CMatrix im;
};

/// re = (A + A^dagger)/2, im = (A - A^dagger)/(2i); entrywise so both parts
/// come out exactly Hermitian.
inline HermitianSplit hermitian_split(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "hermitian_split needs a square matrix");
  const Index n = a.rows();
  HermitianSplit out{CMatrix(n, n), CMatrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const cd x = a(i, j);
      const cd y = std::conj(a(j, i));
      const cd sum = 0.5 * (x + y);
      const cd diff = x - y;
      // -i/2 * diff, written out to stay exact
      const cd skew(0.5 * diff.imag(), -0.5 * diff.real());
      if (i == j) {
        out.re(i, i) = cd(sum.real(), 0.0);
        out.im(i, i) = cd(skew.real(), 0.0);
      } else {
        out.re(i, j) = sum;
        out.re(j, i) = std::conj(sum);
        out.im(i, j) = skew;
        out.im(j, i) = std::conj(skew);
      }
    }
  }
  return out;
}

/// Bipartition of n qubits: the first `outer` qubits against the rest.
/// Flat basis index = outer_index * inner_dim + inner_index (0-based).
class Cut {
 public:
  Cut(int n_qubits, int outer_qubits) : n_(n_qubits), m_(outer_qubits) {
    if (n_ < 2 || n_ > kMaxQubits)
      throw Error(ErrorKind::Range, "cut needs 2 <= qubits <= " +
                                        std::to_string(kMaxQubits) + ", got " +
                                        std::to_string(n_));
    if (m_ < 1 || m_ >= n_)
      throw Error(ErrorKind::Range, "cut m must satisfy 1 <= m < " + std::to_string(n_) +
                                        ", got " + std::to_string(m_));
  }

  static Cut for_dim(Index dim, int outer_qubits) {
    if (!is_power_of_two(dim))
      throw Error(ErrorKind::DimensionMismatch, "dimension is not a power of two");
    return Cut(log2_exact(dim), outer_qubits);
  }

  int qubits() const noexcept { return n_; }
  int outer_qubits() const noexcept { return m_; }
  int inner_qubits() const noexcept { return n_ - m_; }
  Index outer_dim() const noexcept { return Index{1} << m_; }
  Index inner_dim() const noexcept { return Index{1} << (n_ - m_); }
  Index dim() const noexcept { return Index{1} << n_; }

  Index flat(Index outer, Index inner) const { return outer * inner_dim() + inner; }
  Index outer_of(Index flat) const { return flat >> (n_ - m_); }
  Index inner_of(Index flat) const { return flat & (inner_dim() - 1); }

  void require_dim(Index d) const {
    if (d != dim())
      throw Error(ErrorKind::DimensionMismatch,
                  "matrix dimension " + std::to_string(d) + " does not match cut over " +
                      std::to_string(n_) + " qubits");
  }

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  int n_;
  int m_;
};

/// d_out x d_out grid of d_in x d_in blocks; block(x, y) is 0-based.
class BlockGrid {
 public:
  BlockGrid(Cut cut, std::vector<CMatrix> blocks) : cut_(cut), blocks_(std::move(blocks)) {
    const Index d = cut_.outer_dim();
    if (static_cast<Index>(blocks_.size()) != d * d)
      throw Error(ErrorKind::DimensionMismatch, "block count does not match the cut");
    for (const CMatrix& b : blocks_)
      if (b.rows() != cut_.inner_dim() || b.cols() != cut_.inner_dim())
        throw Error(ErrorKind::DimensionMismatch, "block size does not match the cut");
  }

  const Cut& cut() const noexcept { return cut_; }
  Index size() const noexcept { return cut_.outer_dim(); }
  const CMatrix& block(Index x, Index y) const { return blocks_[x * size() + y]; }
  CMatrix& block(Index x, Index y) { return blocks_[x * size() + y]; }

 private:
  Cut cut_;
  std::vector<CMatrix> blocks_;
};

inline BlockGrid block_grid(const CMatrix& m, const Cut& cut) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  cut.require_dim(m.rows());
  const Index d = cut.outer_dim();
  const Index b = cut.inner_dim();
  std::vector<CMatrix> blocks;
  blocks.reserve(d * d);
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y) blocks.emplace_back(m.block(x * b, y * b, b, b));
  return BlockGrid(cut, std::move(blocks));
}

inline BlockGrid block_grid(const HermitianMatrix& m, const Cut& cut) {
  return block_grid(m.matrix(), cut);
}

inline CMatrix reassemble_matrix(const BlockGrid& grid) {
  const Index d = grid.size();
  const Index b = grid.cut().inner_dim();
  CMatrix m(d * b, d * b);
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y) m.block(x * b, y * b, b, b) = grid.block(x, y);
  return m;
}

/// Inverse of block_grid; throws if the blocks do not form a Hermitian matrix.
inline HermitianMatrix reassemble(const BlockGrid& grid) {
  return HermitianMatrix(reassemble_matrix(grid));
}

namespace detail {

// Entry (o_r:i_r, o_c:i_c) moves to (o_r:i_c, o_c:i_r).
template <bool Conjugate>
CMatrix partial_gate_map(const CMatrix& rho, const Cut& cut) {
  cut.require_dim(rho.rows());
  const Index mask = cut.inner_dim() - 1;
  CMatrix out(rho.rows(), rho.cols());
  for (Index r = 0; r < rho.rows(); ++r) {
    for (Index c = 0; c < rho.cols(); ++c) {
      // The per-entry gate flips exactly the inner qubits where the labels
      // differ, which swaps the inner halves of the row and column labels.
      const Index flip = (r ^ c) & mask;
      const cd v = rho(r, c);
      out(r ^ flip, c ^ flip) = Conjugate ? std::conj(v) : v;
    }
  }
  return out;
}

}  // namespace detail

/// Partial quantum gate applied to a density operator: identity on the outer
/// qubits, bit flips on the inner qubits where row and column labels differ.
inline HermitianMatrix partial_gate_density(const HermitianMatrix& rho, const Cut& cut) {
  return HermitianMatrix(detail::partial_gate_map<false>(rho.matrix(), cut));
}

/// Partial gate followed by entrywise complex conjugation.
inline HermitianMatrix conj_partial_gate_density(const HermitianMatrix& rho, const Cut& cut) {
  return HermitianMatrix(detail::partial_gate_map<true>(rho.matrix(), cut));
}

enum class Side { Inner, Outer };

/// Transposes the designated tensor factor, working block-wise: Inner
/// transposes every block, Outer swaps block (x, y) with block (y, x).
inline CMatrix partial_transpose(const CMatrix& m, const Cut& cut, Side side) {
  BlockGrid grid = block_grid(m, cut);
  const Index d = grid.size();
  std::vector<CMatrix> blocks;
  blocks.reserve(d * d);
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y)
      blocks.push_back(side == Side::Inner ? CMatrix(grid.block(x, y).transpose())
                                           : grid.block(y, x));
  return reassemble_matrix(BlockGrid(cut, std::move(blocks)));
}

inline HermitianMatrix partial_transpose(const HermitianMatrix& m, const Cut& cut, Side side) {
  return HermitianMatrix(partial_transpose(m.matrix(), cut, side));
}

/// Frobenius norm of AB - BA.
inline double commutator_norm(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "commutator needs equal square matrices");
  return (a * b - b * a).norm();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// `re+im i` with 12 significant digits.
inline std::string format_entry(cd z) {
  char buf[64];
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();  // drop -0
  std::snprintf(buf, sizeof buf, "%.12g%c%.12gi", z.real() == 0.0 ? 0.0 : z.real(),
                std::signbit(im) ? '-' : '+', std::abs(im));
  return buf;
}

inline std::string format_matrix(const CMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    out += "[";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_entry(m(i, j));
    }
    out += "]\n";
  }
  return out;
}

/// Validated density operator: Hermitian, unit trace, PSD within tolerance.
class DensityMatrix {
 public:
  /// Throws ZeroOrNegativeTrace / NotPositiveSemidefinite with the offending
  /// value in the message.
  static DensityMatrix validate(HermitianMatrix m, const Tolerance& tol = kDefaultTolerance) {
    const double tr = m.trace();
    if (!(tr > 0.0))
      throw Error(ErrorKind::ZeroOrNegativeTrace, "trace " + std::to_string(tr));
    const double trace_error = std::abs(tr - 1.0);
    if (trace_error > tol.trace)
      throw Error(ErrorKind::InvalidArgument, "density trace deviates from 1 by " +
                                                  std::to_string(trace_error));
    const double min_eig = detail::min_eigenvalue(m.matrix());
    if (min_eig < -tol.psd * m.scale()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "min eigenvalue %.6e", min_eig);
      throw Error(ErrorKind::NotPositiveSemidefinite, buf);
    }
    return DensityMatrix(std::move(m), trace_error, min_eig);
  }

  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const CMatrix& matrix() const noexcept { return m_.matrix(); }
  Index dim() const noexcept { return m_.dim(); }
  int qubits() const noexcept { return log2_exact(m_.dim()); }
  double scale() const noexcept { return m_.scale(); }
  double trace_error() const noexcept { return trace_error_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  DensityMatrix(HermitianMatrix m, double trace_error, double min_eig)
      : m_(std::move(m)), trace_error_(trace_error), min_eigenvalue_(min_eig) {}

  HermitianMatrix m_;
  double trace_error_;
  double min_eigenvalue_;
};

}  // namespace gsep
