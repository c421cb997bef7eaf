// Copyright 2026 The ppovm Authors
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

// Dense complex linear algebra with the index conventions used throughout
// the library.
//
// Composite index convention: a basis vector |a>|b> of H_A (x) H_B has index
// a * dim(B) + b, i.e. the first tensor factor is index-major. Every kron,
// partial trace and reshape below follows it.

#ifndef PPOVM_MATCORE_HPP
#define PPOVM_MATCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "ppovm/error.hpp"

namespace ppovm {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative tolerance used for Hermiticity, positivity and rank decisions
// unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

enum class Factor { First, Second };

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors, same order as values
};

struct Support {
  int rank = 0;
  ComplexMatrix projector;
};

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexVector basis_ket(Eigen::Index n, Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(n);
  v(i) = 1.0;
  return v;
}

inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

// Transposition in the computational basis.
inline ComplexMatrix transpose(const ComplexMatrix& m) { return m.transpose(); }

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff shapes differ");
  }
  return max_abs(a - b);
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = kDefaultTol) {
  return m.rows() == m.cols() &&
         hermiticity_residual(m) <= rel_tol * std::max(1.0, max_abs(m));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTol) {
  return u.rows() == u.cols() && u.rows() > 0 &&
         max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

// |Psi+> = sum_j |j>|j>, unnormalized.
inline ComplexVector psi_plus_vector(Eigen::Index d) {
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) v(j * d + j) = 1.0;
  return v;
}

inline ComplexMatrix psi_plus(Eigen::Index d) { return projector(psi_plus_vector(d)); }

// ---------------------------------------------------------------------------
// Tensor structure
// ---------------------------------------------------------------------------

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, Eigen::Index dim_a,
                                   Eigen::Index dim_b, Factor which) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " +
                    std::to_string(dim_a * dim_b) + " square");
  }
  if (which == Factor::First) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index b = 0; b < dim_a; ++b) {
      out(a, b) = m.block(a * dim_b, b * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

// Reshapes a vector of H_D (x) H_d into the D x d matrix Phi with
// Phi(alpha, j) = phi[alpha * d + j], so that (Phi (x) I)|Psi+> = phi.
inline ComplexMatrix vec_reshape(const ComplexVector& phi, Eigen::Index dim_anc,
                                 Eigen::Index d) {
  if (dim_anc <= 0 || d <= 0 || phi.size() != dim_anc * d) {
    throw Error(ErrorCode::DimensionMismatch,
                "vec_reshape: length " + std::to_string(phi.size()) + " != " +
                    std::to_string(dim_anc) + "*" + std::to_string(d));
  }
  ComplexMatrix out(dim_anc, d);
  for (Eigen::Index a = 0; a < dim_anc; ++a) {
    for (Eigen::Index j = 0; j < d; ++j) out(a, j) = phi(a * d + j);
  }
  return out;
}

// Inverse of vec_reshape.
inline ComplexVector vec_flatten(const ComplexMatrix& phi_matrix) {
  const Eigen::Index d = phi_matrix.cols();
  ComplexVector out(phi_matrix.size());
  for (Eigen::Index a = 0; a < phi_matrix.rows(); ++a) {
    for (Eigen::Index j = 0; j < d; ++j) out(a * d + j) = phi_matrix(a, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral routines
// ---------------------------------------------------------------------------

namespace detail {

// Rotates each column so that its largest-magnitude entry is real positive.
inline void fix_column_phases(ComplexMatrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best_abs * (1.0 + 1e-12)) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs > 0.0) {
      const cplx phase = std::conj(vectors(best, c)) / best_abs;
      vectors.col(c) *= phase;
      vectors(best, c) = best_abs;
    }
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
// solving; rel_tol bounds the tolerated anti-Hermitian part relative to
// max(1, ||M||_max).
inline HermitianEigen herm_eig(const ComplexMatrix& m, double rel_tol = kDefaultTol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "herm_eig: matrix is " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, max_abs(m));
  const double residual = hermiticity_residual(m);
  if (residual > rel_tol * scale) {
    throw Error(ErrorCode::NotHermitian,
                "herm_eig: ||M - M^dag||_max = " + std::to_string(residual));
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  detail::fix_column_phases(out.vectors);
  return out;
}

inline ComplexMatrix from_eigen(const RealVector& values, const ComplexMatrix& vectors) {
  return vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint();
}

inline double min_eigenvalue(const ComplexMatrix& m) { return herm_eig(m).values.minCoeff(); }
inline double max_eigenvalue(const ComplexMatrix& m) { return herm_eig(m).values.maxCoeff(); }

// Positive square root of a PSD matrix. Eigenvalues in [-rel_tol * lambda_max, 0)
// are clamped to zero.
inline ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m, double rel_tol = kDefaultTol) {
  HermitianEigen eig = herm_eig(m, rel_tol);
  const double top = std::max(1e-300, eig.values.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    double& v = eig.values(k);
    if (v < -rel_tol * top) {
      throw Error(ErrorCode::NotPsd, "mat_sqrt_psd: eigenvalue " + std::to_string(v));
    }
    v = std::sqrt(std::max(0.0, v));
  }
  return from_eigen(eig.values, eig.vectors);
}

// Moore-Penrose pseudo-inverse; singular values <= rel_tol * sigma_max count as 0.
inline ComplexMatrix pinv(const ComplexMatrix& m, double rel_tol = kDefaultTol) {
  if (m.size() == 0) return ComplexMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = rel_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
  RealVector inv = RealVector::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) inv(k) = 1.0 / sigma(k);
  }
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

// Real-matrix pseudo-inverse with the same cutoff rule.
inline RealMatrix pinv(const RealMatrix& m, double rel_tol = kDefaultTol) {
  if (m.size() == 0) return RealMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = rel_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
  RealVector inv = RealVector::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) inv(k) = 1.0 / sigma(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

// Rank and support projector of a Hermitian matrix: eigenvalues with
// |lambda| > rel_tol * max|lambda| span the support.
inline Support rank_and_support(const ComplexMatrix& m, double rel_tol = kDefaultTol) {
  const HermitianEigen eig = herm_eig(m, rel_tol);
  Support out{0, ComplexMatrix::Zero(m.rows(), m.cols())};
  const double top = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  if (top == 0.0) return out;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values(k)) > rel_tol * top) {
      out.projector += projector(eig.vectors.col(k));
      ++out.rank;
    }
  }
  return out;
}

// Hilbert-Schmidt inner product Tr(A^dag B).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hs_inner: shapes differ");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

// Tr(A B) for Hermitian A, B, returned as a real number.
inline double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace ppovm

#endif  // PPOVM_MATCORE_HPP
