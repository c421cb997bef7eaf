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

// Random instances for property tests and benchmarks.

#ifndef PPOVM_RANDOM_HPP
#define PPOVM_RANDOM_HPP

#include <cmath>
#include <random>
#include <vector>

#include "ppovm/matcore.hpp"
#include "ppovm/process_povm.hpp"
#include "ppovm/quantum.hpp"

namespace ppovm::random {

using Rng = std::mt19937_64;

inline ComplexMatrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = cplx(n(rng), n(rng));
  return m;
}

inline ComplexVector ket(Rng& rng, Eigen::Index dim) {
  ComplexVector v = ginibre(rng, dim, 1);
  return v / v.norm();
}

// Haar-random unitary (QR of a Ginibre matrix with the phase correction).
inline ComplexMatrix unitary(Rng& rng, Eigen::Index dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * identity(dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

// Density operator of the given rank (0 = full rank).
inline ComplexMatrix density(Rng& rng, Eigen::Index dim, Eigen::Index rank = 0) {
  const ComplexMatrix g = ginibre(rng, dim, rank > 0 ? rank : dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

// Random effect 0 <= F <= I.
inline ComplexMatrix effect(Rng& rng, Eigen::Index dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  ComplexMatrix f = g * g.adjoint();
  std::uniform_real_distribution<double> u(0.1, 1.0);
  f *= u(rng) / herm_eig(f).values.maxCoeff();
  return 0.5 * (f + f.adjoint());
}

// Random POVM with `outcomes` effects: F_k = S^{-1/2} G_k S^{-1/2}.
inline std::vector<ComplexMatrix> povm(Rng& rng, Eigen::Index dim, int outcomes) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < outcomes; ++k) {
    const ComplexMatrix a = ginibre(rng, dim, dim);
    g.push_back(a * a.adjoint());
    s += g.back();
  }
  HermitianEigen eig = herm_eig(s);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) eig.values(k) = 1.0 / std::sqrt(eig.values(k));
  const ComplexMatrix s_inv_half = from_eigen(eig.values, eig.vectors);
  std::vector<ComplexMatrix> out;
  for (const auto& gk : g) {
    const ComplexMatrix f = s_inv_half * gk * s_inv_half;
    out.push_back(0.5 * (f + f.adjoint()));
  }
  return out;
}

// Random CPTP channel from a Haar-random Stinespring isometry with
// `kraus_count` Kraus operators.
inline KrausChannel channel(Rng& rng, Eigen::Index d, int kraus_count = 0) {
  const Eigen::Index k = kraus_count > 0 ? kraus_count : d * d;
  const ComplexMatrix big = unitary(rng, d * k);
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index j = 0; j < k; ++j) ops.push_back(big.block(j * d, 0, d, d));
  return KrausChannel(std::move(ops));
}

// PPOVM from a random single-couple experiment with ancilla dimension
// anc_dim. rank = 0 gives a full-rank test state.
inline Ppovm ppovm(Rng& rng, Eigen::Index d, Eigen::Index anc_dim, int outcomes,
                   Eigen::Index rank = 0) {
  const Eigen::Index dim = anc_dim * d;
  const TestCouple couple(1.0, anc_dim, d, DensityOperator(density(rng, dim, rank)),
                          Povm(povm(rng, dim, outcomes)));
  return build_ppovm({couple}, d);
}

}  // namespace ppovm::random

#endif  // PPOVM_RANDOM_HPP
