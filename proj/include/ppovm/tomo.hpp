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

// Process tomography on top of PPOVMs: informational completeness, linear
// inversion with projection onto valid process states, and a seeded
// finite-shot simulator.

#ifndef PPOVM_TOMO_HPP
#define PPOVM_TOMO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ppovm/error.hpp"
#include "ppovm/matcore.hpp"
#include "ppovm/process_povm.hpp"
#include "ppovm/quantum.hpp"

namespace ppovm {

// ---------------------------------------------------------------------------
// Hermitian bases
// ---------------------------------------------------------------------------

struct HermitianBasis {
  Eigen::Index dim = 0;                 // matrices are dim x dim
  std::vector<ComplexMatrix> elements;  // orthonormal under hs_inner
};

// Generalized Gell-Mann basis of Herm(n), normalized; element 0 is I/sqrt(n),
// the remaining n^2 - 1 elements are traceless.
inline HermitianBasis gell_mann_basis(Eigen::Index n) {
  HermitianBasis out{n, {}};
  out.elements.push_back(identity(n) / std::sqrt(static_cast<double>(n)));
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = s;
      sym(k, j) = s;
      out.elements.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(j, k) = cplx(0.0, -s);
      anti(k, j) = cplx(0.0, s);
      out.elements.push_back(anti);
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = c;
    diag(l, l) = -static_cast<double>(l) * c;
    out.elements.push_back(diag);
  }
  return out;
}

// Orthonormal basis of Herm(d^2) made of products G_a (x) G_b of qudit
// Gell-Mann matrices. The first d^2 elements (b = 0) carry the second
// marginal; the remaining d^4 - d^2 span {Delta : Tr_2 Delta = 0}.
inline HermitianBasis process_basis(Eigen::Index d) {
  const HermitianBasis single = gell_mann_basis(d);
  HermitianBasis out{d * d, {}};
  for (const auto& a : single.elements) out.elements.push_back(kron(a, single.elements[0]));
  for (std::size_t b = 1; b < single.elements.size(); ++b) {
    for (const auto& a : single.elements) out.elements.push_back(kron(a, single.elements[b]));
  }
  return out;
}

namespace detail {

inline int numeric_rank(const RealMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * s(0)) ++r;
  }
  return r;
}

// rows: effects, cols: basis elements [first, last)
inline RealMatrix design_matrix(const Ppovm& pp, const HermitianBasis& basis, std::size_t first,
                                std::size_t last) {
  RealMatrix g(static_cast<Eigen::Index>(pp.size()), static_cast<Eigen::Index>(last - first));
  for (std::size_t a = 0; a < pp.size(); ++a) {
    for (std::size_t k = first; k < last; ++k) {
      g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k - first)) =
          trace_product_real(basis.elements[k], pp[a].matrix);
    }
  }
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Informational completeness
// ---------------------------------------------------------------------------

struct IcReport {
  bool complete = false;
  int deficiency = 0;        // (d^4 - d^2) - difference_rank
  int difference_rank = 0;   // rank of the effects restricted to {Tr_2 = 0}
  int difference_dim = 0;    // d^4 - d^2
  int span_rank = 0;         // dimension of span{M_a} in Herm(d^2)
};

// The PPOVM tells all channels apart iff no nonzero Hermitian Delta with
// Tr_2 Delta = 0 is orthogonal to every effect.
inline IcReport ic_check(const Ppovm& pp, double rel_tol = kDefaultTol) {
  const Eigen::Index d = pp.d();
  const HermitianBasis basis = process_basis(d);
  const auto marginal = static_cast<std::size_t>(d * d);
  IcReport out;
  out.difference_dim = static_cast<int>(basis.elements.size() - marginal);
  out.difference_rank =
      detail::numeric_rank(detail::design_matrix(pp, basis, marginal, basis.elements.size()), rel_tol);
  out.span_rank =
      detail::numeric_rank(detail::design_matrix(pp, basis, 0, basis.elements.size()), rel_tol);
  out.deficiency = out.difference_dim - out.difference_rank;
  out.complete = out.deficiency == 0;
  return out;
}

// ---------------------------------------------------------------------------
// Projection onto process states
// ---------------------------------------------------------------------------

struct PsdProjection {
  ProcessState state;
  int iterations = 0;
  bool converged = false;
  double mixing = 0.0;  // weight of I/d mixed in to remove residual negativity
};

// Alternating projections between {omega >= 0, Tr omega = d} and the affine
// set {Tr_2 omega = I}. Ends on the affine step; any negativity left after
// `iters` rounds is removed by mixing with I (x) I / d, which keeps the
// marginal.
inline PsdProjection psd_project(const ComplexMatrix& omega_raw, Eigen::Index d, int iters = 50,
                                 double change_tol = 1e-10) {
  if (omega_raw.rows() != d * d || omega_raw.cols() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "psd_project: matrix is not d^2 x d^2");
  }
  const auto dd = static_cast<double>(d);
  const ComplexMatrix id_d = identity(d);
  const ComplexMatrix maximally_mixed = identity(d * d) / dd;
  ComplexMatrix omega = 0.5 * (omega_raw + omega_raw.adjoint());

  PsdProjection out{ProcessState::unchecked(d, omega, false)};
  for (int it = 1; it <= iters; ++it) {
    const ComplexMatrix prev = omega;
    HermitianEigen eig = herm_eig(omega, 1.0);
    eig.values = eig.values.cwiseMax(0.0);
    const double tr = eig.values.sum();
    omega = tr > 0.0 ? from_eigen(eig.values * (dd / tr), eig.vectors) : maximally_mixed;
    omega += kron(id_d - partial_trace(omega, d, d, Factor::Second), id_d) / dd;
    omega = 0.5 * (omega + omega.adjoint());
    out.iterations = it;
    if (max_abs(omega - prev) < change_tol) {
      out.converged = true;
      break;
    }
  }
  const double lowest = herm_eig(omega, 1.0).values.minCoeff();
  if (lowest < 0.0) {
    out.mixing = -lowest / (1.0 / dd - lowest);
    omega = (1.0 - out.mixing) * omega + out.mixing * maximally_mixed;
  }
  out.state = ProcessState(d, omega, 1e-6);
  return out;
}

// ---------------------------------------------------------------------------
// Linear inversion
// ---------------------------------------------------------------------------

struct TomographyResult {
  ComplexMatrix omega_raw;
  ProcessState omega_projected;
  double residual = 0.0;  // ||G c - b||_2 of the least-squares fit
  std::optional<double> hs_error;
  IcReport ic;
  bool ic_deficient = false;  // solution is minimum-norm, not unique
  int projection_iterations = 0;
  bool projection_converged = false;
};

inline double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hs_distance: shapes differ");
  }
  return std::sqrt(std::max(0.0, hs_inner(a - b, a - b).real()));
}

inline double reconstruction_error(const TomographyResult& result, const ProcessState& truth) {
  if (result.omega_projected.d() != truth.d()) {
    throw Error(ErrorCode::DimensionMismatch, "reconstruction_error: dimensions differ");
  }
  return hs_distance(result.omega_projected.matrix(), truth.matrix());
}

// Least-squares fit omega = I/d + sum_k c_k B_k, {B_k} an orthonormal basis of
// {Tr_2 = 0}, to the observed outcome probabilities.
inline TomographyResult linear_inversion(const Ppovm& pp, const std::vector<double>& probs,
                                         const std::optional<ProcessState>& truth = std::nullopt,
                                         int project_iters = 50) {
  if (probs.size() != pp.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "linear_inversion: " + std::to_string(probs.size()) + " probabilities for " +
                    std::to_string(pp.size()) + " effects");
  }
  const Eigen::Index d = pp.d();
  const HermitianBasis basis = process_basis(d);
  const auto marginal = static_cast<std::size_t>(d * d);
  const RealMatrix g = detail::design_matrix(pp, basis, marginal, basis.elements.size());
  const ComplexMatrix offset = identity(d * d) / static_cast<double>(d);

  RealVector b(static_cast<Eigen::Index>(pp.size()));
  for (std::size_t a = 0; a < pp.size(); ++a) {
    b(static_cast<Eigen::Index>(a)) = probs[a] - trace_product_real(offset, pp[a].matrix);
  }
  const RealVector c = pinv(g, 1e-10) * b;

  ComplexMatrix omega = offset;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    omega += c(k) * basis.elements[marginal + static_cast<std::size_t>(k)];
  }

  PsdProjection projected = psd_project(omega, d, project_iters);
  TomographyResult out{omega, projected.state};
  out.residual = (g * c - b).norm();
  out.ic = ic_check(pp);
  out.ic_deficient = !out.ic.complete;
  out.projection_iterations = projected.iterations;
  out.projection_converged = projected.converged;
  if (truth) out.hs_error = reconstruction_error(out, *truth);
  return out;
}

// ---------------------------------------------------------------------------
// Finite-shot simulation
// ---------------------------------------------------------------------------

struct ShotRecord {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

inline constexpr const char* kShotGenerator = "mt19937_64+splitmix64/65536";
inline constexpr std::uint64_t kShotsPerBlock = 65536;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of shot block `index`; blocks are a fixed partition of the shots, so
// counts do not depend on how blocks are spread over workers.
inline std::uint64_t block_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ splitmix64(index + 1));
}

// Exact outcome distribution of a realization when the channel acts on the
// qudit factor of |Xi><Xi|.
inline std::vector<double> realization_probabilities(const KrausChannel& ch, const Realization& real) {
  if (ch.dim_in() != real.d || ch.dim_out() != real.d) {
    throw Error(ErrorCode::DimensionMismatch, "simulate: channel dimension != realization d");
  }
  const ComplexMatrix out_state =
      apply_on_factor(ch, projector(real.test_vector), real.r, Factor::Second);
  std::vector<double> q;
  double total = 0.0;
  for (const auto& f : real.povm) {
    q.push_back(trace_product_real(f, out_state));
    total += q.back();
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::ProbabilityNormalization,
                "outcome probabilities sum to " + std::to_string(total));
  }
  for (double& x : q) x = std::max(0.0, x);
  return q;
}

inline ShotRecord simulate_counts(const KrausChannel& ch, const Realization& real, std::uint64_t shots,
                                  std::uint64_t seed, unsigned workers = 1) {
  if (shots == 0) throw Error(ErrorCode::InvalidParameter, "simulate_counts: shots must be >= 1");
  const std::vector<double> q = realization_probabilities(ch, real);
  std::vector<double> cdf(q.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    acc += q[a];
    cdf[a] = acc;
    if (q[a] > 0.0) last_nonzero = a;
  }
  for (double& x : cdf) x /= acc;

  const std::uint64_t blocks = (shots + kShotsPerBlock - 1) / kShotsPerBlock;
  std::atomic<std::uint64_t> next{0};
  auto work = [&](std::vector<std::uint64_t>& local) {
    for (std::uint64_t blk = next++; blk < blocks; blk = next++) {
      std::mt19937_64 gen(block_seed(seed, blk));
      const std::uint64_t n = std::min(kShotsPerBlock, shots - blk * kShotsPerBlock);
      for (std::uint64_t s = 0; s < n; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++local[std::min(idx, last_nonzero)];
      }
    }
  };

  workers = std::max(1u, workers);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(q.size(), 0));
  if (workers == 1) {
    work(partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, std::ref(partial[w]));
    for (auto& t : pool) t.join();
  }

  ShotRecord out;
  out.shots = shots;
  out.seed = seed;
  out.generator = kShotGenerator;
  for (std::size_t a = 0; a < q.size(); ++a) {
    std::uint64_t total = 0;
    for (const auto& p : partial) total += p[a];
    out.counts[real.labels[a]] = total;
  }
  return out;
}

// Relative frequencies in PPOVM effect order. Labels absent from the record
// count as zero.
inline std::vector<double> frequencies(const Ppovm& pp, const ShotRecord& record) {
  if (record.shots == 0) throw Error(ErrorCode::InvalidParameter, "counts record has no shots");
  std::uint64_t total = 0;
  for (const auto& [label, n] : record.counts) {
    total += n;
    bool known = false;
    for (const auto& e : pp.effects()) known = known || e.label == label;
    if (!known) throw Error(ErrorCode::InvalidParameter, "counts label '" + label + "' not in PPOVM");
  }
  if (total != record.shots) {
    throw Error(ErrorCode::InvalidParameter, "counts sum " + std::to_string(total) +
                                                 " != shots " + std::to_string(record.shots));
  }
  std::vector<double> out;
  for (const auto& e : pp.effects()) {
    const auto it = record.counts.find(e.label);
    const double n = it == record.counts.end() ? 0.0 : static_cast<double>(it->second);
    out.push_back(n / static_cast<double>(record.shots));
  }
  return out;
}

}  // namespace ppovm

#endif  // PPOVM_TOMO_HPP
