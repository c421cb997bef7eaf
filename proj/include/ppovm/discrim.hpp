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

// Perfect (zero-error) discrimination of two channels.
//
// Unitary pairs U, V are perfectly discriminable iff zero lies in the convex
// hull of the eigenvalues of W = U^dag V on the unit circle. A probe
// |phi> = sum_k sqrt(q_k) |u_k> built from convex weights q with
// sum_k q_k e^{i theta_k} = 0 makes U|phi> and V|phi> orthogonal.

#ifndef PPOVM_DISCRIM_HPP
#define PPOVM_DISCRIM_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ppovm/error.hpp"
#include "ppovm/matcore.hpp"
#include "ppovm/process_povm.hpp"
#include "ppovm/quantum.hpp"

namespace ppovm {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Absolute tolerance on angles for hull decisions.
inline constexpr double kAngleTol = 1e-9;
inline constexpr double kPhaseDedupTol = 1e-12;

// Eigenphases in [0, 2 pi), ascending, repeated by multiplicity.
struct PhaseSet {
  std::vector<double> phases;
};

struct UnitaryEigen {
  std::vector<double> phases;  // ascending in [0, 2 pi)
  ComplexMatrix vectors;       // orthonormal columns, same order
};

inline double wrap_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

inline PhaseSet make_phase_set(std::vector<double> phases) {
  for (double& p : phases) p = wrap_phase(p);
  std::sort(phases.begin(), phases.end());
  return PhaseSet{std::move(phases)};
}

inline void require_unitary(const ComplexMatrix& u, const char* what, double tol = kDefaultTol) {
  if (!is_unitary(u, tol)) throw Error(ErrorCode::NotUnitary, std::string(what) + " is not unitary");
}

// Spectral decomposition of a unitary via the complex Schur form, which is
// diagonal for normal matrices; the Schur vectors are orthonormal even for
// degenerate eigenvalues.
inline UnitaryEigen unitary_eig(const ComplexMatrix& w) {
  require_unitary(w, "unitary_eig input", 1e-8);
  Eigen::ComplexSchur<ComplexMatrix> schur(w);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  const Eigen::Index n = w.rows();

  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index k = 0; k < n; ++k) order.emplace_back(wrap_phase(std::arg(t(k, k))), k);
  std::sort(order.begin(), order.end());

  UnitaryEigen out;
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto [theta, k] = order[static_cast<std::size_t>(j)];
    out.phases.push_back(theta);
    out.vectors.col(j) = q.col(k);
    const double residual =
        (w * q.col(k) - std::polar(1.0, theta) * q.col(k)).cwiseAbs().maxCoeff();
    if (residual > 1e-8) {
      throw Error(ErrorCode::InvalidParameter,
                  "unitary_eig: eigenvector residual " + std::to_string(residual));
    }
  }
  return out;
}

inline PhaseSet relative_phases(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_unitary(u, "U");
  require_unitary(v, "V");
  if (u.rows() != v.rows()) throw Error(ErrorCode::DimensionMismatch, "U and V dimensions differ");
  return PhaseSet{unitary_eig(u.adjoint() * v).phases};
}

// |Tr U^dag V|
inline double overlap(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_unitary(u, "U");
  require_unitary(v, "V");
  if (u.rows() != v.rows()) throw Error(ErrorCode::DimensionMismatch, "U and V dimensions differ");
  return std::abs((u.adjoint() * v).trace());
}

// |Tr U^dag V| <= d - 1 is necessary for perfect discrimination.
inline bool necessary_condition(const ComplexMatrix& u, const ComplexMatrix& v) {
  return overlap(u, v) <= static_cast<double>(u.rows()) - 1.0 + kDefaultTol;
}

// Largest circular gap between consecutive phases.
inline double max_circular_gap(const PhaseSet& ph) {
  if (ph.phases.empty()) return kTwoPi;
  std::vector<double> p = ph.phases;
  for (double& x : p) x = wrap_phase(x);
  std::sort(p.begin(), p.end());
  double gap = kTwoPi - p.back() + p.front();
  for (std::size_t k = 1; k < p.size(); ++k) gap = std::max(gap, p[k] - p[k - 1]);
  return gap;
}

// Zero lies in the convex hull of {e^{i theta}} iff the points are not
// confined to an open half-plane, i.e. no circular gap exceeds pi. A gap of
// exactly pi (antipodal pair) counts as inside.
inline bool zero_in_hull(const PhaseSet& ph, double tol = kAngleTol) {
  if (ph.phases.empty()) return false;
  return max_circular_gap(ph) <= std::numbers::pi + tol;
}

inline double hull_residual(const PhaseSet& ph, const std::vector<double>& weights) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < ph.phases.size(); ++k) s += weights[k] * std::polar(1.0, ph.phases[k]);
  return std::abs(s);
}

// Convex weights (support <= 3) with sum_k q_k e^{i theta_k} = 0. Antipodal
// pairs are tried first, then triangles containing the origin, in index
// order.
inline std::vector<double> hull_weights(const PhaseSet& ph, double tol = kAngleTol) {
  if (!zero_in_hull(ph, tol)) {
    throw Error(ErrorCode::NoHull, "zero is not in the convex hull of the phases");
  }
  const std::size_t n = ph.phases.size();
  std::vector<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sep = std::abs(wrap_phase(ph.phases[j] - ph.phases[i]) - std::numbers::pi);
      if (sep <= tol) {
        q[i] = q[j] = 0.5;
        return q;
      }
    }
  }
  auto cross = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const cplx a = std::polar(1.0, ph.phases[i]);
        const cplx b = std::polar(1.0, ph.phases[j]);
        const cplx c = std::polar(1.0, ph.phases[k]);
        double wa = cross(b, c);
        double wb = cross(c, a);
        double wc = cross(a, b);
        const double area2 = wa + wb + wc;
        if (std::abs(area2) < 1e-14) continue;
        wa /= area2;
        wb /= area2;
        wc /= area2;
        if (wa < -1e-12 || wb < -1e-12 || wc < -1e-12) continue;
        wa = std::max(0.0, wa);
        wb = std::max(0.0, wb);
        wc = std::max(0.0, wc);
        const double s = wa + wb + wc;
        std::vector<double> trial(n, 0.0);
        trial[i] = wa / s;
        trial[j] = wb / s;
        trial[k] = wc / s;
        if (hull_residual(ph, trial) <= 1e-9) return trial;
      }
    }
  }
  throw Error(ErrorCode::NoHull, "no antipodal pair or origin-containing triangle found");
}

// ---------------------------------------------------------------------------
// Discrimination plans
// ---------------------------------------------------------------------------

// Effect 0 of `ppovm` concludes the first channel, effect 1 the second.
struct DiscriminationPlan {
  ComplexVector probe;  // qudit test state, no ancilla
  Povm povm;            // {P1, P2} on the qudit output
  Ppovm ppovm;          // {M1, M2}, M1 + M2 = (|phi><phi|)^T (x) I
  std::pair<double, double> error_rates{std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN()};
  bool perfect = false;
};

inline DiscriminationPlan make_plan(const ComplexVector& probe, const Povm& povm) {
  if (povm.size() != 2) throw Error(ErrorCode::InvalidParameter, "plan POVM must have two outcomes");
  if (povm.dim() != probe.size()) throw Error(ErrorCode::DimensionMismatch, "probe/POVM dimension");
  const ComplexVector phi = probe / probe.norm();
  const TestCouple couple = ancilla_free_couple(1.0, DensityOperator::pure(phi), povm);
  return DiscriminationPlan{phi, povm, build_ppovm({couple}, phi.size())};
}

// (Tr[M2 omega_1], Tr[M1 omega_2]): the two misidentification rates.
inline std::pair<double, double> verify_plan(const KrausChannel& ch1, const KrausChannel& ch2,
                                             const DiscriminationPlan& plan) {
  const Eigen::Index d = plan.ppovm.d();
  if (ch1.dim_in() != d || ch1.dim_out() != d || ch2.dim_in() != d || ch2.dim_out() != d) {
    throw Error(ErrorCode::DimensionMismatch, "verify_plan: channel dimension != plan dimension");
  }
  const ComplexMatrix w1 = choi_of_channel(ch1).matrix();
  const ComplexMatrix w2 = choi_of_channel(ch2).matrix();
  return {std::max(0.0, trace_product_real(plan.ppovm[1].matrix, w1)),
          std::max(0.0, trace_product_real(plan.ppovm[0].matrix, w2))};
}

// Zero-error plan for two unitaries; P1 = U|phi><phi|U^dag identifies U.
inline DiscriminationPlan build_plan(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_unitary(u, "U");
  require_unitary(v, "V");
  if (u.rows() != v.rows()) throw Error(ErrorCode::DimensionMismatch, "U and V dimensions differ");
  const UnitaryEigen eig = unitary_eig(u.adjoint() * v);
  const PhaseSet ph{eig.phases};
  if (!zero_in_hull(ph)) {
    throw Error(ErrorCode::NotPerfectlyDiscriminable,
                "largest eigenphase gap of U^dag V is " + std::to_string(max_circular_gap(ph)) +
                    " > pi");
  }
  const std::vector<double> q = hull_weights(ph);
  ComplexVector phi = ComplexVector::Zero(u.rows());
  for (std::size_t k = 0; k < q.size(); ++k) {
    phi += std::sqrt(q[k]) * eig.vectors.col(static_cast<Eigen::Index>(k));
  }
  const ComplexVector out_u = u * phi;
  const ComplexMatrix p1 = projector(out_u);
  DiscriminationPlan plan =
      make_plan(phi, Povm({p1, identity(u.rows()) - p1}, {"U", "V"}));
  plan.error_rates = verify_plan(KrausChannel({u}), KrausChannel({v}), plan);
  plan.perfect = plan.error_rates.first <= 1e-9 && plan.error_rates.second <= 1e-9;
  return plan;
}

// Probe |1>, POVM {I - |0><0|, |0><0|}: identity vs the contraction onto |0>.
inline DiscriminationPlan identity_vs_contraction_plan() {
  const ComplexMatrix p0 = projector(basis_ket(2, 0));
  return make_plan(basis_ket(2, 1), Povm({identity(2) - p0, p0}, {"M_I", "M_0"}));
}

// Sufficient (not necessary) condition: orthogonal supports.
inline bool support_orthogonal(const ComplexMatrix& omega1, const ComplexMatrix& omega2,
                               double tol = kDefaultTol) {
  if (omega1.rows() != omega2.rows() || omega1.cols() != omega2.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "support_orthogonal: shapes differ");
  }
  const Support s1 = rank_and_support(omega1);
  const Support s2 = rank_and_support(omega2);
  return max_abs(s1.projector * s2.projector) <= tol;
}

inline bool support_orthogonal(const ProcessState& omega1, const ProcessState& omega2,
                               double tol = kDefaultTol) {
  if (omega1.d() != omega2.d()) throw Error(ErrorCode::DimensionMismatch, "process dimensions differ");
  return support_orthogonal(omega1.matrix(), omega2.matrix(), tol);
}

// ---------------------------------------------------------------------------
// Parallel copies
// ---------------------------------------------------------------------------

enum class CopiesStatus { Found, NotWithinLimit, AlwaysIndistinguishable };

inline const char* to_string(CopiesStatus s) {
  switch (s) {
    case CopiesStatus::Found: return "Found";
    case CopiesStatus::NotWithinLimit: return "NotWithinLimit";
    case CopiesStatus::AlwaysIndistinguishable: return "AlwaysIndistinguishable";
  }
  return "Unknown";
}

struct CopiesResult {
  std::optional<int> copies;
  CopiesStatus status = CopiesStatus::NotWithinLimit;
};

// Sorted, circularly deduplicated phases.
inline std::vector<double> dedup_phases(std::vector<double> p, double tol = kPhaseDedupTol) {
  for (double& x : p) x = wrap_phase(x);
  std::sort(p.begin(), p.end());
  std::vector<double> out;
  for (double x : p) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  if (out.size() > 1 && kTwoPi - out.back() + out.front() <= tol) out.pop_back();
  return out;
}

inline constexpr std::size_t kMaxPhaseSetSize = 4'000'000;

// Smallest n <= n_max for which U^{(x)n}, V^{(x)n} are perfectly
// discriminable. The phases of (U^dag V)^{(x)n} are all n-fold sums of the
// single-copy phases; the set is grown one copy at a time.
inline CopiesResult min_copies_of_phases(const PhaseSet& single, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidParameter, "n_max must be >= 1");
  const std::vector<double> base = dedup_phases(single.phases);
  if (base.size() <= 1) return {std::nullopt, CopiesStatus::AlwaysIndistinguishable};
  std::vector<double> current = base;
  for (int n = 1; n <= n_max; ++n) {
    if (zero_in_hull(PhaseSet{current})) return {n, CopiesStatus::Found};
    if (n == n_max) break;
    if (current.size() * base.size() > kMaxPhaseSetSize) {
      throw Error(ErrorCode::InvalidParameter,
                  "min_copies: phase set exceeds " + std::to_string(kMaxPhaseSetSize) + " entries");
    }
    std::vector<double> next;
    next.reserve(current.size() * base.size());
    for (double s : current) {
      for (double t : base) next.push_back(s + t);
    }
    current = dedup_phases(std::move(next));
  }
  return {std::nullopt, CopiesStatus::NotWithinLimit};
}

inline CopiesResult min_copies(const ComplexMatrix& u, const ComplexMatrix& v, int n_max) {
  return min_copies_of_phases(relative_phases(u, v), n_max);
}

}  // namespace ppovm

#endif  // PPOVM_DISCRIM_HPP
