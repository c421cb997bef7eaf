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

// Process effects and process POVMs.
//
// A process measurement is a list of couples <p_j rho_j, {F_jk}>: a test
// state rho_j on H_anc (x) H_d (ancilla first) sent through the unknown
// channel on the qudit factor, then measured with the POVM {F_jk}. Each
// outcome is described by the process effect
//
//   M_jk = p_j (R*_{rho_j} (x) Id)[F_jk],
//
// an operator on H_d (x) H_d with outcome probability Tr[omega_E M_jk].
// The effects sum to rho^T (x) I with rho = sum_j p_j Tr_anc rho_j.

#ifndef PPOVM_PROCESS_POVM_HPP
#define PPOVM_PROCESS_POVM_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppovm/error.hpp"
#include "ppovm/matcore.hpp"
#include "ppovm/quantum.hpp"

namespace ppovm {

// ---------------------------------------------------------------------------
// TestCouple
// ---------------------------------------------------------------------------

class TestCouple {
 public:
  TestCouple(double weight, Eigen::Index anc_dim, Eigen::Index d, DensityOperator test_state,
             Povm povm, std::string name = {})
      : weight_(weight),
        anc_dim_(anc_dim),
        d_(d),
        test_state_(std::move(test_state)),
        povm_(std::move(povm)),
        name_(std::move(name)) {
    if (!(weight_ > 0.0 && weight_ <= 1.0 + kDefaultTol)) {
      throw Error(ErrorCode::InvalidParameter,
                  "couple weight must lie in (0, 1], got " + std::to_string(weight_));
    }
    if (anc_dim_ < 1 || d_ < 1) throw Error(ErrorCode::InvalidParameter, "dimensions must be >= 1");
    if (test_state_.dim() != anc_dim_ * d_) {
      throw Error(ErrorCode::DimensionMismatch, "test state dimension != anc_dim * d");
    }
    if (povm_.dim() != anc_dim_ * d_) {
      throw Error(ErrorCode::DimensionMismatch, "povm dimension != anc_dim * d");
    }
  }

  double weight() const { return weight_; }
  Eigen::Index anc_dim() const { return anc_dim_; }
  Eigen::Index d() const { return d_; }
  const DensityOperator& test_state() const { return test_state_; }
  const Povm& povm() const { return povm_; }
  const std::string& name() const { return name_; }

 private:
  double weight_;
  Eigen::Index anc_dim_;
  Eigen::Index d_;
  DensityOperator test_state_;
  Povm povm_;
  std::string name_;
};

// Couple without ancilla: qudit test state rho, POVM on the qudit.
inline TestCouple ancilla_free_couple(double weight, const DensityOperator& rho, const Povm& povm,
                                      std::string name = {}) {
  return TestCouple(weight, 1, rho.dim(), rho, povm, std::move(name));
}

// ---------------------------------------------------------------------------
// Ppovm
// ---------------------------------------------------------------------------

struct ProcessEffect {
  std::string label;
  ComplexMatrix matrix;
};

inline std::vector<Check> ppovm_checks(const std::vector<ComplexMatrix>& effects, Eigen::Index d,
                                       double tol = kDefaultTol) {
  std::vector<Check> out;
  if (effects.empty()) {
    out.push_back({"non_empty", INFINITY, 0.0, false});
    return out;
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
  for (std::size_t a = 0; a < effects.size(); ++a) {
    if (effects[a].rows() != d * d || effects[a].cols() != d * d) {
      out.push_back({"dimension[" + std::to_string(a) + "]", INFINITY, 0.0, false});
      return out;
    }
    for (auto c : effect_checks(effects[a], tol)) {
      c.name = "effect[" + std::to_string(a) + "]." + c.name;
      out.push_back(std::move(c));
    }
    sum += effects[a];
  }
  const ComplexMatrix sigma = partial_trace(sum, d, d, Factor::Second) / static_cast<double>(d);
  out.push_back(detail::make_check("product_normalization",
                                   max_abs(kron(sigma, identity(d)) - sum),
                                   tol * std::max(1.0, max_abs(sum))));
  for (auto c : density_checks(transpose(sigma), tol)) {
    c.name = "norm_state." + c.name;
    out.push_back(std::move(c));
  }
  return out;
}

// A finite list of process effects on H_d (x) H_d summing to rho^T (x) I_d.
// Constructing one validates it; labels must be unique.
class Ppovm {
 public:
  Ppovm(Eigen::Index d, std::vector<ProcessEffect> effects, double tol = kDefaultTol)
      : d_(d), effects_(std::move(effects)), norm_state_(init(tol)) {}

  Eigen::Index d() const { return d_; }
  std::size_t size() const { return effects_.size(); }
  const std::vector<ProcessEffect>& effects() const { return effects_; }
  const ProcessEffect& operator[](std::size_t a) const { return effects_[a]; }
  // The qudit state rho with sum_a M_a = rho^T (x) I.
  const DensityOperator& norm_state() const { return norm_state_; }

  std::vector<ComplexMatrix> matrices() const {
    std::vector<ComplexMatrix> out;
    for (const auto& e : effects_) out.push_back(e.matrix);
    return out;
  }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& e : effects_) out.push_back(e.label);
    return out;
  }
  ComplexMatrix sum() const {
    ComplexMatrix s = ComplexMatrix::Zero(d_ * d_, d_ * d_);
    for (const auto& e : effects_) s += e.matrix;
    return s;
  }

 private:
  DensityOperator init(double tol) {
    if (d_ < 1) throw Error(ErrorCode::InvalidParameter, "ppovm: d must be >= 1");
    if (effects_.empty()) throw Error(ErrorCode::EmptyInput, "ppovm has no effects");
    std::set<std::string> seen;
    ComplexMatrix s = ComplexMatrix::Zero(d_ * d_, d_ * d_);
    for (std::size_t a = 0; a < effects_.size(); ++a) {
      auto& e = effects_[a];
      if (e.label.empty()) e.label = "M" + std::to_string(a);
      if (!seen.insert(e.label).second) {
        throw Error(ErrorCode::InvalidParameter, "ppovm: duplicate label '" + e.label + "'", a);
      }
      if (e.matrix.rows() != d_ * d_ || e.matrix.cols() != d_ * d_) {
        throw Error(ErrorCode::DimensionMismatch, "ppovm: effect is not d^2 x d^2", a);
      }
      for (const auto& c : effect_checks(e.matrix, tol)) {
        if (c.pass) continue;
        throw Error(c.name == "below_identity" ? ErrorCode::EffectExceedsIdentity : ErrorCode::NotPsd,
                    "process effect " + std::to_string(a) + " (" + e.label + "): " + c.name +
                        " residual " + std::to_string(c.residual),
                    a);
      }
      s += e.matrix;
    }
    const ComplexMatrix sigma = partial_trace(s, d_, d_, Factor::Second) / static_cast<double>(d_);
    const double prod_res = max_abs(kron(sigma, identity(d_)) - s);
    if (prod_res > tol * std::max(1.0, max_abs(s))) {
      throw Error(ErrorCode::NotProductNormalization,
                  "sum of effects is not sigma (x) I (residual " + std::to_string(prod_res) + ")");
    }
    try {
      return DensityOperator(transpose(sigma), tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::NormStateInvalid, e.what());
    }
  }

  Eigen::Index d_;
  std::vector<ProcessEffect> effects_;
  DensityOperator norm_state_;
};

inline Ppovm validate_ppovm(const std::vector<ComplexMatrix>& effects, Eigen::Index d,
                            double tol = kDefaultTol) {
  std::vector<ProcessEffect> labeled;
  for (std::size_t a = 0; a < effects.size(); ++a) {
    labeled.push_back({"M" + std::to_string(a), effects[a]});
  }
  return Ppovm(d, std::move(labeled), tol);
}

inline Ppovm validate_ppovm(std::vector<ProcessEffect> effects, Eigen::Index d,
                            double tol = kDefaultTol) {
  return Ppovm(d, std::move(effects), tol);
}

// Equality up to relabeling and reordering: greedy matching under the max
// norm.
inline bool equal_as_multiset(const Ppovm& a, const Ppovm& b, double tol = kDefaultTol) {
  if (a.d() != b.d() || a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ea : a.effects()) {
    bool found = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      if (max_abs(ea.matrix - b[k].matrix) < tol) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Construction from an experiment
// ---------------------------------------------------------------------------

inline std::string couple_effect_label(const std::vector<TestCouple>& couples, std::size_t j,
                                       std::size_t k) {
  const TestCouple& c = couples[j];
  const std::string& povm_label = c.povm().labels()[k];
  if (!c.name().empty()) return c.name() + "," + povm_label;
  if (couples.size() == 1) return povm_label;
  return std::to_string(j) + "/" + povm_label;
}

// M = (R*_rho (x) Id)[F] for a test state on H_D (x) H_d and an operator F on
// the same space.
inline ComplexMatrix process_effect_of(const DensityOperator& rho, Eigen::Index anc_dim,
                                       Eigen::Index d, const ComplexMatrix& f) {
  const KrausChannel r_dual = dual(state_map(rho, anc_dim, d));
  const ComplexMatrix m = apply_on_factor(r_dual, f, d, Factor::First);
  return 0.5 * (m + m.adjoint());
}

inline Ppovm build_ppovm(const std::vector<TestCouple>& couples, Eigen::Index d,
                         double tol = kDefaultTol) {
  if (couples.empty()) throw Error(ErrorCode::EmptyInput, "build_ppovm: no couples");
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < couples.size(); ++j) {
    if (couples[j].d() != d) {
      throw Error(ErrorCode::DimensionMismatch, "build_ppovm: couple qudit dimension != d", j);
    }
    weight_sum += couples[j].weight();
  }
  if (std::abs(weight_sum - 1.0) > tol) {
    throw Error(ErrorCode::InvalidParameter,
                "build_ppovm: couple weights sum to " + std::to_string(weight_sum));
  }

  std::vector<ProcessEffect> effects;
  ComplexMatrix average = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < couples.size(); ++j) {
    const TestCouple& c = couples[j];
    const KrausChannel r_dual = dual(state_map(c.test_state(), c.anc_dim(), d));
    for (std::size_t k = 0; k < c.povm().size(); ++k) {
      ComplexMatrix m = c.weight() * apply_on_factor(r_dual, c.povm()[k], d, Factor::First);
      effects.push_back({couple_effect_label(couples, j, k), 0.5 * (m + m.adjoint())});
    }
    average += c.weight() * partial_trace(c.test_state().matrix(), c.anc_dim(), d, Factor::First);
  }
  Ppovm out(d, std::move(effects), tol);
  const double res = max_abs(out.norm_state().matrix() - average);
  if (res > tol) {
    throw Error(ErrorCode::NotProductNormalization,
                "build_ppovm: normalization state differs from averaged test state by " +
                    std::to_string(res));
  }
  return out;
}

// Replaces a list of couples by the single couple
//   Xi = sum_j p_j |j><j| (x) rho_j,   POVM {|j><j| (x) F_jk},
// with ancillas padded to the largest one. The flag register is the major
// ancilla factor.
inline TestCouple merge_couples(const std::vector<TestCouple>& couples, double tol = kDefaultTol) {
  if (couples.empty()) throw Error(ErrorCode::EmptyInput, "merge_couples: no couples");
  const Eigen::Index d = couples.front().d();
  Eigen::Index anc = 1;
  for (std::size_t j = 0; j < couples.size(); ++j) {
    if (couples[j].d() != d) {
      throw Error(ErrorCode::DimensionMismatch, "merge_couples: qudit dimensions differ", j);
    }
    anc = std::max(anc, couples[j].anc_dim());
  }
  const auto m = static_cast<Eigen::Index>(couples.size());
  const Eigen::Index big = m * anc * d;
  const ComplexMatrix id_d = identity(d);

  ComplexMatrix xi = ComplexMatrix::Zero(big, big);
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  for (Eigen::Index j = 0; j < m; ++j) {
    const TestCouple& c = couples[static_cast<std::size_t>(j)];
    // Isometry embedding the couple's ancilla into the padded one.
    ComplexMatrix embed = ComplexMatrix::Zero(anc, c.anc_dim());
    for (Eigen::Index a = 0; a < c.anc_dim(); ++a) embed(a, a) = 1.0;
    const ComplexMatrix e = kron(embed, id_d);
    const ComplexMatrix flag = projector(basis_ket(m, j));
    const ComplexMatrix complement =
        kron(identity(anc) - embed * embed.adjoint(), id_d);

    xi += c.weight() * kron(flag, e * c.test_state().matrix() * e.adjoint());
    for (std::size_t k = 0; k < c.povm().size(); ++k) {
      ComplexMatrix f = e * c.povm()[k] * e.adjoint();
      if (k == 0) f += complement;
      effects.push_back(kron(flag, f));
      labels.push_back(couple_effect_label(couples, static_cast<std::size_t>(j), k));
    }
  }
  const ComplexMatrix xi_h = 0.5 * (xi + xi.adjoint());
  const double trace = xi_h.trace().real();
  return TestCouple(1.0, m * anc, d, DensityOperator(xi_h / trace, tol),
                    Povm(std::move(effects), std::move(labels), tol));
}

// ---------------------------------------------------------------------------
// Probabilities
// ---------------------------------------------------------------------------

inline std::vector<double> outcome_probabilities(const Ppovm& pp, const ProcessState& omega,
                                                 double tol = kDefaultTol) {
  if (omega.d() != pp.d()) {
    throw Error(ErrorCode::DimensionMismatch, "outcome_probabilities: channel dimension != d");
  }
  std::vector<double> out;
  out.reserve(pp.size());
  for (std::size_t a = 0; a < pp.size(); ++a) {
    const double p = trace_product_real(omega.matrix(), pp[a].matrix);
    if (p < -tol || p > 1.0 + tol) {
      throw Error(ErrorCode::ProbabilityNormalization,
                  "outcome probability " + std::to_string(p) + " outside [0, 1]", a);
    }
    out.push_back(std::clamp(p, 0.0, 1.0));
  }
  return out;
}

inline std::vector<double> outcome_probabilities(const Ppovm& pp, const KrausChannel& ch,
                                                 double tol = kDefaultTol) {
  if (ch.dim_in() != pp.d() || ch.dim_out() != pp.d()) {
    throw Error(ErrorCode::DimensionMismatch, "outcome_probabilities: channel dimension != d");
  }
  if (!ch.trace_preserving()) {
    throw Error(ErrorCode::NotTracePreserving, "outcome_probabilities: channel is not TP");
  }
  return outcome_probabilities(pp, choi_of_channel(ch), tol);
}

// ---------------------------------------------------------------------------
// Realization as an experiment
// ---------------------------------------------------------------------------

struct Realization {
  ComplexVector test_vector;   // |Xi> on H_r (x) H_d, normalized
  Eigen::Index r = 0;          // ancilla dimension = rank of the norm state
  Eigen::Index d = 0;
  ComplexMatrix ancilla_map;   // A (r x d) with (A (x) I)|Psi+> = |Xi>, A^dag A = rho^T
  std::vector<ComplexMatrix> povm;
  std::vector<std::string> labels;
};

// Implements a PPOVM with a pure test state on a minimal ancilla and the POVM
//   F_a = (A^+dag (x) I) M_a (A^+ (x) I).
// For a full-rank norm state A = sqrt(rho^T).
inline Realization realize(const Ppovm& pp, double tol = kDefaultTol) {
  const Eigen::Index d = pp.d();
  const ComplexMatrix rho_t = transpose(pp.norm_state().matrix());
  const HermitianEigen eig = herm_eig(rho_t);
  const double top = eig.values.maxCoeff();

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    if (eig.values(k) > tol * top) kept.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(kept.size());
  const double smallest = eig.values(kept.back());

  ComplexMatrix a;
  if (r == d) {
    a = mat_sqrt_psd(rho_t);
  } else {
    a = ComplexMatrix::Zero(r, d);
    for (Eigen::Index j = 0; j < r; ++j) {
      const Eigen::Index k = kept[static_cast<std::size_t>(j)];
      a.row(j) = std::sqrt(eig.values(k)) * eig.vectors.col(k).adjoint();
    }
  }
  const ComplexMatrix a_pinv = pinv(a, tol);
  const ComplexMatrix support = kron(a_pinv * a, identity(d));
  const ComplexMatrix left = kron(a_pinv.adjoint(), identity(d));
  const ComplexMatrix right = kron(a_pinv, identity(d));

  Realization out;
  out.r = r;
  out.d = d;
  out.ancilla_map = a;
  out.test_vector = vec_flatten(a);
  out.test_vector /= out.test_vector.norm();
  for (std::size_t i = 0; i < pp.size(); ++i) {
    const ComplexMatrix& m = pp[i].matrix;
    const double leak = max_abs(support * m * support - m);
    if (leak > std::max(1e-8, 10.0 * tol) * std::max(1.0, max_abs(m))) {
      throw Error(ErrorCode::SupportViolation,
                  "process effect " + pp[i].label + " leaves supp(rho^T) (x) H_d", i);
    }
    const ComplexMatrix f = left * m * right;
    out.povm.push_back(0.5 * (f + f.adjoint()));
    out.labels.push_back(pp[i].label);
  }
  // Validates effect bounds and completeness; error amplification scales
  // with the inverse of the smallest kept eigenvalue.
  const double povm_tol = tol * std::max(1.0, top / smallest);
  (void)Povm(out.povm, out.labels, povm_tol);
  return out;
}

inline TestCouple realization_couple(const Realization& real, double tol = kDefaultTol) {
  return TestCouple(1.0, real.r, real.d, DensityOperator::pure(real.test_vector, tol),
                    Povm(real.povm, real.labels, std::max(tol, 1e-8)));
}

// (I - rho^T) (x) I: completes a PPOVM to a POVM on operators of trace d.
// Its rate Tr[omega M_extra] equals d - 1 for every process state.
inline ComplexMatrix extra_effect(const Ppovm& pp) {
  const Eigen::Index d = pp.d();
  return kron(identity(d) - transpose(pp.norm_state().matrix()), identity(d));
}

}  // namespace ppovm

#endif  // PPOVM_PROCESS_POVM_HPP
