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

// States, POVMs, completely positive maps and the Choi-Jamiolkowski
// correspondence.
//
// Channels always act on the SECOND tensor factor: the process state of a
// channel E on a qudit is omega_E = (Id (x) E)[Psi+] with the unnormalized
// Psi+ = sum_{jk} |jj><kk| (Tr Psi+ = d).

#ifndef PPOVM_QUANTUM_HPP
#define PPOVM_QUANTUM_HPP

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ppovm/error.hpp"
#include "ppovm/matcore.hpp"

namespace ppovm {

// Kraus operators with s_k < kKrausCutoff * s_max are dropped when a CP map
// is extracted from a positive operator.
inline constexpr double kKrausCutoff = 1e-12;

// A named invariant together with its measured residual.
struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

inline std::string first_failure(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) {
      return c.name + " residual " + std::to_string(c.residual) + " > " +
             std::to_string(c.threshold);
    }
  }
  return {};
}

namespace detail {

inline Check make_check(std::string name, double residual, double threshold) {
  return Check{std::move(name), residual, threshold, residual <= threshold};
}

// Negative part of the spectrum, 0 when PSD.
inline double negativity(const ComplexMatrix& m) {
  return std::max(0.0, -herm_eig(m, 1.0).values.minCoeff());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Invariant checks (used by the validating constructors and the CLI)
// ---------------------------------------------------------------------------

inline std::vector<Check> density_checks(const ComplexMatrix& m, double tol = kDefaultTol) {
  std::vector<Check> out;
  if (m.rows() != m.cols() || m.rows() == 0) {
    out.push_back({"square", INFINITY, 0.0, false});
    return out;
  }
  const double scale = std::max(1.0, max_abs(m));
  const double herm = hermiticity_residual(m);
  out.push_back(detail::make_check("hermitian", herm, tol * scale));
  if (!out.back().pass) return out;
  out.push_back(detail::make_check("psd", detail::negativity(m), tol * scale));
  out.push_back(detail::make_check("trace", std::abs(m.trace() - 1.0), tol));
  return out;
}

inline std::vector<Check> effect_checks(const ComplexMatrix& m, double tol = kDefaultTol) {
  std::vector<Check> out;
  if (m.rows() != m.cols() || m.rows() == 0) {
    out.push_back({"square", INFINITY, 0.0, false});
    return out;
  }
  const double scale = std::max(1.0, max_abs(m));
  out.push_back(detail::make_check("hermitian", hermiticity_residual(m), tol * scale));
  if (!out.back().pass) return out;
  const RealVector ev = herm_eig(m, 1.0).values;
  out.push_back(detail::make_check("psd", std::max(0.0, -ev.minCoeff()), tol * scale));
  out.push_back(detail::make_check("below_identity", std::max(0.0, ev.maxCoeff() - 1.0), tol));
  return out;
}

// ---------------------------------------------------------------------------
// DensityOperator
// ---------------------------------------------------------------------------

class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m, double tol = kDefaultTol) : matrix_(std::move(m)) {
    const auto checks = density_checks(matrix_, tol);
    if (!all_pass(checks)) {
      throw Error(ErrorCode::InvalidState, "density operator: " + first_failure(checks));
    }
  }

  static DensityOperator pure(const ComplexVector& psi, double tol = kDefaultTol) {
    return DensityOperator(projector(psi / psi.norm()), tol);
  }

  static DensityOperator maximally_mixed(Eigen::Index dim) {
    return DensityOperator(identity(dim) / static_cast<double>(dim));
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// ---------------------------------------------------------------------------
// Effect / Povm
// ---------------------------------------------------------------------------

class Effect {
 public:
  explicit Effect(ComplexMatrix m, double tol = kDefaultTol) : matrix_(std::move(m)) {
    const auto checks = effect_checks(matrix_, tol);
    for (const auto& c : checks) {
      if (c.pass) continue;
      throw Error(c.name == "below_identity" ? ErrorCode::EffectExceedsIdentity : ErrorCode::NotPsd,
                  "effect: " + first_failure(checks));
    }
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

inline double completeness_residual(const std::vector<ComplexMatrix>& effects) {
  if (effects.empty()) return INFINITY;
  ComplexMatrix sum = ComplexMatrix::Zero(effects.front().rows(), effects.front().cols());
  for (const auto& f : effects) sum += f;
  return max_abs(sum - identity(sum.rows()));
}

inline std::vector<Check> povm_checks(const std::vector<ComplexMatrix>& effects,
                                      double tol = kDefaultTol) {
  std::vector<Check> out;
  if (effects.empty()) {
    out.push_back({"non_empty", INFINITY, 0.0, false});
    return out;
  }
  for (std::size_t k = 0; k < effects.size(); ++k) {
    if (effects[k].rows() != effects.front().rows() || effects[k].cols() != effects.front().rows()) {
      out.push_back({"dimension[" + std::to_string(k) + "]", INFINITY, 0.0, false});
      return out;
    }
    for (auto c : effect_checks(effects[k], tol)) {
      c.name = "effect[" + std::to_string(k) + "]." + c.name;
      out.push_back(std::move(c));
    }
  }
  out.push_back(detail::make_check("completeness", completeness_residual(effects), tol));
  return out;
}

class Povm {
 public:
  Povm(std::vector<ComplexMatrix> effects, std::vector<std::string> labels = {},
       double tol = kDefaultTol) {
    if (effects.empty()) throw Error(ErrorCode::EmptyInput, "povm has no effects");
    if (labels.empty()) {
      for (std::size_t k = 0; k < effects.size(); ++k) labels.push_back("F" + std::to_string(k));
    }
    if (labels.size() != effects.size()) {
      throw Error(ErrorCode::DimensionMismatch, "povm: label count != effect count");
    }
    const Eigen::Index dim = effects.front().rows();
    for (std::size_t k = 0; k < effects.size(); ++k) {
      if (effects[k].rows() != dim || effects[k].cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "povm: effect dimensions differ", k);
      }
      try {
        effects_.emplace_back(std::move(effects[k]), tol);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("povm effect ") + std::to_string(k) + ": " + e.what(), k);
      }
    }
    labels_ = std::move(labels);
    const double res = completeness_residual(matrices());
    if (res > tol) {
      throw Error(ErrorCode::IncompletePovm,
                  "povm completeness residual " + std::to_string(res));
    }
  }

  Eigen::Index dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const std::vector<Effect>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const ComplexMatrix& operator[](std::size_t k) const { return effects_[k].matrix(); }

  std::vector<ComplexMatrix> matrices() const {
    std::vector<ComplexMatrix> out;
    out.reserve(effects_.size());
    for (const auto& e : effects_) out.push_back(e.matrix());
    return out;
  }

 private:
  std::vector<Effect> effects_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// KrausChannel
// ---------------------------------------------------------------------------

// Completely positive map X -> sum_k A_k X A_k^dag from B(H_in) to B(H_out).
// Trace preservation is recorded, not enforced: internal maps such as the
// state-induced map R_rho are CP but not TP.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> kraus, double tol = kDefaultTol)
      : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw Error(ErrorCode::EmptyInput, "channel needs a Kraus operator");
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    for (std::size_t k = 0; k < kraus_.size(); ++k) {
      if (kraus_[k].rows() != dim_out_ || kraus_[k].cols() != dim_in_) {
        throw Error(ErrorCode::DimensionMismatch, "Kraus operator shapes differ", k);
      }
      if (!all_finite(kraus_[k])) {
        throw Error(ErrorCode::InvalidParameter, "Kraus operator has non-finite entries", k);
      }
    }
    trace_preserving_ = tp_residual() <= tol;
  }

  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }

  // ||sum_k A_k^dag A_k - I||_max
  double tp_residual() const {
    ComplexMatrix s = ComplexMatrix::Zero(dim_in_, dim_in_);
    for (const auto& a : kraus_) s += a.adjoint() * a;
    return max_abs(s - identity(dim_in_));
  }

 private:
  std::vector<ComplexMatrix> kraus_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
  bool trace_preserving_ = false;
};

inline ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.dim_in() || x.cols() != ch.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch,
                "apply: operand is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                    ", channel input dim " + std::to_string(ch.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.kraus()) out += a * x * a.adjoint();
  return out;
}

// Applies ch to one tensor factor of an operator on H_A (x) H_B (the other
// factor has dimension `other_dim`).
inline ComplexMatrix apply_on_factor(const KrausChannel& ch, const ComplexMatrix& x,
                                     Eigen::Index other_dim, Factor which) {
  const Eigen::Index in = ch.dim_in() * other_dim;
  if (x.rows() != in || x.cols() != in) {
    throw Error(ErrorCode::DimensionMismatch, "apply_on_factor: operand dimension mismatch");
  }
  const ComplexMatrix id = identity(other_dim);
  const Eigen::Index out_dim = ch.dim_out() * other_dim;
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (const auto& a : ch.kraus()) {
    const ComplexMatrix big = which == Factor::First ? kron(a, id) : kron(id, a);
    out += big * x * big.adjoint();
  }
  return out;
}

// Dual map with respect to Tr{B^dag T[A]} = Tr{(T*[B])^dag A}.
inline KrausChannel dual(const KrausChannel& ch) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.kraus().size());
  for (const auto& a : ch.kraus()) ops.push_back(a.adjoint());
  return KrausChannel(std::move(ops));
}

// ---------------------------------------------------------------------------
// ProcessState
// ---------------------------------------------------------------------------

inline std::vector<Check> process_state_checks(const ComplexMatrix& m, Eigen::Index d,
                                               double tol = kDefaultTol) {
  std::vector<Check> out;
  if (d <= 0 || m.rows() != d * d || m.cols() != d * d) {
    out.push_back({"dimension", INFINITY, 0.0, false});
    return out;
  }
  const double scale = std::max(1.0, max_abs(m));
  out.push_back(detail::make_check("hermitian", hermiticity_residual(m), tol * scale));
  if (!out.back().pass) return out;
  out.push_back(detail::make_check("psd", detail::negativity(m), tol * scale));
  out.push_back(detail::make_check("trace", std::abs(m.trace() - static_cast<double>(d)), tol));
  out.push_back(detail::make_check(
      "marginal", max_abs(partial_trace(m, d, d, Factor::Second) - identity(d)), tol));
  return out;
}

// Choi operator of a qudit channel: PSD, Tr = d, Tr_2 = I.
class ProcessState {
 public:
  ProcessState(Eigen::Index d, ComplexMatrix m, double tol = kDefaultTol)
      : d_(d), matrix_(std::move(m)), valid_(true) {
    const auto checks = process_state_checks(matrix_, d_, tol);
    if (!all_pass(checks)) {
      throw Error(ErrorCode::InvalidProcessState, "process state: " + first_failure(checks));
    }
  }

  // Skips validation and marks the operator as possibly violating the
  // process-state invariants (e.g. the Choi operator of a non-TP map).
  static ProcessState unchecked(Eigen::Index d, ComplexMatrix m, bool valid) {
    ProcessState s;
    s.d_ = d;
    s.matrix_ = std::move(m);
    s.valid_ = valid;
    return s;
  }

  Eigen::Index d() const { return d_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool valid() const { return valid_; }

 private:
  ProcessState() = default;
  Eigen::Index d_ = 0;
  ComplexMatrix matrix_;
  bool valid_ = false;
};

inline ProcessState choi_of_channel(const KrausChannel& ch) {
  if (ch.dim_in() != ch.dim_out()) {
    throw Error(ErrorCode::DimensionMismatch, "choi_of_channel: channel is not square");
  }
  const Eigen::Index d = ch.dim_in();
  ComplexMatrix omega = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : ch.kraus()) {
    // (I (x) A)|Psi+> has entry A(m, i) at index i*d + m.
    ComplexVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index m = 0; m < d; ++m) v(i * d + m) = a(m, i);
    }
    omega += v * v.adjoint();
  }
  return ProcessState::unchecked(d, std::move(omega), ch.trace_preserving());
}

inline KrausChannel channel_of_choi(const ProcessState& omega) {
  if (!omega.valid()) {
    throw Error(ErrorCode::InvalidProcessState, "channel_of_choi: input violates invariants");
  }
  const Eigen::Index d = omega.d();
  const HermitianEigen eig = herm_eig(omega.matrix());
  const double top = eig.values.maxCoeff();
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    const double s = eig.values(k);
    if (s < kKrausCutoff * top) continue;
    ComplexMatrix op(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index i = 0; i < d; ++i) op(m, i) = std::sqrt(s) * eig.vectors(i * d + m, k);
    }
    ops.push_back(std::move(op));
  }
  return KrausChannel(std::move(ops));
}

// CP map R: B(H_d) -> B(H_D) with (R (x) Id)[Psi+] = op for a positive
// operator on H_D (x) H_d. Kraus operators are sqrt(lambda_j) times the
// reshaped eigenvectors of op.
inline KrausChannel cp_map_of_positive(const ComplexMatrix& op, Eigen::Index dim_anc,
                                       Eigen::Index d) {
  if (op.rows() != dim_anc * d || op.cols() != dim_anc * d) {
    throw Error(ErrorCode::DimensionMismatch, "cp_map_of_positive: operator dimension != D*d");
  }
  const HermitianEigen eig = herm_eig(op);
  const double top = std::max(0.0, eig.values.maxCoeff());
  if (eig.values.minCoeff() < -kDefaultTol * std::max(1.0, top)) {
    throw Error(ErrorCode::NotPsd, "cp_map_of_positive: operator is not positive");
  }
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    const double s = eig.values(k);
    if (s <= kKrausCutoff * top) continue;
    ops.push_back(std::sqrt(s) * vec_reshape(eig.vectors.col(k), dim_anc, d));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix::Zero(dim_anc, d));
  return KrausChannel(std::move(ops));
}

// R_rho: the CP map with (R_rho (x) Id)[Psi+] = rho.
inline KrausChannel state_map(const DensityOperator& rho, Eigen::Index dim_anc, Eigen::Index d) {
  return cp_map_of_positive(rho.matrix(), dim_anc, d);
}

// ---------------------------------------------------------------------------
// Standard channels
// ---------------------------------------------------------------------------

inline KrausChannel identity_channel(Eigen::Index d) { return KrausChannel({identity(d)}); }

inline KrausChannel unitary_channel(const ComplexMatrix& u, double tol = kDefaultTol) {
  if (!is_unitary(u, tol)) throw Error(ErrorCode::NotUnitary, "unitary_channel: U^dag U != I");
  return KrausChannel({u});
}

// Maps every state to the fixed pure state |target>.
inline KrausChannel contraction_channel(const ComplexVector& target, double tol = kDefaultTol) {
  if (std::abs(target.norm() - 1.0) > tol) {
    throw Error(ErrorCode::InvalidParameter, "contraction target must be normalized");
  }
  const Eigen::Index d = target.size();
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index i = 0; i < d; ++i) ops.push_back(target * basis_ket(d, i).adjoint());
  return KrausChannel(std::move(ops));
}

// rho -> (1 - p) rho + p Tr(rho) I / d
inline KrausChannel depolarizing_channel(double p, Eigen::Index d) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "depolarizing p must lie in [0, 1]");
  }
  std::vector<ComplexMatrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * identity(d));
  if (p > 0.0) {
    const double c = std::sqrt(p / static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        ops.push_back(c * basis_ket(d, i) * basis_ket(d, j).adjoint());
      }
    }
  }
  return KrausChannel(std::move(ops));
}

namespace standard {
struct Identity {};
struct Unitary {
  ComplexMatrix u;
};
struct Contraction {
  ComplexVector target;
};
struct Depolarizing {
  double p = 0.0;
};
}  // namespace standard

using StandardKind =
    std::variant<standard::Identity, standard::Unitary, standard::Contraction, standard::Depolarizing>;

inline KrausChannel make_standard(const StandardKind& kind, Eigen::Index d) {
  struct Visitor {
    Eigen::Index d;
    KrausChannel operator()(const standard::Identity&) const { return identity_channel(d); }
    KrausChannel operator()(const standard::Unitary& k) const {
      if (k.u.rows() != d) throw Error(ErrorCode::DimensionMismatch, "unitary has wrong dimension");
      return unitary_channel(k.u);
    }
    KrausChannel operator()(const standard::Contraction& k) const {
      if (k.target.size() != d) throw Error(ErrorCode::DimensionMismatch, "target has wrong dimension");
      return contraction_channel(k.target);
    }
    KrausChannel operator()(const standard::Depolarizing& k) const {
      return depolarizing_channel(k.p, d);
    }
  };
  return std::visit(Visitor{d}, kind);
}

}  // namespace ppovm

#endif  // PPOVM_QUANTUM_HPP
