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

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "ppovm/quantum.hpp"
#include "ppovm/random.hpp"
#include "ppovm/schemes.hpp"
#include "test_util.hpp"

using namespace ppovm;

namespace {

std::vector<ComplexMatrix> ops_of(const KrausChannel& ch) { return ch.kraus(); }

}  // namespace

TEST(DensityOperator, AcceptsStatesRejectsOthers) {
  EXPECT_NO_THROW(DensityOperator::maximally_mixed(3));
  EXPECT_NO_THROW(DensityOperator::pure(basis_ket(2, 1)));
  EXPECT_ERROR_CODE(DensityOperator(identity(2)), ErrorCode::InvalidState);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_ERROR_CODE(DensityOperator(neg), ErrorCode::InvalidState);
  ComplexMatrix nonherm = identity(2) / 2.0;
  nonherm(0, 1) = 0.1;
  EXPECT_ERROR_CODE(DensityOperator(nonherm), ErrorCode::InvalidState);
}

TEST(DensityChecks, ReportResiduals) {
  const auto checks = density_checks(identity(2));
  ASSERT_FALSE(all_pass(checks));
  EXPECT_EQ(first_failure(checks).rfind("trace", 0), 0u);
}

TEST(Effect, Bounds) {
  EXPECT_NO_THROW(Effect(identity(2)));
  EXPECT_ERROR_CODE(Effect(2.0 * identity(2)), ErrorCode::EffectExceedsIdentity);
  EXPECT_ERROR_CODE(Effect(-identity(2)), ErrorCode::NotPsd);
}

TEST(Povm, CompletenessAndLabels) {
  const ComplexMatrix p0 = projector(basis_ket(2, 0));
  const Povm ok({p0, identity(2) - p0});
  EXPECT_EQ(ok.labels(), (std::vector<std::string>{"F0", "F1"}));
  EXPECT_ERROR_CODE(Povm({p0}), ErrorCode::IncompletePovm);
  EXPECT_GT(completeness_residual({p0}), 0.99);
  EXPECT_ERROR_CODE(Povm({}), ErrorCode::EmptyInput);
  EXPECT_ERROR_CODE(Povm({p0, identity(2) - p0}, {"a"}), ErrorCode::DimensionMismatch);
}

TEST(KrausChannel, ApplyExamples) {
  random::Rng rng(1);
  const ComplexMatrix rho = random::density(rng, 2);
  EXPECT_LT(max_abs_diff(ppovm::apply(identity_channel(2), rho), rho), 1e-15);

  const KrausChannel a0 = contraction_channel(basis_ket(2, 0));
  EXPECT_LT(max_abs_diff(ppovm::apply(a0, projector(basis_ket(2, 1))), projector(basis_ket(2, 0))), 1e-15);
  ASSERT_EQ(a0.kraus().size(), 2u);
  EXPECT_LT(max_abs_diff(a0.kraus()[0], basis_ket(2, 0) * basis_ket(2, 0).adjoint()), 1e-15);
  EXPECT_LT(max_abs_diff(a0.kraus()[1], basis_ket(2, 0) * basis_ket(2, 1).adjoint()), 1e-15);

  EXPECT_LT(max_abs_diff(ppovm::apply(depolarizing_channel(1.0, 2), rho), identity(2) / 2.0), 1e-15);
  EXPECT_ERROR_CODE(ppovm::apply(a0, identity(3)), ErrorCode::DimensionMismatch);
}

TEST(KrausChannel, TracePreservationFlag) {
  random::Rng rng(2);
  EXPECT_TRUE(random::channel(rng, 3).trace_preserving());
  const KrausChannel half({identity(2) / std::sqrt(2.0)});
  EXPECT_FALSE(half.trace_preserving());
  EXPECT_NEAR(half.tp_residual(), 0.5, 1e-15);
  EXPECT_ERROR_CODE(KrausChannel({identity(2), identity(3)}), ErrorCode::DimensionMismatch);
}

TEST(KrausChannel, DualSatisfiesAdjointRelation) {
  random::Rng rng(3);
  const KrausChannel ch = random::channel(rng, 3, 2);
  const KrausChannel du = dual(ch);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix a = random::ginibre(rng, 3, 3), b = random::ginibre(rng, 3, 3);
    const cplx lhs = oracle::trace_of_product(b.adjoint(), ppovm::apply(ch, a));
    const cplx rhs = oracle::trace_of_product(ppovm::apply(du, b).adjoint(), a);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(ApplyOnFactor, MatchesKronOracle) {
  random::Rng rng(4);
  const KrausChannel ch = random::channel(rng, 2, 3);
  const ComplexMatrix x = random::density(rng, 6);
  EXPECT_LT(max_abs_diff(apply_on_factor(ch, x, 3, Factor::Second), oracle::apply_second(ops_of(ch), x, 3)), 1e-13);
}

TEST(Choi, StandardChannels) {
  EXPECT_LT(max_abs_diff(choi_of_channel(identity_channel(2)).matrix(), psi_plus(2)), 1e-15);
  const ProcessState w0 = choi_of_channel(contraction_channel(basis_ket(2, 0)));
  EXPECT_LT(max_abs_diff(w0.matrix(), kron(identity(2), projector(basis_ket(2, 0)))), 1e-15);
  EXPECT_TRUE(w0.valid());

  random::Rng rng(5);
  const ComplexMatrix u = random::unitary(rng, 3);
  const ComplexVector omega_u = kron(identity(3), u) * psi_plus_vector(3);
  EXPECT_LT(max_abs_diff(choi_of_channel(unitary_channel(u)).matrix(), projector(omega_u)), 1e-13);
}

TEST(Choi, MatchesBruteForceDefinition) {
  random::Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index d = 2 + t % 2;
    const KrausChannel ch = random::channel(rng, d, 1 + t % 5);
    EXPECT_LT(max_abs_diff(choi_of_channel(ch).matrix(), oracle::choi(ops_of(ch))), 1e-13);
  }
}

TEST(Choi, DepolarizingSpectrum) {
  // Brute-force: (1-p) Psi+ + p I/d has eigenvalues (1-p) d + p/d once and
  // p/d with multiplicity d^2 - 1. For d = 2, p = 0.5: 1.25 and 0.25 (x3).
  const Eigen::Index d = 2;
  const double p = 0.5;
  const RealVector ev = herm_eig(oracle::choi(ops_of(depolarizing_channel(p, d)))).values;
  EXPECT_NEAR(ev(3), 1.25, 1e-14);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev(k), 0.25, 1e-14);
  EXPECT_NEAR(ev.sum(), static_cast<double>(d), 1e-14);
  const RealVector lib = herm_eig(choi_of_channel(depolarizing_channel(p, d)).matrix()).values;
  EXPECT_LT((lib - ev).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Choi, NonTracePreservingIsMarkedInvalid) {
  const ProcessState w = choi_of_channel(KrausChannel({identity(2) / std::sqrt(2.0)}));
  EXPECT_FALSE(w.valid());
  EXPECT_ERROR_CODE(channel_of_choi(w), ErrorCode::InvalidProcessState);
}

TEST(ChannelOfChoi, Examples) {
  const KrausChannel id = channel_of_choi(ProcessState(2, psi_plus(2)));
  ASSERT_EQ(id.kraus().size(), 1u);
  EXPECT_LT(max_abs_diff(id.kraus()[0], identity(2)), 1e-14);

  const ComplexMatrix w0 = kron(identity(2), projector(basis_ket(2, 0)));
  const KrausChannel a0 = channel_of_choi(ProcessState(2, w0));
  EXPECT_EQ(a0.kraus().size(), 2u);
  EXPECT_LT(max_abs_diff(choi_of_channel(a0).matrix(), w0), 1e-14);
  EXPECT_LT(max_abs_diff(ppovm::apply(a0, projector(basis_ket(2, 1))), projector(basis_ket(2, 0))), 1e-14);
}

TEST(ChannelOfChoi, RoundTripRandom) {
  random::Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index d = 2 + t % 2;
    const ProcessState w = choi_of_channel(random::channel(rng, d, 1 + t % 6));
    const KrausChannel back = channel_of_choi(w);
    EXPECT_TRUE(back.trace_preserving());
    EXPECT_LT(max_abs_diff(choi_of_channel(back).matrix(), w.matrix()), 1e-12);
  }
}

TEST(ProcessState, Invariants) {
  EXPECT_NO_THROW(ProcessState(2, psi_plus(2)));
  EXPECT_ERROR_CODE(ProcessState(2, psi_plus(2) / 2.0), ErrorCode::InvalidProcessState);
  EXPECT_ERROR_CODE(ProcessState(2, kron(projector(basis_ket(2, 0)), identity(2))), ErrorCode::InvalidProcessState);
  EXPECT_ERROR_CODE(ProcessState(3, psi_plus(2)), ErrorCode::InvalidProcessState);
}

TEST(StateMap, MaximallyEntangledGivesScaledIdentity) {
  const Eigen::Index d = 3;
  const KrausChannel r = state_map(DensityOperator::pure(psi_plus_vector(d)), d, d);
  ASSERT_EQ(r.kraus().size(), 1u);
  EXPECT_LT(max_abs_diff(r.kraus()[0], identity(d) / std::sqrt(static_cast<double>(d))), 1e-14);
}

TEST(StateMap, ReproducesTestState) {
  random::Rng rng(8);
  for (auto [anc, d] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{4, 3}, std::pair{2, 3}}) {
    const DensityOperator rho(random::density(rng, anc * d, 1 + (anc * d) / 2));
    const KrausChannel r = state_map(rho, anc, d);
    EXPECT_LT(max_abs_diff(apply_on_factor(r, psi_plus(d), d, Factor::First), rho.matrix()), 1e-12);
  }
  // factorized xi (x) sigma
  const ComplexMatrix xi = random::density(rng, 2), sigma = random::density(rng, 3);
  const DensityOperator prod(kron(xi, sigma));
  EXPECT_LT(max_abs_diff(apply_on_factor(state_map(prod, 2, 3), psi_plus(3), 3, Factor::First), kron(xi, sigma)),
            1e-12);
}

TEST(StateMap, ProductBasisState) {
  const DensityOperator rho = DensityOperator::pure(kron(basis_ket(2, 0), basis_ket(2, 1)));
  const KrausChannel r = state_map(rho, 2, 2);
  ASSERT_EQ(r.kraus().size(), 1u);
  EXPECT_LT(max_abs_diff(r.kraus()[0], basis_ket(2, 0) * basis_ket(2, 1).adjoint()), 1e-14);
}

TEST(Standard, Factories) {
  const KrausChannel id = make_standard(standard::Identity{}, 3);
  ASSERT_EQ(id.kraus().size(), 1u);
  EXPECT_LT(max_abs_diff(id.kraus()[0], identity(3)), 1e-15);
  EXPECT_TRUE(make_standard(standard::Depolarizing{0.3}, 3).trace_preserving());
  EXPECT_TRUE(make_standard(standard::Contraction{basis_ket(3, 2)}, 3).trace_preserving());
  EXPECT_TRUE(make_standard(standard::Unitary{schemes::pauli_y()}, 2).trace_preserving());
  EXPECT_ERROR_CODE(make_standard(standard::Unitary{2.0 * identity(2)}, 2), ErrorCode::NotUnitary);
  EXPECT_ERROR_CODE(make_standard(standard::Depolarizing{1.5}, 2), ErrorCode::InvalidParameter);
  EXPECT_ERROR_CODE(make_standard(standard::Unitary{identity(3)}, 2), ErrorCode::DimensionMismatch);
}
