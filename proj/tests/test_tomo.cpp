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

#include "oracles.hpp"
#include "ppovm/random.hpp"
#include "ppovm/schemes.hpp"
#include "ppovm/tomo.hpp"
#include "test_util.hpp"

using namespace ppovm;

namespace {

std::vector<ComplexMatrix> matrices_of(const Ppovm& pp) { return pp.matrices(); }

}  // namespace

TEST(Basis, GellMannIsOrthonormal) {
  for (Eigen::Index n : {1, 2, 3, 4}) {
    const HermitianBasis b = gell_mann_basis(n);
    ASSERT_EQ(b.elements.size(), static_cast<std::size_t>(n * n));
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      EXPECT_LT(hermiticity_residual(b.elements[i]), 1e-15);
      for (std::size_t j = 0; j < b.elements.size(); ++j) {
        EXPECT_NEAR(std::abs(hs_inner(b.elements[i], b.elements[j])), i == j ? 1.0 : 0.0, 1e-14);
      }
    }
  }
}

TEST(Basis, ProcessBasisSplitsMarginal) {
  for (Eigen::Index d : {2, 3}) {
    const HermitianBasis b = process_basis(d);
    ASSERT_EQ(b.elements.size(), static_cast<std::size_t>(d * d * d * d));
    for (std::size_t k = 0; k < b.elements.size(); ++k) {
      const double marginal = max_abs(oracle::trace_out_second(b.elements[k], d, d));
      if (k < static_cast<std::size_t>(d * d)) {
        EXPECT_GT(marginal, 1e-3);
      } else {
        EXPECT_LT(marginal, 1e-15);
      }
    }
  }
}

TEST(IcCheck, Schemes) {
  const IcReport pauli = ic_check(schemes::pauli_probe_ppovm());
  EXPECT_TRUE(pauli.complete);
  EXPECT_EQ(pauli.deficiency, 0);
  EXPECT_EQ(pauli.difference_dim, 12);
  const IcReport six = ic_check(schemes::six_state_ppovm());
  EXPECT_TRUE(six.complete);
  EXPECT_EQ(six.deficiency, 0);
}

TEST(IcCheck, SingleEffectIsMaximallyDeficient) {
  random::Rng rng(1);
  for (Eigen::Index d : {2, 3}) {
    const ComplexMatrix rho = random::density(rng, d);
    const IcReport ic = ic_check(validate_ppovm({kron(rho.transpose(), identity(d))}, d));
    EXPECT_FALSE(ic.complete);
    EXPECT_EQ(ic.deficiency, d * d * d * d - d * d);
    EXPECT_EQ(ic.span_rank, 1);
  }
}

TEST(IcCheck, DifferenceRankMatchesSpanOracle) {
  random::Rng rng(2);
  const std::vector<Ppovm> cases{schemes::identity_vs_contraction_ppovm(), schemes::pauli_probe_ppovm(),
                                 random::ppovm(rng, 2, 1, 4), random::ppovm(rng, 2, 2, 6),
                                 random::ppovm(rng, 3, 1, 5), random::ppovm(rng, 3, 3, 40)};
  for (const auto& pp : cases) {
    const IcReport ic = ic_check(pp);
    EXPECT_EQ(ic.difference_rank, oracle::difference_rank(matrices_of(pp), pp.d()));
    EXPECT_EQ(ic.deficiency, ic.difference_dim - ic.difference_rank);
  }
}

TEST(LinearInversion, IdentityChannelPauliProbe) {
  const Ppovm pp = schemes::pauli_probe_ppovm();
  const ProcessState truth = choi_of_channel(identity_channel(2));
  const TomographyResult r = linear_inversion(pp, outcome_probabilities(pp, truth), truth);
  EXPECT_LT(max_abs_diff(r.omega_raw, psi_plus(2)), 1e-8);
  ASSERT_TRUE(r.hs_error.has_value());
  EXPECT_LT(*r.hs_error, 1e-8);
  EXPECT_FALSE(r.ic_deficient);
}

TEST(LinearInversion, Depolarizing) {
  const Ppovm pp = schemes::six_state_ppovm();
  const ProcessState truth = choi_of_channel(depolarizing_channel(0.3, 2));
  const TomographyResult r = linear_inversion(pp, outcome_probabilities(pp, truth), truth);
  EXPECT_LT(*r.hs_error, 1e-8);
}

TEST(LinearInversion, RandomQutritChannels) {
  random::Rng rng(3);
  const Ppovm pp = random::ppovm(rng, 3, 3, 90);
  ASSERT_TRUE(ic_check(pp).complete);
  for (int t = 0; t < 5; ++t) {
    const ProcessState truth = choi_of_channel(random::channel(rng, 3));
    const TomographyResult r = linear_inversion(pp, outcome_probabilities(pp, truth), truth);
    EXPECT_LT(*r.hs_error, 1e-7);
  }
}

TEST(LinearInversion, DeficientPpovmGivesMinimumNormFit) {
  const Ppovm pp = schemes::identity_vs_contraction_ppovm();
  const ProcessState truth = choi_of_channel(depolarizing_channel(0.4, 2));
  const std::vector<double> p = outcome_probabilities(pp, truth);
  const TomographyResult r = linear_inversion(pp, p, truth);
  EXPECT_TRUE(r.ic_deficient);
  EXPECT_GT(r.ic.deficiency, 0);
  EXPECT_LT(r.residual, 1e-10);
  for (std::size_t a = 0; a < pp.size(); ++a) {
    EXPECT_NEAR(oracle::trace_of_product(r.omega_raw, pp[a].matrix).real(), p[a], 1e-10);
  }
  EXPECT_GT(*r.hs_error, 0.1);
}

TEST(LinearInversion, WrongProbabilityCount) {
  EXPECT_ERROR_CODE(linear_inversion(schemes::pauli_probe_ppovm(), {0.5, 0.5}), ErrorCode::DimensionMismatch);
}

TEST(PsdProject, ValidStateIsFixedPoint) {
  random::Rng rng(4);
  const ProcessState w = choi_of_channel(random::channel(rng, 2));
  const PsdProjection p = psd_project(w.matrix(), 2);
  EXPECT_LT(max_abs_diff(p.state.matrix(), w.matrix()), 1e-10);
  EXPECT_TRUE(p.converged);
  EXPECT_EQ(p.mixing, 0.0);
}

TEST(PsdProject, RestoresInvariants) {
  const ComplexMatrix z = schemes::pauli_z();
  const ComplexMatrix pushed = psi_plus(2) + 0.01 * kron(z, z);
  ASSERT_LT(herm_eig(pushed).values.minCoeff(), 0.0);
  const PsdProjection p = psd_project(pushed, 2);
  EXPECT_TRUE(all_pass(process_state_checks(p.state.matrix(), 2, 1e-8)));
}

TEST(PsdProject, NoisyShotDataGivesValidState) {
  const Ppovm pp = schemes::pauli_probe_ppovm();
  const KrausChannel ch = contraction_channel(basis_ket(2, 1));
  const ShotRecord rec = simulate_counts(ch, realize(pp), 10000, 5);
  const TomographyResult r = linear_inversion(pp, frequencies(pp, rec));
  EXPECT_TRUE(all_pass(process_state_checks(r.omega_projected.matrix(), 2, 1e-6)));
  EXPECT_TRUE(r.omega_projected.valid());
}

TEST(HsDistance, Examples) {
  random::Rng rng(5);
  const ProcessState w = choi_of_channel(random::channel(rng, 2));
  EXPECT_EQ(hs_distance(w.matrix(), w.matrix()), 0.0);
  // Psi+ - I/2: diagonal (1/2, -1/2, -1/2, 1/2), entries (0,3), (3,0) = 1.
  // Squared HS norm 4 * 1/4 + 2 = 3.
  EXPECT_NEAR(hs_distance(psi_plus(2), identity(4) / 2.0), std::sqrt(3.0), 1e-15);
}

TEST(Simulate, DeterministicAndShardIndependent) {
  const Ppovm pp = schemes::pauli_probe_ppovm();
  const Realization real = realize(pp);
  const KrausChannel ch = depolarizing_channel(0.5, 2);
  const ShotRecord a = simulate_counts(ch, real, 200000, 42);
  const ShotRecord b = simulate_counts(ch, real, 200000, 42);
  const ShotRecord c = simulate_counts(ch, real, 200000, 42, 3);
  const ShotRecord other = simulate_counts(ch, real, 200000, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.counts, c.counts);
  EXPECT_NE(a.counts, other.counts);
  EXPECT_EQ(a.generator, kShotGenerator);
  std::uint64_t total = 0;
  for (const auto& [label, n] : a.counts) total += n;
  EXPECT_EQ(total, 200000u);
}

TEST(Simulate, WithinFourSigmaOfExact) {
  const Ppovm pp = schemes::pauli_probe_ppovm();
  const KrausChannel ch = depolarizing_channel(0.5, 2);
  const std::uint64_t shots = 1000000;
  const ShotRecord rec = simulate_counts(ch, realize(pp), shots, 42);
  const std::vector<double> exact = outcome_probabilities(pp, ch);
  const std::vector<double> freq = frequencies(pp, rec);
  for (std::size_t a = 0; a < pp.size(); ++a) {
    const double sigma = std::sqrt(exact[a] * (1.0 - exact[a]) / static_cast<double>(shots));
    EXPECT_LE(std::abs(freq[a] - exact[a]), 4.0 * sigma) << pp[a].label;
  }
}

TEST(Simulate, ZeroErrorDiscrimination) {
  const Ppovm pp = schemes::identity_vs_contraction_ppovm();
  const ShotRecord rec = simulate_counts(identity_channel(2), realize(pp), 5000, 1);
  EXPECT_EQ(rec.counts.at("M_I"), 5000u);
  EXPECT_EQ(rec.counts.at("M_0"), 0u);
}

TEST(Simulate, Errors) {
  const Realization real = realize(schemes::pauli_probe_ppovm());
  EXPECT_ERROR_CODE(simulate_counts(identity_channel(2), real, 0, 1), ErrorCode::InvalidParameter);
  EXPECT_ERROR_CODE(simulate_counts(identity_channel(3), real, 10, 1), ErrorCode::DimensionMismatch);
}

TEST(Simulate, BlockSeedsDiffer) {
  EXPECT_NE(block_seed(1, 0), block_seed(1, 1));
  EXPECT_NE(block_seed(1, 0), block_seed(2, 0));
  EXPECT_EQ(block_seed(7, 3), block_seed(7, 3));
}

TEST(Frequencies, Validation) {
  const Ppovm pp = schemes::identity_vs_contraction_ppovm();
  ShotRecord rec;
  rec.shots = 10;
  rec.counts = {{"M_I", 7}, {"M_0", 3}};
  const std::vector<double> f = frequencies(pp, rec);
  EXPECT_DOUBLE_EQ(f[0], 0.7);
  EXPECT_DOUBLE_EQ(f[1], 0.3);
  rec.counts = {{"M_I", 7}, {"bogus", 3}};
  EXPECT_ERROR_CODE(frequencies(pp, rec), ErrorCode::InvalidParameter);
  rec.counts = {{"M_I", 7}};
  EXPECT_ERROR_CODE(frequencies(pp, rec), ErrorCode::InvalidParameter);
}
