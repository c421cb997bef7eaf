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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ppovm/ppovm.hpp"
#include "ppovm/random.hpp"

using namespace ppovm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1. Pauli probe effects are F_ab / 2 and sum to I (x) I / 2.
Outcome pauli_probe_effects() {
  const TestCouple couple = schemes::pauli_probe_couple();
  const Ppovm pp = schemes::pauli_probe_ppovm();
  double worst = 0.0;
  for (std::size_t k = 0; k < pp.size(); ++k) {
    worst = std::max(worst, max_abs_diff(pp[k].matrix, couple.povm()[k] / 2.0));
  }
  const double sum_dev = max_abs_diff(pp.sum(), oracle::eye(4) / 2.0);
  const bool ok = pp.size() == 36 && worst <= 1e-12 && sum_dev <= 1e-12;
  return {ok, std::to_string(pp.size()) + " effects, max |M - F/2| " + sci(worst) + ", max |sum - I/2| " +
                  sci(sum_dev) + " (tol 1e-12)"};
}

// 2. Six-state and Pauli-probe PPOVMs coincide as multisets.
Outcome scheme_coincidence() {
  const Ppovm a = schemes::six_state_ppovm();
  const Ppovm b = schemes::pauli_probe_ppovm();
  // Label-level check of the transposition: (|+-y><+-y|)^T = |-+y><-+y|.
  const auto states = schemes::pauli_eigenstates();
  const double t_plus = max_abs_diff(projector(states[2].ket).transpose(), projector(states[3].ket));
  const double t_minus = max_abs_diff(projector(states[3].ket).transpose(), projector(states[2].ket));
  const bool ok = equal_as_multiset(a, b, 1e-12) && t_plus <= 1e-15 && t_minus <= 1e-15;
  return {ok, "multiset equality at 1e-12: " + std::string(equal_as_multiset(a, b, 1e-12) ? "yes" : "no") +
                  ", y transposition residual " + sci(std::max(t_plus, t_minus))};
}

// 3. Tr{(Id (x) E)[rho] F} = Tr{omega_E M}.
Outcome fundamental_equivalence() {
  random::Rng rng(3001);
  double worst = 0.0;
  int count = 0;
  for (Eigen::Index anc : {1, 2, 4}) {
    for (Eigen::Index d : {2, 3}) {
      for (int t = 0; t < 40; ++t) {
        const Eigen::Index dim = anc * d;
        const DensityOperator rho(random::density(rng, dim, 1 + t % dim));
        const ComplexMatrix f = random::effect(rng, dim);
        const KrausChannel ch = random::channel(rng, d, 1 + t % (d * d));
        const double lhs = oracle::trace_of_product(oracle::apply_second(ch.kraus(), rho.matrix(), anc), f).real();
        const ComplexMatrix m = process_effect_of(rho, anc, d, f);
        const double rhs = trace_product_real(choi_of_channel(ch).matrix(), m);
        worst = std::max(worst, std::abs(lhs - rhs));
        ++count;
      }
    }
  }
  return {count >= 200 && worst <= 1e-9,
          std::to_string(count) + " instances, D in {1,2,4}, d in {2,3}, max deviation " + sci(worst) + " (tol 1e-9)"};
}

// 4. realize -> build_ppovm round trip.
Outcome realization_round_trip() {
  random::Rng rng(4001);
  double worst_effect = 0.0, worst_sum = 0.0;
  int count = 0, deficient = 0;
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index d = 2 + t % 2;
    const Eigen::Index anc = 1 + t % 3;
    const Eigen::Index rank = (t % 3 == 0) ? 1 : 0;
    const Ppovm pp = random::ppovm(rng, d, anc, 2 + t % 5, rank);
    const Realization real = realize(pp);
    if (real.r < d) ++deficient;
    ComplexMatrix total = ComplexMatrix::Zero(real.r * d, real.r * d);
    for (const auto& f : real.povm) total += f;
    worst_sum = std::max(worst_sum, max_abs_diff(total, identity(real.r * d)));
    const Ppovm back = build_ppovm({realization_couple(real)}, d);
    for (std::size_t k = 0; k < pp.size(); ++k) {
      worst_effect = std::max(worst_effect, max_abs_diff(back[k].matrix, pp[k].matrix));
    }
    ++count;
  }
  const bool ok = count >= 50 && deficient > 0 && worst_effect <= 1e-8 && worst_sum <= 1e-9;
  return {ok, std::to_string(count) + " PPOVMs (" + std::to_string(deficient) + " rank-deficient), max effect error " +
                  sci(worst_effect) + " (tol 1e-8), max |sum F - I| " + sci(worst_sum) + " (tol 1e-9)"};
}

// 5. Identity vs contraction onto |0>.
Outcome identity_vs_contraction() {
  const Ppovm pp = schemes::identity_vs_contraction_ppovm();
  const ComplexMatrix wi = choi_of_channel(identity_channel(2)).matrix();
  const ComplexMatrix w0 = choi_of_channel(contraction_channel(basis_ket(2, 0))).matrix();
  const double pi = trace_product_real(pp[0].matrix, wi);
  const double p0 = trace_product_real(pp[1].matrix, w0);
  const auto [x, y] = verify_plan(identity_channel(2), contraction_channel(basis_ket(2, 0)),
                                  identity_vs_contraction_plan());
  const double dev = std::max(std::abs(pi - 1.0), std::abs(p0 - 1.0));
  return {dev <= 1e-12 && x <= 1e-12 && y <= 1e-12,
          "max |Tr[M w] - 1| " + sci(dev) + " (tol 1e-12), misidentification rates " + sci(x) + ", " + sci(y)};
}

// 6. Tr[omega M_extra] = d - 1.
Outcome extra_effect_rate() {
  random::Rng rng(6001);
  double worst = 0.0;
  int count = 0;
  for (Eigen::Index d : {2, 3}) {
    for (int t = 0; t < 50; ++t) {
      const Ppovm pp = random::ppovm(rng, d, 1 + t % 3, 3);
      const ComplexMatrix w = choi_of_channel(random::channel(rng, d, 1 + t % (d * d))).matrix();
      worst = std::max(worst, std::abs(trace_product_real(w, extra_effect(pp)) - static_cast<double>(d - 1)));
      ++count;
    }
  }
  return {worst <= 1e-9, std::to_string(count) + " process states at d = 2, 3, max deviation " + sci(worst) + " (tol 1e-9)"};
}

// 7. |<omega_U|omega_V>| = |Tr U^dag V|.
Outcome overlap_identity() {
  random::Rng rng(7001);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index d = 2 + t % 3;
    const ComplexMatrix u = random::unitary(rng, d), v = random::unitary(rng, d);
    const ComplexVector wu = oracle::kron(oracle::eye(d), u) * psi_plus_vector(d);
    const ComplexVector wv = oracle::kron(oracle::eye(d), v) * psi_plus_vector(d);
    worst = std::max(worst, max_abs_diff(choi_of_channel(unitary_channel(u)).matrix(), wu * wu.adjoint()));
    worst = std::max(worst, std::abs(std::abs(wu.dot(wv)) - overlap(u, v)));
  }
  return {worst <= 1e-10, "100 pairs, d in {2,3,4}, max deviation " + sci(worst) + " (tol 1e-10)"};
}

// 8. Qubits: build_plan succeeds iff |Tr U^dag V| < 1e-9.
Outcome qubit_criterion() {
  random::Rng rng(8001);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  int agree = 0, orthogonal = 0, built = 0;
  const int total = 200;
  for (int t = 0; t < total; ++t) {
    const ComplexMatrix u = random::unitary(rng, 2);
    ComplexMatrix v;
    if (t % 4 == 0) {
      v = random::unitary(rng, 2);
    } else {
      // W = Q diag(e^{ia}, e^{i(a + gap)}) Q^dag, gap = pi or slightly off.
      const double a = angle(rng);
      const double gap = (t % 4 == 3) ? kPi - 1e-6 * (1 + t % 5) : kPi;
      ComplexMatrix w = ComplexMatrix::Zero(2, 2);
      w(0, 0) = std::polar(1.0, a);
      w(1, 1) = std::polar(1.0, a + gap);
      const ComplexMatrix q = random::unitary(rng, 2);
      v = u * q * w * q.adjoint();
    }
    const bool orth = overlap(u, v) < 1e-9;
    bool ok = false;
    try {
      const DiscriminationPlan plan = build_plan(u, v);
      ok = plan.perfect;
    } catch (const Error&) {
      ok = false;
    }
    orthogonal += orth;
    built += ok;
    agree += (orth == ok);
  }
  return {agree == total, std::to_string(total) + " qubit pairs (" + std::to_string(orthogonal) + " orthogonal, " +
                              std::to_string(built) + " plans built), agreement " + std::to_string(agree) + "/" +
                              std::to_string(total)};
}

// 9. Minimal parallel copies vs ceil(pi / gap).
Outcome minimal_copies() {
  std::string detail;
  bool ok = true;
  const std::vector<std::pair<const char*, double>> gaps{
      {"pi/2", kPi / 2}, {"pi/3", kPi / 3}, {"2pi/5", 2 * kPi / 5}, {"pi/7", kPi / 7}};
  for (const auto& [name, gap] : gaps) {
    ComplexMatrix v = identity(2);
    v(1, 1) = std::polar(1.0, gap);
    const CopiesResult r = min_copies(identity(2), v, 50);
    const int expected = oracle::qubit_min_copies(gap);
    const int got = r.copies ? *r.copies : -1;
    ok = ok && got == expected;
    if (!detail.empty()) detail += ", ";
    detail += std::string(name) + ": " + std::to_string(got) + "/" + std::to_string(expected);
  }
  return {ok, "iterative/closed form " + detail};
}

// 10. Tomography: exact recovery and shot-noise trend.
Outcome tomography_pipeline() {
  random::Rng rng(10001);
  const Ppovm pp = schemes::pauli_probe_ppovm();
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const ProcessState truth = choi_of_channel(random::channel(rng, 2, 1 + t % 4));
    const TomographyResult r = linear_inversion(pp, outcome_probabilities(pp, truth), truth);
    worst = std::max(worst, *r.hs_error);
  }
  const KrausChannel ch = random::channel(rng, 2, 2);
  const ProcessState truth = choi_of_channel(ch);
  const Realization real = realize(pp);
  std::vector<double> small, large;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    small.push_back(*linear_inversion(pp, frequencies(pp, simulate_counts(ch, real, 10000, seed)), truth).hs_error);
    large.push_back(*linear_inversion(pp, frequencies(pp, simulate_counts(ch, real, 1000000, seed)), truth).hs_error);
  }
  const double m_small = median(small), m_large = median(large);
  return {worst < 1e-7 && m_large < m_small,
          "20 channels, max exact HS error " + sci(worst) + " (tol 1e-7); median HS error 1e4 shots " + sci(m_small) +
              ", 1e6 shots " + sci(m_large)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Pauli-probe effects and normalization", pauli_probe_effects},
      {"six-state and Pauli-probe schemes coincide", scheme_coincidence},
      {"channel-measurement equivalence", fundamental_equivalence},
      {"realization round trip", realization_round_trip},
      {"identity vs contraction", identity_vs_contraction},
      {"extra-effect rate", extra_effect_rate},
      {"process-state overlap", overlap_identity},
      {"qubit discrimination criterion", qubit_criterion},
      {"minimal parallel copies", minimal_copies},
      {"tomography pipeline", tomography_pipeline},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
