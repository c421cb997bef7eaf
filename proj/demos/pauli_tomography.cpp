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

// Tomography of a depolarizing qubit channel with the Pauli-probe and the
// six-state schemes, from exact probabilities and from sampled counts.

#include <cstdio>

#include "ppovm/ppovm.hpp"

namespace {

void run(const char* name, const ppovm::Ppovm& pp, const ppovm::KrausChannel& ch) {
  using namespace ppovm;
  const ProcessState truth = choi_of_channel(ch);
  const IcReport ic = ic_check(pp);
  std::printf("%s: %zu effects, informationally complete: %s\n", name, pp.size(), ic.complete ? "yes" : "no");

  const TomographyResult exact = linear_inversion(pp, outcome_probabilities(pp, ch), truth);
  std::printf("  exact probabilities   HS error %.2e\n", *exact.hs_error);

  const Realization real = realize(pp);
  for (std::uint64_t shots : {10000ULL, 1000000ULL}) {
    const ShotRecord rec = simulate_counts(ch, real, shots, 7);
    const TomographyResult est = linear_inversion(pp, frequencies(pp, rec), truth);
    std::printf("  %8llu shots        HS error %.2e\n", static_cast<unsigned long long>(shots), *est.hs_error);
  }
}

}  // namespace

int main() {
  using namespace ppovm;
  const KrausChannel ch = depolarizing_channel(0.3, 2);
  run("Pauli probe", schemes::pauli_probe_ppovm(), ch);
  run("six-state", schemes::six_state_ppovm(), ch);
  return 0;
}
