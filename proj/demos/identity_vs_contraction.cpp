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

// Perfect discrimination of the identity channel from the contraction onto
// |0>, followed by a qubit unitary pair that needs two copies.

#include <cstdio>
#include <numbers>

#include "ppovm/ppovm.hpp"

int main() {
  using namespace ppovm;

  const DiscriminationPlan plan = identity_vs_contraction_plan();
  const KrausChannel id = identity_channel(2);
  const KrausChannel a0 = contraction_channel(basis_ket(2, 0));
  const auto [err_id, err_a0] = verify_plan(id, a0, plan);
  std::printf("identity vs contraction onto |0>\n");
  std::printf("  P[M_0 | identity]    = %.3g\n", err_id);
  std::printf("  P[M_I | contraction] = %.3g\n", err_a0);
  std::printf("  process states have orthogonal supports: %s\n",
              support_orthogonal(choi_of_channel(id), choi_of_channel(a0)) ? "yes" : "no");

  const double pi = std::numbers::pi;
  ComplexMatrix v = identity(2);
  v(1, 1) = std::polar(1.0, 2.0 * pi / 3.0);
  const PhaseSet ph = relative_phases(identity(2), v);
  const CopiesResult cr = min_copies_of_phases(ph, 8);
  std::printf("identity vs diag(1, exp(2 pi i/3))\n");
  std::printf("  zero in hull: %s\n", zero_in_hull(ph) ? "yes" : "no");
  std::printf("  minimal parallel copies: %d\n", cr.copies ? *cr.copies : -1);
  return 0;
}
