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

// Ready-made qubit measurement schemes.

#ifndef PPOVM_SCHEMES_HPP
#define PPOVM_SCHEMES_HPP

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ppovm/process_povm.hpp"

namespace ppovm::schemes {

struct LabeledKet {
  std::string label;
  ComplexVector ket;
};

// Eigenvectors of sigma_x, sigma_y, sigma_z: +x, -x, +y, -y, +z, -z.
inline std::vector<LabeledKet> pauli_eigenstates() {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  auto ket = [](cplx a, cplx b) {
    ComplexVector v(2);
    v << a, b;
    return v;
  };
  return {
      {"+x", ket(s, s)},      {"-x", ket(s, -s)},     {"+y", ket(s, i * s)},
      {"-y", ket(s, -i * s)}, {"+z", ket(1.0, 0.0)}, {"-z", ket(0.0, 1.0)},
  };
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Normalized maximally entangled qubit pair probed with the nine Pauli
// product measurements, each chosen with probability 1/9:
// F_{a,b} = |a><a| (x) |b><b| / 9.
inline TestCouple pauli_probe_couple() {
  const auto states = pauli_eigenstates();
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  for (const auto& a : states) {
    for (const auto& b : states) {
      effects.push_back(kron(projector(a.ket), projector(b.ket)) / 9.0);
      labels.push_back(a.label + "," + b.label);
    }
  }
  const ComplexMatrix psi = psi_plus(2) / 2.0;
  return TestCouple(1.0, 2, 2, DensityOperator(psi), Povm(std::move(effects), std::move(labels)));
}

inline Ppovm pauli_probe_ppovm() { return build_ppovm({pauli_probe_couple()}, 2); }

// Six ancilla-free probes |nu> with probability 1/6 each, output measured
// with the Pauli tomography POVM F_mu = |mu><mu| / 3.
inline std::vector<TestCouple> six_state_couples() {
  const auto states = pauli_eigenstates();
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;
  for (const auto& mu : states) {
    effects.push_back(projector(mu.ket) / 3.0);
    labels.push_back(mu.label);
  }
  const Povm tomography(effects, labels);
  std::vector<TestCouple> out;
  for (const auto& nu : states) {
    out.push_back(ancilla_free_couple(1.0 / 6.0, DensityOperator::pure(nu.ket), tomography, nu.label));
  }
  return out;
}

inline Ppovm six_state_ppovm() { return build_ppovm(six_state_couples(), 2); }

// Probe |1> with POVM {I - |0><0|, |0><0|}; tells the identity channel from
// the contraction onto |0> without error.
inline TestCouple identity_vs_contraction_couple() {
  const ComplexMatrix p0 = projector(basis_ket(2, 0));
  return ancilla_free_couple(1.0, DensityOperator::pure(basis_ket(2, 1)),
                             Povm({identity(2) - p0, p0}, {"M_I", "M_0"}));
}

inline Ppovm identity_vs_contraction_ppovm() {
  return build_ppovm({identity_vs_contraction_couple()}, 2);
}

}  // namespace ppovm::schemes

#endif  // PPOVM_SCHEMES_HPP
