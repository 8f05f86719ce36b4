// Copyright 2026 The dqvqe authors
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

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dqvqe/circuit.hpp"

namespace dqvqe {

/// Fixed-length word over {I, X, Y, Z}. Character k acts on qubit k, where
/// qubit 0 is the most significant bit of the statevector index.
struct PauliString {
  std::string ops;

  int size() const { return static_cast<int>(ops.size()); }
  bool isIdentity() const { return ops.find_first_not_of('I') == std::string::npos; }
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

/// H = sum_i a_i P_i over a fixed qubit count.
struct PauliHamiltonian {
  std::vector<PauliTerm> terms;

  int qubitCount() const {
    return terms.empty() ? 0 : terms.front().string.size();
  }
};

/// Line format: `<coeff> <string>`, e.g. `0.5 XIZY`. '#' starts a comment.
PauliHamiltonian parseHamiltonian(const std::string& text);
std::string serializeHamiltonian(const PauliHamiltonian& h);

/// Applies a Pauli string to a statevector of dimension 2^n.
std::vector<std::complex<double>> applyPauli(
    const PauliString& p, const std::vector<std::complex<double>>& state);

/// sum_i a_i <psi|P_i|psi>.
double expectation(const PauliHamiltonian& h,
                   const std::vector<std::complex<double>>& state);

double pauliExpectation(const PauliString& p,
                        const std::vector<std::complex<double>>& state);

/// Minimum eigenvalue of the dense 2^n x 2^n matrix. Limited to n <= 12.
double exactGroundEnergy(const PauliHamiltonian& h);

}  // namespace dqvqe
