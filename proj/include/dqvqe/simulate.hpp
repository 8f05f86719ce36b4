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

#include <array>
#include <complex>
#include <deque>
#include <map>
#include <random>
#include <vector>

#include "dqvqe/circuit.hpp"

namespace dqvqe {

using Amp = std::complex<double>;

/// 2x2 matrix of a single-qubit gate, row-major.
std::array<Amp, 4> gateMatrix(GateName name, const std::vector<double>& params);

/// Full statevector over a cluster's qubits plus classical registers.
/// Qubit (i, j) maps to global index offset(i)+j; global index 0 is the
/// most significant bit of the amplitude index.
class SimState {
 public:
  explicit SimState(const ClusterSpec& cluster, uint64_t seed = 0);
  SimState(int qubitCount, uint64_t seed = 0);

  int qubitCount() const { return totalQubits_; }
  int globalIndex(QubitId q) const;

  const std::vector<Amp>& amplitudes() const { return amp_; }
  std::vector<Amp>& amplitudes() { return amp_; }

  /// Probability that the qubit measures 1.
  double prob1(QubitId q) const;
  bool readRegister(int reg) const;
  void setRegister(int reg, bool value) { regs_[reg] = value; }
  bool hasRegister(int reg) const { return regs_.count(reg) != 0; }
  const std::map<int, bool>& registers() const { return regs_; }

  /// Queues outcomes consumed by subsequent measurements in place of the
  /// rng draw; used to enumerate measurement branches in tests.
  void forceOutcomes(std::vector<int> bits);

  void applyGate(const Gate& g);
  void applyLayer(const Layer& layer);
  void run(const Circuit& c);

  /// State of a subset of qubits, valid only when the subset is
  /// unentangled from the rest; throws otherwise.
  std::vector<Amp> extract(const std::vector<QubitId>& qubits,
                           double tol = 1e-9) const;

  std::mt19937_64& rng() { return rng_; }

 private:
  void applyUnitary(const Gate& g);
  void applyMeasure(const Gate& g);
  void applyEntGen(const Gate& g);
  int measureBit(QubitId q);

  std::vector<int> qpuOffsets_;
  int totalQubits_ = 0;
  std::vector<Amp> amp_;
  std::map<int, bool> regs_;
  std::mt19937_64 rng_;
  std::deque<int> forced_;
};

/// Runs a circuit on a fresh |0...0> state and returns the final state.
SimState runCircuit(const Circuit& c, const ClusterSpec& cluster,
                    uint64_t seed = 0);

/// Dense 2^n x 2^n matrix of a unitary-only monolithic circuit (qpu 0
/// addressing, n = c.qubitCount). Column j is c applied to basis state j.
std::vector<std::vector<Amp>> circuitMatrix(const Circuit& c);

/// Fidelity |<a|b>|^2 of two statevectors.
double fidelity(const std::vector<Amp>& a, const std::vector<Amp>& b);

}  // namespace dqvqe
