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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqvqe/circuit.hpp"
#include "dqvqe/hamiltonian.hpp"

namespace dqvqe {

/// Physical layout of one Ansatz copy: where each logical data qubit
/// lives, which local qubits each QPU reserves for Bell-pair halves, and
/// where the QPE ancilla sits. A monolithic circuit addressed as qpu 0,
/// qubits 0..n-1 (plus qubit n for the QPE ancilla when present) is
/// translated through this map.
struct QubitMap {
  std::vector<QubitId> data;
  std::map<int, std::vector<int>> comm;
  std::optional<QubitId> qpe;

  int dataCount() const { return static_cast<int>(data.size()); }
  /// Logical index k: data qubit for k < dataCount(), the QPE ancilla for
  /// k == dataCount().
  QubitId lookup(int k) const;
  /// Throws unless data/QPE/comm qubits are pairwise disjoint.
  void validate() const;
};

QubitMap mapFromJson(const std::string& text);
std::string mapToJson(const QubitMap& map);

/// Rewrites monolithic (qpu 0) addresses through the map; no gate changes.
Circuit applyMap(const Circuit& c, const QubitMap& map);

/// Replaces every controlled gate whose control and target sit on
/// different QPUs by the cat-entangler / local gate / cat-disentangler
/// expansion over the reserved communication qubits. Consecutive
/// single-control gates sharing control and remote QPU fold into one
/// session. Input must already use physical addresses.
Circuit remapNonlocal(const Circuit& c, const QubitMap& map);

/// applyMap then remapNonlocal.
Circuit distributedRemap(const Circuit& c, const QubitMap& map);

/// The maximal run of single-control gates in layers strictly after
/// `afterLayer` with the given control and a target on remoteQpu; the scan
/// halts at the first non-matching gate encountered.
std::vector<Gate> getSeriesCGates(const Circuit& c, int afterLayer,
                                  int remoteQpu, QubitId control);

/// I - 2|0...0><0...0| on n qubits, exactly (no global-phase slack):
/// X on all, an H-sandwiched (n-1)-controlled X built from controlled
/// halved Z powers, X on all.
Circuit buildReflection(int n);

/// U = R Pi Rdag P R Pi Rdag Pdag with Pdag = P, as an execution-order
/// layer list over n qubits.
Circuit buildU(const Circuit& r, const PauliString& p, int n);

/// liftControl(buildReflection(n), QPE) pushed through distributedRemap.
Circuit buildControlledPi(int n, const QubitMap& map);

/// A single-layer circuit applying the Pauli string's X/Y/Z factors.
Circuit pauliCircuit(const PauliString& p, int n);

}  // namespace dqvqe
