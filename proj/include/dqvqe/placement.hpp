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

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dqvqe/circuit.hpp"

namespace dqvqe {

/// One Ansatz copy placed on the cluster: data qubits per QPU, the QPU
/// holding the extra QPE ancilla, and the QPU pairs that each reserve two
/// communication qubits per side.
struct AnsatzAllocation {
  int pauliIndex = -1;
  std::vector<int> perQpu;
  int qpeQpu = -1;
  std::set<std::pair<int, int>> commPairs;

  int qpuSpan() const;
  /// Qubits this allocation occupies on QPU j: data, plus one QPE qubit,
  /// plus two communication qubits when j takes part in any split link.
  int occupied(int j) const;
  /// Communication-cost metric minimized by the exact solver: four
  /// entangler qubits per chain link.
  int commQubitCount() const { return 4 * static_cast<int>(commPairs.size()); }
};

/// Round-indexed placement of every Pauli term's Ansatz copy.
struct PlacementSchedule {
  std::vector<std::vector<AnsatzAllocation>> rounds;

  int roundCount() const { return static_cast<int>(rounds.size()); }
};

/// Checks an allocation list against per-QPU capacities, the QPE
/// co-location rule, the split-chain structure, and per-Ansatz qubit
/// totals. Returns human-readable violations; empty means valid.
std::vector<std::string> validateAllocations(
    const ClusterSpec& cluster, int ansatzSize,
    const std::vector<AnsatzAllocation>& allocs);
std::vector<std::string> validatePlacement(const ClusterSpec& cluster,
                                           int ansatzSize, int paulis,
                                           const PlacementSchedule& s);

/// True iff an Ansatz of size n cannot be placed on the given capacities
/// (non-increasing order): one QPU contributes q-1, a j-way split
/// contributes (q1-3) + sum over the rest of (qj-2).
bool doesNotFit(const std::vector<int>& sortedCapacities, int n);

PlacementSchedule greedyDistribute(const ClusterSpec& cluster, int n, int p);

/// Exact backtracking solve for m simultaneous allocations, minimizing the
/// number of communication qubits. Returns nullopt when infeasible.
std::optional<std::vector<AnsatzAllocation>> cpDistribute(
    const ClusterSpec& cluster, int n, int m);

PlacementSchedule cpSchedule(const ClusterSpec& cluster, int n, int p);

/// sum(q_i) - 2n - 1 for n >= 2 QPUs; q - 1 for a single QPU.
int maxAnsatzSize(const ClusterSpec& cluster);

std::string placementToJson(const PlacementSchedule& s);
PlacementSchedule placementFromJson(const std::string& text);

}  // namespace dqvqe
