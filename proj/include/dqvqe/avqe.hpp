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

#include <string>
#include <vector>

#include "dqvqe/hamiltonian.hpp"
#include "dqvqe/placement.hpp"
#include "dqvqe/remap.hpp"
#include "dqvqe/rfpe.hpp"
#include "dqvqe/simulate.hpp"

namespace dqvqe {

struct AqpeConfig {
  double alpha = 0.5;
  double delta = 0.1;        // Stage-I exclusion band around 0 and 1
  int boundShots = 2000;     // Stage-I samples
  double epsilon = 0.02;     // sampling fallback accuracy; shots = 1/eps^2
  int sampleCount = 1000;    // rejection draws per RFPE iteration
  double sigmaTarget = 0.005;
  int maxIters = 2000;
  uint64_t seed = 0;
  bool parallel = false;
};

struct EstimationResult {
  int pauliIndex = -1;
  double absExpectation = 0.0;
  int sign = 1;
  std::string method;  // "aqpe" or "sampling"
  int iterations = 0;
  double finalSigma = 0.0;
  long circuitInvocations = 0;

  double estimate() const { return sign * absExpectation; }
};

struct StageOneResult {
  bool pass = false;
  int sign = 1;
  double sampleMean = 0.0;
};

/// Stage-I stand-in: estimates s = <psi|P|psi> from `shots` single-shot
/// measurements; passes when |s| is bounded away from both 0 and 1 by
/// delta plus a Hoeffding confidence margin.
StageOneResult signAndBound(const std::vector<Amp>& psi, const PauliString& p,
                            double delta, int shots, std::mt19937_64& rng);

/// Stage-II stand-in: exact projection of psi onto the e^{+i phi}
/// eigenvector of U within span{psi, P psi}. Returns the collapsed state
/// and writes the eigenphase (phi in (0, pi), cos(phi/2) = |<P>|).
std::vector<Amp> collapseToEigenstate(const std::vector<Amp>& psi,
                                      const PauliString& p, double& phiOut);

struct AqpeReport {
  double energy = 0.0;
  std::vector<EstimationResult> results;
  long totalCircuitInvocations = 0;
};

/// Estimates <H> on the state prepared by `prep`, one estimation per Pauli
/// term, walking the placement schedule round by round. Per-term rng
/// streams derive from (seed, pauliIndex) so parallel execution is
/// deterministic.
AqpeReport distributedAqpe(const PlacementSchedule& schedule,
                           const PauliHamiltonian& h, const Circuit& prep,
                           const AqpeConfig& cfg);

struct AvqeConfig {
  AqpeConfig aqpe;
  std::string solver = "greedy";  // "greedy" or "cp"
  int sweeps = 3;
  int goldenIters = 24;
};

struct AvqeResult {
  double energy = 0.0;
  std::vector<double> lambda;
  PlacementSchedule schedule;
  std::vector<EstimationResult> finalResults;
};

/// Outer variational loop: placement, distributed-circuit construction for
/// the scheduled allocations, then coordinate descent with golden-section
/// line search over the Ansatz parameters.
AvqeResult distributedAvqe(const ClusterSpec& cluster,
                           const PauliHamiltonian& h,
                           const ParamCircuit& rTemplate,
                           const AvqeConfig& cfg);

struct AllocationLayout {
  QubitMap map;
  ClusterSpec cluster;  // compact per-QPU sizes covering just this copy
};

/// Concrete local qubit indices for one allocation: data first per QPU,
/// then the QPE ancilla, then communication reservations.
AllocationLayout layoutForAllocation(const AnsatzAllocation& alloc);

}  // namespace dqvqe
