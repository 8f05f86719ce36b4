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

#include <functional>
#include <random>

#include "dqvqe/circuit.hpp"
#include "dqvqe/simulate.hpp"

namespace dqvqe {

struct RfpeParams {
  double alpha = 1.0;       // in [0, 1]
  double mu = 0.0;          // prior mean of the eigenphase
  double sigma = 1.0;       // prior standard deviation
  int sampleCount = 2000;   // rejection-sampling draws per iteration
  int maxIters = 10000;
  double sigmaTarget = 1e-3;
};

struct RfpeResult {
  double mu = 0.0;
  double sigma = 0.0;
  int iterations = 0;
  long circuitInvocations = 0;  // total applications of c-U
};

/// P(E = 0) for one phase-estimation round: cos^2(M (phi - theta) / 2).
double rfpeOutcomeProbability(double phi, int M, double theta);

/// One phase-estimation round: returns the measured bit E given the
/// repetition power M and the rotation offset theta.
using RfpeOracle = std::function<int(int M, double theta)>;

/// Oracle that samples E analytically for a known eigenphase phi.
RfpeOracle analyticOracle(double phi, std::mt19937_64& rng);

/// Oracle that runs the phase-estimation circuit by statevector
/// simulation: prep on the data register, then H / ZAngle(M theta) on the
/// QPE qubit, M copies of cU, H, measure.
RfpeOracle circuitOracle(const Circuit& cU, const Circuit& prep,
                         const ClusterSpec& cluster, QubitId qpeQubit,
                         std::mt19937_64& rng);

/// Builds the full phase-estimation circuit for one round (used by the
/// circuit oracle and by schedule emission).
Circuit rfpeRoundCircuit(const Circuit& cU, const Circuit& prep,
                         QubitId qpeQubit, int M, double theta, int resultReg);

/// Rejection-filtering phase estimation. Each iteration uses
/// M = ceil(1 / sigma^alpha) and theta = mu - sigma, then refits the
/// normal prior to the accepted rejection samples.
RfpeResult rfpeEstimate(const RfpeOracle& oracle, const RfpeParams& params,
                        std::mt19937_64& rng);

}  // namespace dqvqe
