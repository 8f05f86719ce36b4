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

#include "dqvqe/rfpe.hpp"

#include <cmath>

namespace dqvqe {

double rfpeOutcomeProbability(double phi, int M, double theta) {
  double c = std::cos(M * (phi - theta) / 2.0);
  return c * c;
}

RfpeOracle analyticOracle(double phi, std::mt19937_64& rng) {
  return [phi, &rng](int M, double theta) {
    double p0 = rfpeOutcomeProbability(phi, M, theta);
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p0 ? 0 : 1;
  };
}

Circuit rfpeRoundCircuit(const Circuit& cU, const Circuit& prep,
                         QubitId qpeQubit, int M, double theta,
                         int resultReg) {
  Circuit round;
  round.qubitCount = std::max(cU.qubitCount, prep.qubitCount);
  round.append(prep);
  round.appendLayer({makeSingle(GateName::H, qpeQubit)});
  round.appendLayer(
      {makeSingle(GateName::ZAngle, qpeQubit, {M * theta})});
  for (int k = 0; k < M; ++k) round.append(cU);
  round.appendLayer({makeSingle(GateName::H, qpeQubit)});
  round.appendLayer({makeMeasure(qpeQubit, resultReg)});
  return round;
}

RfpeOracle circuitOracle(const Circuit& cU, const Circuit& prep,
                         const ClusterSpec& cluster, QubitId qpeQubit,
                         std::mt19937_64& rng) {
  return [=, &rng](int M, double theta) {
    int reg = std::max(cU.maxRegister(), prep.maxRegister()) + 1;
    Circuit round = rfpeRoundCircuit(cU, prep, qpeQubit, M, theta, reg);
    SimState s(cluster, rng());
    s.run(round);
    return s.readRegister(reg) ? 1 : 0;
  };
}

RfpeResult rfpeEstimate(const RfpeOracle& oracle, const RfpeParams& params,
                        std::mt19937_64& rng) {
  if (params.alpha < 0.0 || params.alpha > 1.0)
    throw ValidationError("alpha must lie in [0, 1]");
  if (params.sigma <= 0.0) throw ValidationError("sigma must be positive");
  double mu = params.mu;
  double sigma = params.sigma;
  // Running bound on the attainable posterior precision: one outcome at
  // power M carries at most M^2 Fisher information, so after the shots so
  // far 1/sigma^2 cannot exceed `info`. Flooring the refit width there
  // keeps the finite-sample filter from collapsing faster than the data
  // allow (e.g. alpha = 0 cannot claim sub-shot-noise precision).
  double info = 1.0 / (sigma * sigma);
  RfpeResult result;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (sigma > params.sigmaTarget && result.iterations < params.maxIters) {
    int M = std::max(1, static_cast<int>(
                            std::ceil(std::pow(sigma, -params.alpha))));
    // Offset theta so the round's outcome stays near 50/50: at mu the
    // measured phase M*(mu - theta) sits close to pi/2, where one binary
    // outcome discriminates best. With M ~ 1/sigma this reduces to the
    // usual theta = mu - sigma choice.
    double theta = mu - std::max(sigma, std::numbers::pi / (2.0 * M));
    int e = oracle(M, theta);
    result.circuitInvocations += M;
    // The Gaussian refit of a finite sample realizes only part of the
    // M^2 single-shot Fisher bound; derate the budget accordingly.
    info += 0.25 * static_cast<double>(M) * M;
    std::normal_distribution<double> prior(mu, sigma);
    std::vector<double> accepted;
    int draws = params.sampleCount;
    for (int attempt = 0; attempt < 2; ++attempt) {
      accepted.clear();
      for (int i = 0; i < draws; ++i) {
        double phi = prior(rng);
        double p0 = rfpeOutcomeProbability(phi, M, theta);
        double pe = e == 0 ? p0 : 1.0 - p0;
        if (unit(rng) < pe) accepted.push_back(phi);
      }
      if (accepted.size() >= 5) break;
      draws *= 2;
    }
    if (accepted.size() < 5) {
      sigma *= 2.0;
    } else {
      double mean = 0.0;
      for (double phi : accepted) mean += phi;
      mean /= accepted.size();
      double var = 0.0;
      for (double phi : accepted) var += (phi - mean) * (phi - mean);
      var /= accepted.size();
      mu = mean;
      sigma = std::max({std::sqrt(var), 1.0 / std::sqrt(info), 1e-6});
    }
    ++result.iterations;
  }
  result.mu = mu;
  result.sigma = sigma;
  return result;
}

}  // namespace dqvqe
