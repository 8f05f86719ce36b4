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

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dqvqe;

TEST_CASE("rfpeOutcomeProbability values") {
  CHECK(rfpeOutcomeProbability(0.0, 1, 0.0) == doctest::Approx(1.0));
  CHECK(rfpeOutcomeProbability(std::numbers::pi, 1, 0.0) ==
        doctest::Approx(0.0));
  CHECK(rfpeOutcomeProbability(std::numbers::pi / 2, 1, 0.0) ==
        doctest::Approx(0.5));
  // Doubling M doubles the accumulated phase difference.
  CHECK(rfpeOutcomeProbability(std::numbers::pi / 2, 2, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // The offset theta shifts the phase before accumulation.
  CHECK(rfpeOutcomeProbability(0.7, 3, 0.7) == doctest::Approx(1.0));
}

TEST_CASE("round circuit statistics match the analytic probability") {
  // One data qubit with a diagonal unitary: cU applies ZAngle(-phi) so the
  // |1> eigenstate carries eigenphase phi.
  const double phi = 1.1;
  Circuit prep;
  prep.qubitCount = 1;
  prep.appendLayer({makeSingle(GateName::X, {0, 0})});
  Circuit cU;
  cU.qubitCount = 1;
  cU.appendLayer({makeControlled(GateName::ZAngle, {0, 1}, {0, 0}, {-phi})});

  ClusterSpec cluster{{2}};
  for (int M : {1, 2, 5}) {
    for (double theta : {0.0, 0.4}) {
      Circuit round = rfpeRoundCircuit(cU, prep, {0, 1}, M, theta, 0);
      int zeros = 0;
      const int shots = 4000;
      std::mt19937_64 rng(99 + M);
      for (int s = 0; s < shots; ++s) {
        SimState st(cluster, rng());
        st.run(round);
        if (!st.readRegister(0)) ++zeros;
      }
      double want = rfpeOutcomeProbability(phi, M, theta);
      CHECK(double(zeros) / shots == doctest::Approx(want).epsilon(0.06));
    }
  }
}

TEST_CASE("circuit oracle agrees with the analytic oracle in distribution") {
  const double phi = 0.8;
  Circuit prep;
  prep.qubitCount = 1;
  prep.appendLayer({makeSingle(GateName::X, {0, 0})});
  Circuit cU;
  cU.qubitCount = 1;
  cU.appendLayer({makeControlled(GateName::ZAngle, {0, 1}, {0, 0}, {-phi})});

  std::mt19937_64 rngA(1), rngB(2);
  RfpeOracle circ = circuitOracle(cU, prep, ClusterSpec{{2}}, {0, 1}, rngA);
  int zerosCirc = 0, zerosAna = 0;
  RfpeOracle ana = analyticOracle(phi, rngB);
  const int shots = 3000;
  for (int s = 0; s < shots; ++s) {
    if (circ(2, 0.3) == 0) ++zerosCirc;
    if (ana(2, 0.3) == 0) ++zerosAna;
  }
  CHECK(double(zerosCirc) / shots ==
        doctest::Approx(double(zerosAna) / shots).epsilon(0.08));
}

TEST_CASE("alpha = 0 keeps M at 1") {
  // With M fixed at 1 the error shrinks only statistically, so after a
  // few iterations sigma is far above the alpha = 1 track.
  std::mt19937_64 rng(3);
  RfpeParams slow;
  slow.alpha = 0.0;
  slow.sigmaTarget = 1e-4;
  slow.maxIters = 50;
  RfpeResult r = rfpeEstimate(analyticOracle(1.0, rng), slow, rng);
  CHECK(r.iterations == 50);
  // One c-U application per round when M = 1.
  CHECK(r.circuitInvocations == 50);
}

TEST_CASE("rfpeEstimate converges to the eigenphase") {
  // alpha = 0.5 gathers sqrt(1/sigma) information per shot, so a tight
  // width target needs a far larger round budget than alpha = 1.
  for (double phi : {0.4, 1.3, 2.6}) {
    for (double alpha : {0.5, 1.0}) {
      std::mt19937_64 rng(static_cast<uint64_t>(phi * 100 + alpha * 10));
      RfpeParams p;
      p.alpha = alpha;
      p.mu = std::numbers::pi / 2;
      p.sigma = std::numbers::pi / 2;
      p.sigmaTarget = alpha == 1.0 ? 1e-4 : 1e-3;
      p.maxIters = 20000;
      RfpeResult r = rfpeEstimate(analyticOracle(phi, rng), p, rng);
      CHECK(std::abs(r.mu - phi) < 5e-3);
      CHECK(r.sigma <= p.sigmaTarget);
    }
  }
}

TEST_CASE("higher alpha reaches the target with fewer invocations") {
  long invSlow = 0, invFast = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rngA(seed), rngB(seed + 100);
    RfpeParams p;
    p.mu = std::numbers::pi / 2;
    p.sigma = std::numbers::pi / 2;
    p.sigmaTarget = 1e-3;
    p.maxIters = 20000;
    p.alpha = 0.5;
    invSlow += rfpeEstimate(analyticOracle(1.7, rngA), p, rngA)
                   .circuitInvocations;
    p.alpha = 1.0;
    invFast += rfpeEstimate(analyticOracle(1.7, rngB), p, rngB)
                   .circuitInvocations;
  }
  CHECK(invFast < invSlow);
}
