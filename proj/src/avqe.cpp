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

#include "dqvqe/avqe.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace dqvqe {

namespace {

constexpr double kPi = 3.14159265358979323846;

uint64_t mixSeed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StageOneResult signAndBound(const std::vector<Amp>& psi, const PauliString& p,
                            double delta, int shots, std::mt19937_64& rng) {
  double a = pauliExpectation(p, psi);
  double p1 = std::clamp((1.0 + a) / 2.0, 0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long plus = 0;
  for (int i = 0; i < shots; ++i)
    if (unit(rng) < p1) ++plus;
  double s = 2.0 * plus / shots - 1.0;
  // Two-sided Hoeffding margin at 95% confidence on the +/-1 outcomes.
  double margin = 2.0 * std::sqrt(std::log(2.0 / 0.05) / (2.0 * shots));
  StageOneResult r;
  r.sampleMean = s;
  r.sign = s >= 0 ? 1 : -1;
  r.pass = std::abs(s) - margin > delta && std::abs(s) + margin < 1.0 - delta;
  return r;
}

std::vector<Amp> collapseToEigenstate(const std::vector<Amp>& psi,
                                      const PauliString& p, double& phiOut) {
  auto pPsi = applyPauli(p, psi);
  double a = pauliExpectation(p, psi);
  double mag = std::clamp(std::abs(a), 0.0, 1.0);
  phiOut = 2.0 * std::acos(mag);
  double rem = 1.0 - a * a;
  if (rem < 1e-12) return psi;  // already an eigenstate of P
  double norm = std::sqrt(rem);
  const size_t dim = psi.size();
  std::vector<Amp> perp(dim);
  for (size_t i = 0; i < dim; ++i) perp[i] = (pPsi[i] - a * psi[i]) / norm;
  // Both rotation eigenvectors; the +phi branch has eigenvalue e^{+i phi}.
  // The rotation direction depends on sign(a), so pick analytically:
  // U = (I-2|psi><psi|)(I-2|Ppsi><Ppsi|) acts on (psi -/+ i perp).
  std::vector<Amp> cand(dim);
  const Amp i1(0, 1);
  for (int branch = 0; branch < 2; ++branch) {
    Amp w = branch == 0 ? -i1 : i1;
    for (size_t i = 0; i < dim; ++i)
      cand[i] = (psi[i] + w * perp[i]) / std::sqrt(2.0);
    // Check the eigenvalue by applying the two reflections directly.
    Amp ovP = 0.0, ovPsi = 0.0;
    for (size_t i = 0; i < dim; ++i) ovP += std::conj(pPsi[i]) * cand[i];
    std::vector<Amp> u(dim);
    for (size_t i = 0; i < dim; ++i) u[i] = cand[i] - 2.0 * ovP * pPsi[i];
    for (size_t i = 0; i < dim; ++i) ovPsi += std::conj(psi[i]) * u[i];
    Amp lambda = 0.0;
    std::vector<Amp> u2(dim);
    for (size_t i = 0; i < dim; ++i) u2[i] = u[i] - 2.0 * ovPsi * psi[i];
    for (size_t i = 0; i < dim; ++i) lambda += std::conj(cand[i]) * u2[i];
    if (lambda.imag() > -1e-12) return cand;
  }
  return cand;
}

namespace {

EstimationResult estimateOne(int pauliIndex, const PauliTerm& term,
                             const std::vector<Amp>& psi,
                             const AqpeConfig& cfg) {
  std::mt19937_64 rng(mixSeed(cfg.seed, pauliIndex));
  EstimationResult r;
  r.pauliIndex = pauliIndex;
  StageOneResult s1 =
      signAndBound(psi, term.string, cfg.delta, cfg.boundShots, rng);
  if (s1.pass) {
    double phi = 0.0;
    collapseToEigenstate(psi, term.string, phi);
    RfpeParams params;
    params.alpha = cfg.alpha;
    params.mu = kPi / 2.0;
    params.sigma = kPi / 2.0;
    params.sampleCount = cfg.sampleCount;
    params.maxIters = cfg.maxIters;
    params.sigmaTarget = cfg.sigmaTarget;
    RfpeOracle oracle = analyticOracle(phi, rng);
    RfpeResult res = rfpeEstimate(oracle, params, rng);
    r.method = "aqpe";
    r.absExpectation = std::clamp(std::abs(std::cos(res.mu / 2.0)), 0.0, 1.0);
    r.sign = s1.sign;
    r.iterations = res.iterations;
    r.finalSigma = res.sigma;
    r.circuitInvocations = res.circuitInvocations;
  } else {
    int shots = static_cast<int>(std::ceil(1.0 / (cfg.epsilon * cfg.epsilon)));
    double a = pauliExpectation(term.string, psi);
    double p1 = std::clamp((1.0 + a) / 2.0, 0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long plus = 0;
    for (int i = 0; i < shots; ++i)
      if (unit(rng) < p1) ++plus;
    double s = 2.0 * static_cast<double>(plus) / shots - 1.0;
    r.method = "sampling";
    r.absExpectation = std::abs(s);
    r.sign = s >= 0 ? 1 : -1;
    r.circuitInvocations = shots;
  }
  return r;
}

}  // namespace

AqpeReport distributedAqpe(const PlacementSchedule& schedule,
                           const PauliHamiltonian& h, const Circuit& prep,
                           const AqpeConfig& cfg) {
  int placed = 0;
  for (const auto& round : schedule.rounds) placed += round.size();
  if (placed != static_cast<int>(h.terms.size()))
    throw ValidationError("schedule and Hamiltonian term counts differ");
  SimState base(h.qubitCount());
  base.run(prep);
  const std::vector<Amp>& psi = base.amplitudes();

  AqpeReport report;
  report.results.resize(h.terms.size());
  for (const auto& round : schedule.rounds) {
    if (cfg.parallel) {
      std::vector<std::future<EstimationResult>> futs;
      for (const AnsatzAllocation& alloc : round) {
        int idx = alloc.pauliIndex;
        futs.push_back(std::async(std::launch::async, [&, idx] {
          return estimateOne(idx, h.terms[idx], psi, cfg);
        }));
      }
      for (auto& f : futs) {
        EstimationResult r = f.get();
        report.results[r.pauliIndex] = std::move(r);
      }
    } else {
      for (const AnsatzAllocation& alloc : round)
        report.results[alloc.pauliIndex] =
            estimateOne(alloc.pauliIndex, h.terms[alloc.pauliIndex], psi, cfg);
    }
  }
  for (size_t i = 0; i < h.terms.size(); ++i) {
    report.energy += h.terms[i].coeff * report.results[i].estimate();
    report.totalCircuitInvocations += report.results[i].circuitInvocations;
  }
  return report;
}

AllocationLayout layoutForAllocation(const AnsatzAllocation& alloc) {
  AllocationLayout out;
  const int m = static_cast<int>(alloc.perQpu.size());
  std::vector<int> used(m, 0);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < alloc.perQpu[j]; ++k)
      out.map.data.push_back({j, used[j]++});
  out.map.qpe = QubitId{alloc.qpeQpu, used[alloc.qpeQpu]++};
  for (auto& [a, b] : alloc.commPairs) {
    for (int side : {a, b}) {
      if (out.map.comm.count(side)) continue;
      out.map.comm[side].push_back(used[side]++);
      out.map.comm[side].push_back(used[side]++);
    }
  }
  out.cluster.qpuSizes = used;
  out.map.validate();
  return out;
}

AvqeResult distributedAvqe(const ClusterSpec& cluster,
                           const PauliHamiltonian& h,
                           const ParamCircuit& rTemplate,
                           const AvqeConfig& cfg) {
  const int n = rTemplate.qubitCount();
  if (h.qubitCount() != n)
    throw ValidationError("Hamiltonian and Ansatz qubit counts differ");
  const int p = static_cast<int>(h.terms.size());
  AvqeResult result;
  result.schedule = cfg.solver == "cp" ? cpSchedule(cluster, n, p)
                                       : greedyDistribute(cluster, n, p);

  // Build the distributed constituents once per allocation shape to verify
  // comm-qubit feasibility before entering the optimization loop.
  Circuit probe = rTemplate.bind(std::vector<double>(
      static_cast<size_t>(rTemplate.paramCount()), 0.0));
  for (const AnsatzAllocation& alloc : result.schedule.rounds.front()) {
    AllocationLayout layout = layoutForAllocation(alloc);
    distributedRemap(probe, layout.map);
    distributedRemap(dagger(probe), layout.map);
    distributedRemap(buildReflection(n), layout.map);
    buildControlledPi(n, layout.map);
    for (const PauliTerm& t : h.terms)
      distributedRemap(pauliCircuit(t.string, n), layout.map);
  }

  std::vector<double> lambda(rTemplate.paramCount(), 0.0);
  auto energyAt = [&](const std::vector<double>& lam) {
    Circuit prep = rTemplate.bind(lam);
    return distributedAqpe(result.schedule, h, prep, cfg.aqpe).energy;
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int k = 0; k < rTemplate.paramCount(); ++k) {
      double lo = -kPi, hi = kPi;
      double x1 = hi - gr * (hi - lo);
      double x2 = lo + gr * (hi - lo);
      std::vector<double> trial = lambda;
      trial[k] = x1;
      double f1 = energyAt(trial);
      trial[k] = x2;
      double f2 = energyAt(trial);
      for (int it = 0; it < cfg.goldenIters; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          trial[k] = x1;
          f1 = energyAt(trial);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          trial[k] = x2;
          f2 = energyAt(trial);
        }
      }
      lambda[k] = f1 < f2 ? x1 : x2;
    }
  }
  Circuit prep = rTemplate.bind(lambda);
  AqpeReport final = distributedAqpe(result.schedule, h, prep, cfg.aqpe);
  result.energy = final.energy;
  result.lambda = lambda;
  result.finalResults = std::move(final.results);
  return result;
}

}  // namespace dqvqe
