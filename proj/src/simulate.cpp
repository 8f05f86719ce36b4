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

#include "dqvqe/simulate.hpp"

#include <cmath>

namespace dqvqe {

std::array<Amp, 4> gateMatrix(GateName name,
                              const std::vector<double>& params) {
  const Amp i(0, 1);
  const double s = 1.0 / std::sqrt(2.0);
  switch (name) {
    case GateName::X:
      return {0, 1, 1, 0};
    case GateName::Y:
      return {0, -i, i, 0};
    case GateName::Z:
      return {1, 0, 0, -1};
    case GateName::H:
      return {s, s, s, -s};
    case GateName::Rx: {
      double a = params.at(0) / 2;
      return {std::cos(a), -i * std::sin(a), -i * std::sin(a), std::cos(a)};
    }
    case GateName::Ry: {
      double a = params.at(0) / 2;
      return {std::cos(a), -std::sin(a), std::sin(a), std::cos(a)};
    }
    case GateName::Rz: {
      double a = params.at(0) / 2;
      return {std::exp(-i * a), 0, 0, std::exp(i * a)};
    }
    case GateName::ZAngle: {
      double a = params.at(0);
      return {1, 0, 0, std::exp(-i * a)};
    }
    case GateName::R: {
      // Rz(l3) * Ry(l2) * Rz(l1)
      auto a = gateMatrix(GateName::Rz, {params.at(2)});
      auto b = gateMatrix(GateName::Ry, {params.at(1)});
      auto c = gateMatrix(GateName::Rz, {params.at(0)});
      std::array<Amp, 4> ab = {a[0] * b[0] + a[1] * b[2],
                               a[0] * b[1] + a[1] * b[3],
                               a[2] * b[0] + a[3] * b[2],
                               a[2] * b[1] + a[3] * b[3]};
      return {ab[0] * c[0] + ab[1] * c[2], ab[0] * c[1] + ab[1] * c[3],
              ab[2] * c[0] + ab[3] * c[2], ab[2] * c[1] + ab[3] * c[3]};
    }
  }
  throw ValidationError("unknown gate name");
}

SimState::SimState(const ClusterSpec& cluster, uint64_t seed) : rng_(seed) {
  qpuOffsets_.resize(cluster.qpuCount());
  int off = 0;
  for (int i = 0; i < cluster.qpuCount(); ++i) {
    qpuOffsets_[i] = off;
    off += cluster.qpuSizes[i];
  }
  totalQubits_ = off;
  if (totalQubits_ > 26) throw ValidationError("statevector too large");
  amp_.assign(size_t{1} << totalQubits_, 0.0);
  amp_[0] = 1.0;
}

SimState::SimState(int qubitCount, uint64_t seed)
    : SimState(ClusterSpec{{qubitCount}}, seed) {}

int SimState::globalIndex(QubitId q) const {
  if (q.qpu < 0 || q.qpu >= static_cast<int>(qpuOffsets_.size()))
    throw ValidationError("qubit QPU out of range");
  int g = qpuOffsets_[q.qpu] + q.local;
  int limit = q.qpu + 1 < static_cast<int>(qpuOffsets_.size())
                  ? qpuOffsets_[q.qpu + 1]
                  : totalQubits_;
  if (q.local < 0 || g >= limit)
    throw ValidationError("qubit local index out of range");
  return g;
}

double SimState::prob1(QubitId q) const {
  const size_t bit = size_t{1} << (totalQubits_ - 1 - globalIndex(q));
  double p = 0.0;
  for (size_t i = 0; i < amp_.size(); ++i)
    if (i & bit) p += std::norm(amp_[i]);
  return p;
}

bool SimState::readRegister(int reg) const {
  auto it = regs_.find(reg);
  if (it == regs_.end())
    throw ValidationError("read of unwritten classical register");
  return it->second;
}

void SimState::forceOutcomes(std::vector<int> bits) {
  for (int b : bits) forced_.push_back(b);
}

void SimState::applyUnitary(const Gate& g) {
  auto m = gateMatrix(g.name, g.params);
  const size_t tbit = size_t{1} << (totalQubits_ - 1 - globalIndex(g.target));
  size_t ctlMask = 0;
  for (QubitId c : g.controls)
    ctlMask |= size_t{1} << (totalQubits_ - 1 - globalIndex(c));
  for (size_t i = 0; i < amp_.size(); ++i) {
    if (i & tbit) continue;
    if ((i & ctlMask) != ctlMask) continue;
    Amp a0 = amp_[i], a1 = amp_[i | tbit];
    amp_[i] = m[0] * a0 + m[1] * a1;
    amp_[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

int SimState::measureBit(QubitId q) {
  double p1 = prob1(q);
  int outcome;
  if (!forced_.empty()) {
    outcome = forced_.front();
    forced_.pop_front();
    double p = outcome ? p1 : 1.0 - p1;
    if (p < 1e-12)
      throw ValidationError("forced measurement outcome has zero probability");
  } else {
    outcome = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p1;
  }
  const size_t bit = size_t{1} << (totalQubits_ - 1 - globalIndex(q));
  double keep = outcome ? p1 : 1.0 - p1;
  double scale = 1.0 / std::sqrt(keep);
  for (size_t i = 0; i < amp_.size(); ++i) {
    bool b = (i & bit) != 0;
    amp_[i] = (b == static_cast<bool>(outcome)) ? amp_[i] * scale : 0.0;
  }
  return outcome;
}

void SimState::applyMeasure(const Gate& g) {
  regs_[g.reg] = measureBit(g.target);
}

void SimState::applyEntGen(const Gate& g) {
  if (prob1(g.entA) > 1e-9 || prob1(g.entB) > 1e-9)
    throw ValidationError("entanglement generation on non-zero qubits");
  Gate h = makeSingle(GateName::H, g.entA);
  applyUnitary(h);
  Gate cx = makeControlled(GateName::X, g.entA, g.entB);
  applyUnitary(cx);
}

void SimState::applyGate(const Gate& g) {
  switch (g.kind) {
    case GateKind::Unitary:
      applyUnitary(g);
      break;
    case GateKind::Measure:
      applyMeasure(g);
      break;
    case GateKind::ClassicallyControlled:
      if (readRegister(g.reg)) {
        Gate u = g;
        u.kind = GateKind::Unitary;
        u.controls.clear();
        applyUnitary(u);
      }
      break;
    case GateKind::EntGen:
      applyEntGen(g);
      break;
    case GateKind::ClassicalComm:
      // Registers are global in simulation; timing lives in the scheduler.
      readRegister(g.reg);
      break;
  }
}

void SimState::applyLayer(const Layer& layer) {
  for (const Gate& g : layer) applyGate(g);
}

void SimState::run(const Circuit& c) {
  for (const Layer& layer : c.layers) applyLayer(layer);
}

std::vector<Amp> SimState::extract(const std::vector<QubitId>& qubits,
                                   double tol) const {
  std::vector<int> keepBits;
  for (QubitId q : qubits)
    keepBits.push_back(totalQubits_ - 1 - globalIndex(q));
  const int k = static_cast<int>(keepBits.size());
  // Find the most likely assignment of the discarded qubits.
  size_t keepMask = 0;
  for (int b : keepBits) keepMask |= size_t{1} << b;
  size_t bestRest = 0;
  double bestProb = -1.0;
  std::map<size_t, double> restProb;
  for (size_t i = 0; i < amp_.size(); ++i) {
    size_t rest = i & ~keepMask;
    double& p = restProb[rest];
    p += std::norm(amp_[i]);
    if (p > bestProb) {
      bestProb = p;
      bestRest = rest;
    }
  }
  if (bestProb < 1.0 - tol)
    throw ValidationError("subset is entangled with discarded qubits");
  std::vector<Amp> out(size_t{1} << k, 0.0);
  for (size_t s = 0; s < out.size(); ++s) {
    size_t idx = bestRest;
    for (int j = 0; j < k; ++j)
      if ((s >> (k - 1 - j)) & 1) idx |= size_t{1} << keepBits[j];
    out[s] = amp_[idx];
  }
  double norm = 0.0;
  for (Amp a : out) norm += std::norm(a);
  norm = std::sqrt(norm);
  for (Amp& a : out) a /= norm;
  return out;
}

SimState runCircuit(const Circuit& c, const ClusterSpec& cluster,
                    uint64_t seed) {
  SimState s(cluster, seed);
  s.run(c);
  return s;
}

std::vector<std::vector<Amp>> circuitMatrix(const Circuit& c) {
  const int n = c.qubitCount;
  const size_t dim = size_t{1} << n;
  std::vector<std::vector<Amp>> m(dim, std::vector<Amp>(dim, 0.0));
  for (size_t col = 0; col < dim; ++col) {
    SimState s(n);
    // Prepare basis state |col> with X gates.
    Layer prep;
    for (int q = 0; q < n; ++q)
      if ((col >> (n - 1 - q)) & 1)
        prep.push_back(makeSingle(GateName::X, QubitId{0, q}));
    s.applyLayer(prep);
    s.run(c);
    for (size_t row = 0; row < dim; ++row) m[row][col] = s.amplitudes()[row];
  }
  return m;
}

double fidelity(const std::vector<Amp>& a, const std::vector<Amp>& b) {
  if (a.size() != b.size()) throw ValidationError("dimension mismatch");
  Amp ov = 0.0;
  for (size_t i = 0; i < a.size(); ++i) ov += std::conj(a[i]) * b[i];
  return std::norm(ov);
}

}  // namespace dqvqe
