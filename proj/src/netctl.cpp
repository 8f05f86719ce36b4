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

#include "dqvqe/netctl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dqvqe/simulate.hpp"

namespace dqvqe {

NetConfig netConfigFromJson(const std::string& text) {
  NetConfig c;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.contains("topology")) c.topology = j["topology"].get<std::string>();
    if (j.contains("latency")) c.latency = j["latency"].get<double>();
    if (j.contains("timeout")) c.timeout = j["timeout"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("dropMessage")) c.dropMessage = j["dropMessage"].get<int>();
    if (j.contains("vendorReject"))
      c.vendorReject = j["vendorReject"].get<int>();
    if (j.contains("flipValidationBit"))
      c.flipValidationBit = j["flipValidationBit"].get<int>();
    if (j.contains("entPairs")) c.entPairs = j["entPairs"].get<int>();
    if (j.contains("entChecks")) c.entChecks = j["entChecks"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad scenario JSON: ") + e.what());
  }
  if (c.topology != "centralized" && c.topology != "decentralized")
    throw ParseError("topology must be centralized or decentralized");
  return c;
}

std::string traceToJsonLines(const ExecutionTrace& trace) {
  std::ostringstream out;
  for (const TraceEvent& e : trace.events) {
    nlohmann::json j{{"time", e.time}, {"seq", e.seq},     {"type", e.type},
                     {"from", e.from}, {"to", e.to},       {"detail", e.detail}};
    out << j.dump() << "\n";
  }
  nlohmann::json fin{{"type", "summary"},
                     {"completed", trace.completed},
                     {"aborted", trace.aborted}};
  nlohmann::json regs = nlohmann::json::object();
  for (auto& [r, v] : trace.registers) regs[std::to_string(r)] = v;
  fin["registers"] = regs;
  out << fin.dump() << "\n";
  return out.str();
}

namespace {

// Deterministic message bus: delivery ordered by (time, sequence number).
class Bus {
 public:
  Bus(std::vector<TraceEvent>& events, const NetConfig& cfg)
      : events_(events), cfg_(cfg) {}

  // Returns false when the message was dropped by fault injection.
  bool send(double sendTime, const std::string& from, const std::string& to,
            const std::string& type, const std::string& detail = "") {
    long seq = counter_++;
    if (seq == cfg_.dropMessage) {
      events_.push_back(
          {sendTime, seq, "dropped:" + type, from, to, detail});
      return false;
    }
    events_.push_back(
        {sendTime + cfg_.latency, seq, type, from, to, detail});
    return true;
  }

  void note(double time, const std::string& who, const std::string& type,
            const std::string& detail = "") {
    events_.push_back({time, counter_++, type, who, who, detail});
  }

 private:
  std::vector<TraceEvent>& events_;
  const NetConfig& cfg_;
  long counter_ = 0;
};

// All quantum commands across the per-QPU schedules, deduplicated (split
// halves share a sequence number) and ordered by (time, seq). Executing
// in this order reproduces the layer order the schedule was built from.
std::vector<TimedCommand> mergedCommands(const QpuSchedules& schedules) {
  std::map<long, TimedCommand> bySeq;
  for (auto& [qpu, cmds] : schedules)
    for (const TimedCommand& c : cmds) bySeq.emplace(c.seq, c);
  std::vector<TimedCommand> out;
  for (auto& [seq, c] : bySeq) out.push_back(c);
  std::stable_sort(out.begin(), out.end(),
                   [](const TimedCommand& a, const TimedCommand& b) {
                     return a.time != b.time ? a.time < b.time
                                             : a.seq < b.seq;
                   });
  return out;
}

Gate executableGate(const TimedCommand& c) {
  Gate g = c.gate;
  if (c.op == "SEND_ENT" || c.op == "REC_ENT") g.kind = GateKind::EntGen;
  if (c.op == "SEND_CLA" || c.op == "REC_CLA")
    g.kind = GateKind::ClassicalComm;
  return g;
}

void executeCommands(const QpuSchedules& schedules, const ClusterSpec& cluster,
                     const NetConfig& cfg, double startTime, Bus& bus,
                     ExecutionTrace& trace, const std::string& nodePrefix) {
  SimState sim(cluster, cfg.seed);
  for (const TimedCommand& c : mergedCommands(schedules)) {
    sim.applyGate(executableGate(c));
    std::string node = nodePrefix + std::to_string(c.qpus.front());
    bus.note(startTime + c.time, node, "exec:" + c.op,
             c.args().empty() ? "" : c.args().front());
  }
  trace.registers = sim.registers();
  trace.completed = true;
}

}  // namespace

ExecutionTrace runCentralized(const QpuSchedules& schedules,
                              const ClusterSpec& cluster,
                              const NetConfig& config) {
  ExecutionTrace trace;
  Bus bus(trace.events, config);
  double now = 0.0;
  bool lost = false;
  // Instruction distribution: just each QPU's own slice.
  for (auto& [qpu, cmds] : schedules) {
    std::string node = "qgn" + std::to_string(qpu);
    if (!bus.send(now, "controller", node, "InstructionSet",
                  std::to_string(cmds.size()) + " commands"))
      lost = true;
  }
  now += config.latency;
  for (auto& [qpu, cmds] : schedules) {
    std::string node = "qgn" + std::to_string(qpu);
    if (lost) continue;  // a node without instructions never acks
    if (!bus.send(now, node, "controller", "Ack")) lost = true;
  }
  now += config.latency;
  if (lost) {
    now = config.timeout;
    bus.note(now, "controller", "Timeout", "missing ack");
    for (auto& [qpu, cmds] : schedules)
      bus.send(now, "controller", "qgn" + std::to_string(qpu), "Abort");
    trace.aborted = true;
    return trace;
  }
  for (auto& [qpu, cmds] : schedules)
    bus.send(now, "controller", "qgn" + std::to_string(qpu), "StartTime",
             std::to_string(now + config.latency));
  now += config.latency;
  executeCommands(schedules, cluster, config, now, bus, trace, "qgn");
  double finish = now;
  for (auto& [qpu, cmds] : schedules)
    for (const TimedCommand& c : cmds)
      finish = std::max(finish, now + c.time + c.duration);
  for (auto& [qpu, cmds] : schedules)
    bus.send(finish, "qgn" + std::to_string(qpu), "controller",
             "MeasurementResults");
  return trace;
}

ExecutionTrace runDecentralized(const QpuSchedules& schedules,
                                const ClusterSpec& cluster,
                                const NetConfig& config) {
  ExecutionTrace trace;
  Bus bus(trace.events, config);
  double now = 0.0;
  std::vector<int> vendors;
  for (auto& [qpu, cmds] : schedules) vendors.push_back(qpu);

  auto abortAll = [&](const std::string& why) {
    bus.note(now, "user", "AbortDecision", why);
    for (int v : vendors)
      bus.send(now, "user", "vendor" + std::to_string(v), "Abort");
    trace.aborted = true;
  };

  // 1-2: capability query and offers.
  bool refused = false;
  for (int v : vendors) {
    std::string node = "vendor" + std::to_string(v);
    bool delivered = bus.send(now, "user", node, "Query");
    now += config.latency;
    int need = 0;
    for (const TimedCommand& c : schedules.at(v))
      for (QubitId q : c.qubits()) need = std::max(need, q.local + 1);
    bool ok = delivered && v != config.vendorReject &&
              need <= cluster.qpuSizes[v];
    if (!delivered) {
      refused = true;
      now = config.timeout;
      bus.note(now, "user", "Timeout", node + " unreachable");
      break;
    }
    bus.send(now, node, "user", ok ? "Offer" : "Nack",
             ok ? "" : "capacity or policy");
    now += config.latency;
    if (!ok) refused = true;
  }
  if (refused) {
    abortAll("contract refused");
    return trace;
  }
  // 3-4: schedule distribution and validation.
  for (int v : vendors) {
    std::string node = "vendor" + std::to_string(v);
    bus.send(now, "user", node, "InstructionSet");
    now += config.latency;
    bus.send(now, node, "user", "Ack", "schedule valid");
    now += config.latency;
  }
  // 5: handshake.
  for (int v : vendors) {
    std::string node = "vendor" + std::to_string(v);
    bus.send(now, "user", node, "Handshake");
    now += config.latency;
    bus.send(now, node, "user", "Ack");
    now += config.latency;
  }
  // 6: pairwise entanglement validation over every QPU pair that shares
  // a communication command.
  std::set<std::pair<int, int>> pairs;
  for (auto& [qpu, cmds] : schedules)
    for (const TimedCommand& c : cmds)
      if (c.qpus.size() == 2) pairs.insert({c.qpus[0], c.qpus[1]});
  for (auto& [a, b] : pairs) {
    EntValidationResult r = entanglementValidation(
        config.entPairs, config.entChecks, config.seed,
        config.flipValidationBit);
    for (TraceEvent e : r.events) {
      e.time += now;
      trace.events.push_back(e);
    }
    bus.send(now, "vendor" + std::to_string(a), "vendor" + std::to_string(b),
             r.ack ? "EntValidationAck" : "EntValidationNack");
    now += config.latency;
    if (!r.ack) {
      abortAll("entanglement validation failed");
      return trace;
    }
  }
  // 7: clock sync beacons.
  for (int v : vendors)
    bus.send(now, "trn" + std::to_string(v), "vendor" + std::to_string(v),
             "ClockBeacon", std::to_string(now));
  now += config.latency;
  // 8: latest-start negotiation; the earliest vendor deadline wins.
  double start = std::numeric_limits<double>::infinity();
  for (int v : vendors) {
    double latest = now + config.timeout / 2 + v;
    bus.send(now, "vendor" + std::to_string(v), "user", "LatestStart",
             std::to_string(latest));
    start = std::min(start, latest);
  }
  now += config.latency;
  for (int v : vendors)
    bus.send(now, "user", "vendor" + std::to_string(v), "StartTime",
             std::to_string(start));
  executeCommands(schedules, cluster, config, start, bus, trace, "vendor");
  for (int v : vendors)
    bus.send(start + config.timeout / 2, "vendor" + std::to_string(v), "user",
             "MeasurementResults");
  return trace;
}

EntValidationResult entanglementValidation(int n, int t, uint64_t seed,
                                           int flipBitAt) {
  if (t < 1 || t >= n)
    throw ValidationError("need 1 <= t < n for entanglement validation");
  EntValidationResult r;
  std::mt19937_64 rng(seed);
  // Measuring both halves of each pair in the shared fixed basis gives
  // perfectly correlated bits; noise enters only via the injected flip.
  std::vector<int> bitsA(n), bitsB(n);
  for (int i = 0; i < n; ++i) bitsA[i] = bitsB[i] = rng() & 1;
  if (flipBitAt >= 0 && flipBitAt < n) bitsB[flipBitAt] ^= 1;
  auto pick = [&](std::vector<int>& out) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    out.assign(all.begin(), all.begin() + t);
    std::sort(out.begin(), out.end());
  };
  pick(r.checkedByA);
  pick(r.checkedByB);
  long seq = 0;
  auto ev = [&](const std::string& from, const std::string& to,
                const std::string& type, const std::string& detail) {
    r.events.push_back({0.0, seq++, type, from, to, detail});
  };
  bool ok = true;
  ev("A", "B", "EntValues", std::to_string(t) + " bits");
  ev("A", "B", "EntPositions", "");
  for (int pos : r.checkedByA)
    if (bitsA[pos] != bitsB[pos]) ok = false;
  ev("B", "A", "EntValues", std::to_string(t) + " bits");
  ev("B", "A", "EntPositions", "");
  for (int pos : r.checkedByB)
    if (bitsA[pos] != bitsB[pos]) ok = false;
  ev(ok ? "B" : "B", "A", ok ? "Ack" : "Nack", "entanglement validation");
  r.ack = ok;
  return r;
}

double clockSync(const ClockModel& model, double duration) {
  if (model.beaconPeriod <= 0.0)
    throw ValidationError("beacon period must be positive");
  const size_t nodes = model.offset.size();
  if (model.drift.size() != nodes)
    throw ValidationError("offset and drift lists differ in length");
  std::vector<double> err = model.offset;
  double maxSkew = 0.0;
  auto track = [&] {
    for (double e : err) maxSkew = std::max(maxSkew, std::abs(e));
  };
  track();
  const double residual = model.beaconLatency - model.configuredLatency;
  double t = 0.0;
  // Beacons fire at k * period; drift accumulates between them.
  for (long k = 1; k * model.beaconPeriod <= duration; ++k) {
    double dt = k * model.beaconPeriod - t;
    for (size_t i = 0; i < nodes; ++i) err[i] += model.drift[i] * dt;
    track();
    for (size_t i = 0; i < nodes; ++i) err[i] = residual;
    track();
    t = k * model.beaconPeriod;
  }
  double dt = duration - t;
  for (size_t i = 0; i < nodes; ++i) err[i] += model.drift[i] * dt;
  track();
  return maxSkew;
}

}  // namespace dqvqe
