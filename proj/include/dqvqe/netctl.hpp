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
#include <string>
#include <vector>

#include "dqvqe/circuit.hpp"
#include "dqvqe/schedule.hpp"

namespace dqvqe {

struct NetConfig {
  std::string topology = "centralized";  // or "decentralized"
  double latency = 1.0;                  // per bus message
  double timeout = 1000.0;
  uint64_t seed = 0;
  int dropMessage = -1;    // drop the k-th bus message (fault injection)
  int vendorReject = -1;   // vendor index that refuses its contract
  int flipValidationBit = -1;  // Protocol 1 bit flipped on one side
  int entPairs = 32;       // Protocol 1 n
  int entChecks = 8;       // Protocol 1 t
};

NetConfig netConfigFromJson(const std::string& text);

struct TraceEvent {
  double time = 0.0;
  long seq = 0;
  std::string type;    // message or action name
  std::string from, to;
  std::string detail;
};

struct ExecutionTrace {
  std::vector<TraceEvent> events;
  std::map<int, bool> registers;  // classical results after execution
  bool completed = false;
  bool aborted = false;
};

std::string traceToJsonLines(const ExecutionTrace& trace);

/// One controller and time reference drive every QPU's gate and
/// communication nodes: instruction distribution, acks, a start signal,
/// deterministic discrete-event execution, result collection. Any missing
/// ack times out into an Abort broadcast.
ExecutionTrace runCentralized(const QpuSchedules& schedules,
                              const ClusterSpec& cluster,
                              const NetConfig& config);

/// Contract creation across per-vendor controllers: query, schedule
/// validation, handshake, pairwise entanglement validation, clock sync,
/// latest-start negotiation, then execution. Any vendor refusal aborts
/// before any gate executes.
ExecutionTrace runDecentralized(const QpuSchedules& schedules,
                                const ClusterSpec& cluster,
                                const NetConfig& config);

struct EntValidationResult {
  bool ack = false;
  std::vector<int> checkedByA, checkedByB;  // positions compared
  std::vector<TraceEvent> events;
};

/// Both parties hold perfectly correlated measurement bits for n pairs and
/// cross-check t randomly chosen positions each; flipBitAt (a position on
/// party B's side) injects a mismatch.
EntValidationResult entanglementValidation(int n, int t, uint64_t seed,
                                           int flipBitAt = -1);

struct ClockModel {
  std::vector<double> offset;  // initial per-node clock error (seconds)
  std::vector<double> drift;   // per-node drift rate (s/s)
  double beaconPeriod = 1.0;
  double beaconLatency = 0.0;      // actual one-way delay of a beacon
  double configuredLatency = 0.0;  // delay the receiver compensates for
};

/// Maximum absolute clock error any node shows against the reference over
/// the run; beacons reset each node's error to the latency residual.
double clockSync(const ClockModel& model, double duration);

}  // namespace dqvqe
