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

namespace dqvqe {

/// Per-gate-class durations. Classes: cnot, single, measurement,
/// entanglement, classical, merging.
struct GateTimeTable {
  enum class Unit { Weight, Ns };
  Unit unit = Unit::Weight;
  std::map<std::string, double> classes;
  std::map<std::string, double> perQpu;  // key "<class>@<qpu>"

  static GateTimeTable defaults();
  double duration(const std::string& cls, int qpu = -1) const;
  /// Duration and class of one circuit element.
  double gateDuration(const Gate& g, int qpu = -1) const;
  static std::string gateClass(const Gate& g);
};

/// File format: first line `unit: weight` or `unit: ns`, then
/// `class=duration` lines, with optional `class@qpu=duration` overrides.
GateTimeTable parseTimeTable(const std::string& text);

struct TimedCommand {
  std::string op;  // TWO_QUBIT SINGLE GEN_ENT SEND_ENT REC_ENT CLASSICAL
                   // SEND_CLA REC_CLA
  Gate gate;       // the underlying circuit element
  std::vector<int> qpus;
  double time = 0.0;
  double duration = 0.0;
  long seq = 0;  // global emission order; split halves share one seq

  std::vector<std::string> args() const;
  /// Qubits the command occupies, as "qpu:local" strings.
  std::vector<QubitId> qubits() const;
};

struct GlobalSchedule {
  std::vector<TimedCommand> commands;
  double makespan = 0.0;
};

using QpuSchedules = std::map<int, std::vector<TimedCommand>>;

/// Layer rule: every gate of layer i starts when layer i-1's slowest gate
/// finishes.
GlobalSchedule buildGlobalSchedule(const Circuit& c, const GateTimeTable& t);

/// GEN_ENT and CLASSICAL split into SEND/REC halves at identical times;
/// every other command is copied to each QPU it touches.
QpuSchedules splitPerQpu(const GlobalSchedule& global);

/// Checks paired send/receive timestamps, per-qubit interval overlap, and
/// two-qubit-gate qubit availability. Empty result means valid.
std::vector<std::string> validateSchedule(const QpuSchedules& perQpu,
                                          const GateTimeTable& t);

std::string scheduleToCsv(const QpuSchedules& perQpu);
std::string scheduleToJson(const QpuSchedules& perQpu);
QpuSchedules scheduleFromJson(const std::string& text);

/// Weighted-time totals for the three execution strategies under the
/// n^4 log2(n) gate-count model. `gateConstant` scales the per-Pauli gate
/// count; `nonlocalFraction` scales the cat-session overhead applied to
/// distributed execution.
struct RuntimeModel {
  double gateConstant = 1.0;
  double nonlocalFraction = 1.0;
  int paulis = 15;
};

struct RuntimeTotals {
  std::optional<double> parallel;  // absent when no QPU fits a whole copy
  std::optional<double> oneQpu;
  std::optional<double> distributed;
  int parallelRounds = 0;
  int distributedRounds = 0;
};

RuntimeTotals weightedRuntime(const ClusterSpec& cluster, int n,
                              const GateTimeTable& t, const RuntimeModel& m);

/// CSV rows `n,parallel,oneQpu,distributed` for n in [2, nMax].
std::string runtimeCurveCsv(const ClusterSpec& cluster, int nMax,
                            const GateTimeTable& t, const RuntimeModel& m);

/// CSV rows `qpus,maxAnsatz` for clusters of 1..maxQpus equal-size QPUs.
std::string maxAnsatzCurveCsv(int qpuSize, int maxQpus);

}  // namespace dqvqe
