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

#include "dqvqe/schedule.hpp"

#include <doctest.h>

#include <cmath>

#include "dqvqe/remap.hpp"

using namespace dqvqe;

namespace {

Circuit crossSessionCircuit() {
  Circuit c;
  c.qubitCount = 2;
  c.appendLayer({makeSingle(GateName::H, {0, 0})});
  c.appendLayer({makeControlled(GateName::X, {0, 0}, {0, 1})});
  QubitMap map;
  map.data = {{0, 0}, {1, 0}};
  map.comm[0] = {1, 2};
  map.comm[1] = {1, 2};
  return distributedRemap(c, map);
}

}  // namespace

TEST_CASE("layer start times follow the slowest predecessor") {
  GateTimeTable t = GateTimeTable::defaults();
  Circuit c;
  c.qubitCount = 2;
  c.appendLayer({makeControlled(GateName::X, {0, 0}, {0, 1})});  // 5
  c.appendLayer({makeSingle(GateName::H, {0, 0})});              // 1
  GlobalSchedule g = buildGlobalSchedule(c, t);
  REQUIRE(g.commands.size() == 2);
  CHECK(g.commands[0].time == doctest::Approx(0.0));
  CHECK(g.commands[1].time == doctest::Approx(5.0));
  CHECK(g.makespan == doctest::Approx(6.0));
}

TEST_CASE("parallel gates in one layer share a start time") {
  GateTimeTable t = GateTimeTable::defaults();
  Circuit c;
  c.qubitCount = 3;
  c.appendLayer({makeSingle(GateName::H, {0, 0}),
                 makeControlled(GateName::X, {0, 1}, {0, 2})});
  c.appendLayer({makeSingle(GateName::H, {0, 1})});
  GlobalSchedule g = buildGlobalSchedule(c, t);
  REQUIRE(g.commands.size() == 3);
  CHECK(g.commands[0].time == doctest::Approx(0.0));
  CHECK(g.commands[1].time == doctest::Approx(0.0));
  // Second layer waits for the CNOT even though the H finished earlier.
  CHECK(g.commands[2].time == doctest::Approx(5.0));
}

TEST_CASE("an empty circuit yields an empty schedule") {
  GlobalSchedule g = buildGlobalSchedule(Circuit{}, GateTimeTable::defaults());
  CHECK(g.commands.empty());
  CHECK(g.makespan == doctest::Approx(0.0));
}

TEST_CASE("splitPerQpu splits network commands into paired halves") {
  GateTimeTable t = GateTimeTable::defaults();
  GlobalSchedule g = buildGlobalSchedule(crossSessionCircuit(), t);
  QpuSchedules per = splitPerQpu(g);
  REQUIRE(per.count(0) == 1);
  REQUIRE(per.count(1) == 1);

  int sendEnt = 0, recEnt = 0, sendCla = 0, recCla = 0, local = 0;
  for (const auto& [qpu, cmds] : per) {
    for (const TimedCommand& cmd : cmds) {
      if (cmd.op == "SEND_ENT") ++sendEnt;
      else if (cmd.op == "REC_ENT") ++recEnt;
      else if (cmd.op == "SEND_CLA") ++sendCla;
      else if (cmd.op == "REC_CLA") ++recCla;
      else ++local;
    }
  }
  CHECK(sendEnt == 1);
  CHECK(recEnt == 1);
  CHECK(sendCla == 2);
  CHECK(recCla == 2);
  CHECK(local > 0);

  // Halves share seq and time; total network commands doubled, locals kept.
  int globalNet = 0;
  for (const TimedCommand& cmd : g.commands)
    if (cmd.op == "GEN_ENT" || cmd.op == "CLASSICAL") ++globalNet;
  int perTotal = 0;
  for (const auto& [qpu, cmds] : per) perTotal += cmds.size();
  CHECK(perTotal == static_cast<int>(g.commands.size()) + globalNet);
  CHECK(validateSchedule(per, t).empty());
}

TEST_CASE("validateSchedule flags tampered schedules") {
  GateTimeTable t = GateTimeTable::defaults();
  GlobalSchedule g = buildGlobalSchedule(crossSessionCircuit(), t);
  QpuSchedules per = splitPerQpu(g);
  REQUIRE(validateSchedule(per, t).empty());

  // Shift one half of a paired network command.
  QpuSchedules desync = per;
  for (auto& [qpu, cmds] : desync) {
    for (TimedCommand& cmd : cmds) {
      if (cmd.op == "REC_ENT") {
        cmd.time += 1.0;
        goto doneDesync;
      }
    }
  }
doneDesync:
  CHECK_FALSE(validateSchedule(desync, t).empty());

  // Force two commands on one qubit to overlap.
  QpuSchedules overlap = per;
  bool moved = false;
  for (auto& [qpu, cmds] : overlap) {
    for (size_t i = 1; i < cmds.size() && !moved; ++i) {
      if (!cmds[i].qubits().empty() && !cmds[i - 1].qubits().empty() &&
          cmds[i].qubits()[0] == cmds[i - 1].qubits()[0]) {
        cmds[i].time = cmds[i - 1].time;
        moved = true;
      }
    }
  }
  REQUIRE(moved);
  CHECK_FALSE(validateSchedule(overlap, t).empty());
}

TEST_CASE("time table parsing with overrides") {
  GateTimeTable t = parseTimeTable(
      "unit: ns\n"
      "cnot=120\n"
      "single=30\n"
      "measurement=300\n"
      "entanglement=1000\n"
      "classical=200\n"
      "merging=50\n"
      "cnot@1=240\n");
  CHECK(t.unit == GateTimeTable::Unit::Ns);
  CHECK(t.duration("cnot") == doctest::Approx(120));
  CHECK(t.duration("cnot", 1) == doctest::Approx(240));
  CHECK(t.duration("cnot", 0) == doctest::Approx(120));
  CHECK(t.duration("single", 3) == doctest::Approx(30));
}

TEST_CASE("gate durations use the slowest involved QPU") {
  GateTimeTable t = GateTimeTable::defaults();
  t.perQpu["cnot@1"] = 9.0;
  Gate cx = makeControlled(GateName::X, {0, 0}, {1, 0});
  CHECK(t.gateDuration(cx) == doctest::Approx(9.0));
  Gate local = makeControlled(GateName::X, {0, 0}, {0, 1});
  CHECK(t.gateDuration(local) == doctest::Approx(5.0));
}

TEST_CASE("schedule CSV has the documented header") {
  GateTimeTable t = GateTimeTable::defaults();
  QpuSchedules per = splitPerQpu(buildGlobalSchedule(crossSessionCircuit(), t));
  std::string csv = scheduleToCsv(per);
  CHECK(csv.rfind("qpu,command,args,qpus,time", 0) == 0);
}

TEST_CASE("schedule JSON round-trips") {
  GateTimeTable t = GateTimeTable::defaults();
  QpuSchedules per = splitPerQpu(buildGlobalSchedule(crossSessionCircuit(), t));
  QpuSchedules again = scheduleFromJson(scheduleToJson(per));
  REQUIRE(again.size() == per.size());
  for (const auto& [qpu, cmds] : per) {
    REQUIRE(again.count(qpu) == 1);
    REQUIRE(again.at(qpu).size() == cmds.size());
    for (size_t i = 0; i < cmds.size(); ++i) {
      CHECK(again.at(qpu)[i].op == cmds[i].op);
      CHECK(again.at(qpu)[i].time == doctest::Approx(cmds[i].time));
      CHECK(again.at(qpu)[i].seq == cmds[i].seq);
      CHECK(again.at(qpu)[i].qpus == cmds[i].qpus);
    }
  }
  CHECK(validateSchedule(again, t).empty());
}

TEST_CASE("weightedRuntime strategy ordering on a 10x5 cluster") {
  ClusterSpec cluster{std::vector<int>(5, 10)};
  GateTimeTable t = GateTimeTable::defaults();
  RuntimeModel m;

  // Small Ansatz: the parallel strategy is never beaten, and greedy
  // distribution needs no splits so it costs the same.
  for (int n = 2; n <= 9; ++n) {
    RuntimeTotals r = weightedRuntime(cluster, n, t, m);
    REQUIRE(r.parallel.has_value());
    REQUIRE(r.oneQpu.has_value());
    REQUIRE(r.distributed.has_value());
    CHECK(*r.parallel < *r.oneQpu);
    CHECK(*r.parallel <= *r.distributed);
    CHECK(*r.distributed <= *r.oneQpu);
  }

  // n = 9 is the last size a single 10-qubit QPU can host with the QPE
  // ancilla; past that only distribution remains feasible, and the cat
  // sessions make it slower than the sequential baseline.
  CHECK(weightedRuntime(cluster, 9, t, m).parallel.has_value());
  for (int n = 10; n <= 16; ++n) {
    RuntimeTotals r = weightedRuntime(cluster, n, t, m);
    CHECK_FALSE(r.parallel.has_value());
    REQUIRE(r.oneQpu.has_value());
    REQUIRE(r.distributed.has_value());
    CHECK(*r.distributed >= *r.oneQpu);
  }
}

TEST_CASE("runtime and capacity curve CSVs") {
  ClusterSpec cluster{std::vector<int>(5, 10)};
  std::string csv = runtimeCurveCsv(cluster, 12, GateTimeTable::defaults(),
                                    RuntimeModel{});
  CHECK(csv.rfind("n,parallel,oneQpu,distributed", 0) == 0);
  CHECK(csv.find("\n12,") != std::string::npos);

  std::string cap = maxAnsatzCurveCsv(10, 15);
  CHECK(cap.rfind("qpus,maxAnsatz", 0) == 0);
  CHECK(cap.find("\n1,9\n") != std::string::npos);
  CHECK(cap.find("\n2,15\n") != std::string::npos);
  CHECK(cap.find("\n15,119") != std::string::npos);
}
