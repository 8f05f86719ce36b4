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

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "dqvqe/placement.hpp"

namespace dqvqe {

GateTimeTable GateTimeTable::defaults() {
  GateTimeTable t;
  t.classes = {{"cnot", 5},    {"single", 1},        {"measurement", 2},
               {"entanglement", 8}, {"classical", 2}, {"merging", 3}};
  return t;
}

std::string GateTimeTable::gateClass(const Gate& g) {
  switch (g.kind) {
    case GateKind::Unitary:
      return g.isControlled() ? "cnot" : "single";
    case GateKind::Measure:
      return "measurement";
    case GateKind::ClassicallyControlled:
      return "single";
    case GateKind::EntGen:
      return "entanglement";
    case GateKind::ClassicalComm:
      return "classical";
  }
  return "single";
}

double GateTimeTable::duration(const std::string& cls, int qpu) const {
  if (qpu >= 0) {
    auto it = perQpu.find(cls + "@" + std::to_string(qpu));
    if (it != perQpu.end()) return it->second;
  }
  auto it = classes.find(cls);
  if (it == classes.end())
    throw ValidationError("gate class missing from time table: " + cls);
  return it->second;
}

double GateTimeTable::gateDuration(const Gate& g, int qpu) const {
  std::string cls = gateClass(g);
  if (qpu >= 0) return duration(cls, qpu);
  double d = 0.0;
  std::set<int> qpus;
  for (QubitId q : g.qubits()) qpus.insert(q.qpu);
  if (g.kind == GateKind::ClassicalComm) {
    qpus.insert(g.fromQpu);
    qpus.insert(g.toQpu);
  }
  if (qpus.empty()) return duration(cls);
  for (int j : qpus) d = std::max(d, duration(cls, j));
  return d;
}

GateTimeTable parseTimeTable(const std::string& text) {
  GateTimeTable t = GateTimeTable::defaults();
  std::istringstream in(text);
  std::string line;
  bool sawUnit = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto notWs = line.find_first_not_of(" \t\r");
    if (notWs == std::string::npos) continue;
    if (!sawUnit) {
      std::istringstream ls(line);
      std::string key, val;
      ls >> key >> val;
      if (key != "unit:" || (val != "weight" && val != "ns"))
        throw ParseError("time table must start with 'unit: weight|ns'");
      t.unit = val == "ns" ? GateTimeTable::Unit::Ns
                           : GateTimeTable::Unit::Weight;
      sawUnit = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected class=duration");
    std::string key = line.substr(notWs, eq - notWs);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    double dur;
    try {
      dur = std::stod(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad duration: " + line);
    }
    if (dur <= 0.0) throw ParseError("durations must be positive");
    if (key.find('@') != std::string::npos)
      t.perQpu[key] = dur;
    else
      t.classes[key] = dur;
  }
  if (!sawUnit) throw ParseError("empty time table");
  return t;
}

namespace {

std::string qubitText(QubitId q) {
  return std::to_string(q.qpu) + ":" + std::to_string(q.local);
}

std::string gateLabel(const Gate& g) {
  Circuit c;
  c.qubitCount = 0;
  c.layers.push_back({g});
  std::string text = serializeCircuit(c);
  auto nl = text.find('\n');
  std::string line = text.substr(nl + 1);
  if (!line.empty() && line.back() == '\n') line.pop_back();
  return line;
}

Gate gateFromLine(const std::string& line) {
  Circuit c = parseCircuit("qubits 0\n" + line + "\n");
  return c.layers.at(0).at(0);
}

std::string opForGate(const Gate& g) {
  switch (g.kind) {
    case GateKind::Unitary:
      return g.isControlled() ? "TWO_QUBIT" : "SINGLE";
    case GateKind::Measure:
      return "SINGLE";
    case GateKind::ClassicallyControlled:
      return "TWO_QUBIT";
    case GateKind::EntGen:
      return "GEN_ENT";
    case GateKind::ClassicalComm:
      return "CLASSICAL";
  }
  return "SINGLE";
}

std::string unitaryName(const Gate& g) {
  std::string line = gateLabel(g);
  return line.substr(0, line.find(' '));
}

}  // namespace

std::vector<std::string> TimedCommand::args() const {
  std::vector<std::string> out;
  if (op == "TWO_QUBIT") {
    if (gate.kind == GateKind::ClassicallyControlled) {
      out = {unitaryName(gate), "c" + std::to_string(gate.reg),
             qubitText(gate.target)};
    } else {
      out.push_back(unitaryName(gate));
      for (QubitId c : gate.controls) out.push_back(qubitText(c));
      out.push_back(qubitText(gate.target));
    }
  } else if (op == "SINGLE") {
    if (gate.kind == GateKind::Measure)
      out = {"measure", qubitText(gate.target), "c" + std::to_string(gate.reg)};
    else
      out = {unitaryName(gate), qubitText(gate.target)};
  } else if (op == "GEN_ENT") {
    out = {qubitText(gate.entA), qubitText(gate.entB)};
  } else if (op == "SEND_ENT") {
    out = {std::to_string(gate.entB.qpu), qubitText(gate.entA)};
  } else if (op == "REC_ENT") {
    out = {std::to_string(gate.entA.qpu), qubitText(gate.entB)};
  } else if (op == "CLASSICAL") {
    out = {"c" + std::to_string(gate.reg)};
  } else if (op == "SEND_CLA") {
    out = {std::to_string(gate.toQpu), "c" + std::to_string(gate.reg)};
  } else if (op == "REC_CLA") {
    out = {std::to_string(gate.fromQpu), "c" + std::to_string(gate.reg)};
  }
  return out;
}

std::vector<QubitId> TimedCommand::qubits() const {
  if (op == "SEND_ENT") return {gate.entA};
  if (op == "REC_ENT") return {gate.entB};
  if (op == "CLASSICAL" || op == "SEND_CLA" || op == "REC_CLA") return {};
  if (gate.kind == GateKind::ClassicallyControlled) return {gate.target};
  return gate.qubits();
}

GlobalSchedule buildGlobalSchedule(const Circuit& c, const GateTimeTable& t) {
  GlobalSchedule g;
  long seq = 0;
  double now = 0.0;
  for (const Layer& layer : c.layers) {
    if (layer.empty()) continue;
    double slowest = 0.0;
    for (const Gate& gate : layer) {
      TimedCommand cmd;
      cmd.op = opForGate(gate);
      cmd.gate = gate;
      std::set<int> qpus;
      for (QubitId q : gate.qubits()) qpus.insert(q.qpu);
      if (gate.kind == GateKind::ClassicalComm) {
        qpus.insert(gate.fromQpu);
        qpus.insert(gate.toQpu);
      }
      cmd.qpus.assign(qpus.begin(), qpus.end());
      cmd.time = now;
      cmd.duration = t.gateDuration(gate);
      cmd.seq = seq++;
      slowest = std::max(slowest, cmd.duration);
      g.commands.push_back(std::move(cmd));
    }
    now += slowest;
  }
  g.makespan = now;
  return g;
}

QpuSchedules splitPerQpu(const GlobalSchedule& global) {
  QpuSchedules out;
  for (const TimedCommand& cmd : global.commands) {
    if (cmd.op == "GEN_ENT") {
      TimedCommand send = cmd, rec = cmd;
      send.op = "SEND_ENT";
      rec.op = "REC_ENT";
      out[cmd.gate.entA.qpu].push_back(std::move(send));
      out[cmd.gate.entB.qpu].push_back(std::move(rec));
    } else if (cmd.op == "CLASSICAL" &&
               cmd.gate.fromQpu != cmd.gate.toQpu) {
      TimedCommand send = cmd, rec = cmd;
      send.op = "SEND_CLA";
      rec.op = "REC_CLA";
      out[cmd.gate.fromQpu].push_back(std::move(send));
      out[cmd.gate.toQpu].push_back(std::move(rec));
    } else {
      for (int qpu : cmd.qpus) out[qpu].push_back(cmd);
    }
  }
  return out;
}

std::vector<std::string> validateSchedule(const QpuSchedules& perQpu,
                                          const GateTimeTable& t) {
  (void)t;
  std::vector<std::string> out;
  // Constraint 1: split halves share a seq and must share a timestamp.
  std::map<long, std::vector<const TimedCommand*>> pairs;
  for (auto& [qpu, cmds] : perQpu)
    for (const TimedCommand& c : cmds)
      if (c.op == "SEND_ENT" || c.op == "REC_ENT" || c.op == "SEND_CLA" ||
          c.op == "REC_CLA")
        pairs[c.seq].push_back(&c);
  for (auto& [seq, halves] : pairs) {
    if (halves.size() != 2) {
      out.push_back("constraint-1: command " + std::to_string(seq) +
                    " lacks its paired half");
      continue;
    }
    if (halves[0]->time != halves[1]->time)
      out.push_back("constraint-1: send/receive pair " + std::to_string(seq) +
                    " timestamps differ");
  }
  // Constraints 2 and 3: per-qubit intervals never overlap, which also
  // guarantees both operands of a two-qubit gate are free at its start.
  std::map<QubitId, std::vector<std::pair<double, double>>> busy;
  for (auto& [qpu, cmds] : perQpu)
    for (const TimedCommand& c : cmds)
      for (QubitId q : c.qubits())
        busy[q].push_back({c.time, c.time + c.duration});
  for (auto& [q, spans] : busy) {
    auto sorted = spans;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i + 1].first < sorted[i].second - 1e-12)
        out.push_back("constraint-2: qubit " + qubitText(q) +
                      " has overlapping commands");
  }
  return out;
}

std::string scheduleToCsv(const QpuSchedules& perQpu) {
  std::ostringstream out;
  out << "qpu,command,args,qpus,time\n";
  for (auto& [qpu, cmds] : perQpu) {
    for (const TimedCommand& c : cmds) {
      out << qpu << ',' << c.op << ',';
      auto args = c.args();
      for (size_t i = 0; i < args.size(); ++i)
        out << (i ? " " : "") << args[i];
      out << ',';
      for (size_t i = 0; i < c.qpus.size(); ++i)
        out << (i ? " " : "") << c.qpus[i];
      out << ',' << c.time << "\n";
    }
  }
  return out.str();
}

std::string scheduleToJson(const QpuSchedules& perQpu) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [qpu, cmds] : perQpu) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TimedCommand& c : cmds)
      arr.push_back({{"op", c.op},
                     {"gate", gateLabel(c.gate)},
                     {"qpus", c.qpus},
                     {"time", c.time},
                     {"duration", c.duration},
                     {"seq", c.seq}});
    j[std::to_string(qpu)] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

QpuSchedules scheduleFromJson(const std::string& text) {
  QpuSchedules out;
  try {
    auto j = nlohmann::json::parse(text);
    for (auto& [key, arr] : j.items()) {
      int qpu = std::stoi(key);
      for (const auto& jc : arr) {
        TimedCommand c;
        c.op = jc.at("op").get<std::string>();
        c.gate = gateFromLine(jc.at("gate").get<std::string>());
        c.qpus = jc.at("qpus").get<std::vector<int>>();
        c.time = jc.at("time").get<double>();
        c.duration = jc.at("duration").get<double>();
        c.seq = jc.at("seq").get<long>();
        out[qpu].push_back(std::move(c));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad schedule JSON: ") + e.what());
  }
  return out;
}

namespace {

double gateCount(int n, const RuntimeModel& m) {
  return m.gateConstant * std::pow(n, 4) * std::log2(double(n));
}

}  // namespace

RuntimeTotals weightedRuntime(const ClusterSpec& cluster, int n,
                              const GateTimeTable& t, const RuntimeModel& m) {
  if (n < 2) throw ValidationError("runtime model needs n >= 2");
  RuntimeTotals out;
  const double g = gateCount(n, m);
  const double perPauliLocal =
      (t.duration("cnot") + t.duration("single") + t.duration("measurement")) *
      g;
  // Full cat-session cost per non-local gate: Bell pair, CNOT, two
  // measurements, two transmissions, four conditional singles, one H.
  const double sessionOverhead =
      t.duration("entanglement") + t.duration("cnot") +
      2 * t.duration("measurement") + 2 * t.duration("classical") +
      5 * t.duration("single");

  int wholeCapacity = 0;
  int largest = 0;
  for (int q : cluster.qpuSizes) {
    wholeCapacity += q / (n + 1);
    largest = std::max(largest, q);
  }
  if (largest >= n + 1) {
    out.parallelRounds = (m.paulis + wholeCapacity - 1) / wholeCapacity;
    out.parallel = out.parallelRounds * perPauliLocal;
  }
  if (cluster.totalQubits() >= n + 1) out.oneQpu = m.paulis * perPauliLocal;
  try {
    PlacementSchedule sched = greedyDistribute(cluster, n, m.paulis);
    double total = 0.0;
    for (const auto& round : sched.rounds) {
      double roundCost = 0.0;
      for (const AnsatzAllocation& a : round) {
        double cost = perPauliLocal;
        if (a.qpuSpan() > 1)
          cost += m.nonlocalFraction * sessionOverhead * g +
                  t.duration("merging") * a.qpuSpan();
        roundCost = std::max(roundCost, cost);
      }
      total += roundCost;
    }
    out.distributedRounds = sched.roundCount();
    out.distributed = total;
  } catch (const ValidationError&) {
    // Ansatz does not fit; leave distributed absent.
  }
  return out;
}

std::string runtimeCurveCsv(const ClusterSpec& cluster, int nMax,
                            const GateTimeTable& t, const RuntimeModel& m) {
  std::ostringstream out;
  out << "n,parallel,oneQpu,distributed\n";
  for (int n = 2; n <= nMax; ++n) {
    RuntimeTotals r = weightedRuntime(cluster, n, t, m);
    out << n << ',';
    if (r.parallel) out << *r.parallel;
    out << ',';
    if (r.oneQpu) out << *r.oneQpu;
    out << ',';
    if (r.distributed) out << *r.distributed;
    out << "\n";
  }
  return out.str();
}

std::string maxAnsatzCurveCsv(int qpuSize, int maxQpus) {
  if (qpuSize <= 2) throw ValidationError("QPU size must exceed 2");
  std::ostringstream out;
  out << "qpus,maxAnsatz\n";
  for (int k = 1; k <= maxQpus; ++k) {
    ClusterSpec cluster;
    cluster.qpuSizes.assign(k, qpuSize);
    out << k << ',' << maxAnsatzSize(cluster) << "\n";
  }
  return out.str();
}

}  // namespace dqvqe
