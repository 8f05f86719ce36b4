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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dqvqe/avqe.hpp"
#include "dqvqe/circuit.hpp"
#include "dqvqe/hamiltonian.hpp"
#include "dqvqe/netctl.hpp"
#include "dqvqe/placement.hpp"
#include "dqvqe/remap.hpp"
#include "dqvqe/schedule.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dqvqe::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct OutputSink {
  std::string outputDir;
  std::string subcommand;
  uint64_t seed = 0;
  std::vector<std::string> inputs;
  nlohmann::json digests = nlohmann::json::object();

  void emit(const std::string& name, const std::string& content) {
    std::cout << content;
    if (outputDir.empty()) return;
    std::filesystem::create_directories(outputDir);
    std::ofstream out(outputDir + "/" + name, std::ios::binary);
    out << content;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(content)));
    digests[name] = buf;
  }

  void writeManifest() {
    if (outputDir.empty()) return;
    nlohmann::json m{{"subcommand", subcommand},
                     {"inputs", inputs},
                     {"seed", seed},
                     {"version", kVersion},
                     {"outputs", digests}};
    std::ofstream out(outputDir + "/manifest.json", std::ios::binary);
    out << m.dump(2) << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  using namespace dqvqe;
  CLI::App app{"distributed VQE compilation toolkit"};
  app.require_subcommand(1);
  std::string outputDir;
  app.add_option("--output", outputDir, "directory for output artifacts");

  // distribute
  auto* dist = app.add_subcommand("distribute", "place Ansatz copies");
  std::string clusterPath, solver = "greedy";
  int ansatzSize = 0, paulis = 0;
  dist->add_option("--cluster", clusterPath)->required();
  dist->add_option("--ansatz-size", ansatzSize)->required();
  dist->add_option("--paulis", paulis)->required();
  dist->add_option("--solver", solver)->check(CLI::IsMember({"greedy", "cp"}));

  // remap
  auto* rem = app.add_subcommand("remap", "rewrite non-local gates");
  std::string circuitPath, mapPath;
  rem->add_option("--circuit", circuitPath)->required();
  rem->add_option("--map", mapPath)->required();

  // schedule
  auto* sch = app.add_subcommand("schedule", "emit per-QPU command schedules");
  std::string schCircuit, timesPath, format = "csv";
  sch->add_option("--circuit", schCircuit)->required();
  sch->add_option("--times", timesPath);
  sch->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // vqe
  auto* vqe = app.add_subcommand("vqe", "run distributed alpha-VQE");
  std::string vqeCluster, hamPath, ansatzPath, vqeSolver = "greedy";
  double alpha = 0.5;
  uint64_t seed = 0;
  bool seedSet = false;
  vqe->add_option("--cluster", vqeCluster)->required();
  vqe->add_option("--hamiltonian", hamPath)->required();
  vqe->add_option("--ansatz", ansatzPath)->required();
  vqe->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
  vqe->add_option("--solver", vqeSolver)
      ->check(CLI::IsMember({"greedy", "cp"}));
  auto* seedOpt = vqe->add_option("--seed", seed);

  // netsim
  auto* net = app.add_subcommand("netsim", "simulate the control plane");
  std::string scenarioPath, schedulePath, netCluster;
  net->add_option("--scenario", scenarioPath)->required();
  net->add_option("--schedule", schedulePath)->required();
  net->add_option("--cluster", netCluster)->required();
  auto* netSeedOpt = net->add_option("--seed", seed);

  // analyze
  auto* ana = app.add_subcommand("analyze", "runtime and capacity curves");
  ana->require_subcommand(1);
  auto* anaRt = ana->add_subcommand("runtime", "weighted runtime curves");
  std::string rtCluster, rtTimes;
  int nMax = 39, rtPaulis = 15;
  double gateConstant = 1.0;
  anaRt->add_option("--cluster", rtCluster)->required();
  anaRt->add_option("--n-max", nMax);
  anaRt->add_option("--paulis", rtPaulis);
  anaRt->add_option("--gate-constant", gateConstant);
  anaRt->add_option("--times", rtTimes);
  auto* anaCap = ana->add_subcommand("capacity", "max Ansatz size curve");
  int qpuSize = 0, maxQpus = 0;
  anaCap->add_option("--qpu-size", qpuSize)->required();
  anaCap->add_option("--max-qpus", maxQpus)->required();

  CLI11_PARSE(app, argc, argv);

  OutputSink sink;
  sink.outputDir = outputDir;
  try {
    if (*dist) {
      sink.subcommand = "distribute";
      sink.inputs = {clusterPath};
      ClusterSpec cluster = parseCluster(readFile(clusterPath));
      PlacementSchedule s = solver == "cp"
                                ? cpSchedule(cluster, ansatzSize, paulis)
                                : greedyDistribute(cluster, ansatzSize, paulis);
      auto violations = validatePlacement(cluster, ansatzSize, paulis, s);
      if (!violations.empty()) {
        for (auto& v : violations) std::cerr << "invalid placement: " << v << "\n";
        return 1;
      }
      sink.emit("placement.json", placementToJson(s));
    } else if (*rem) {
      sink.subcommand = "remap";
      sink.inputs = {circuitPath, mapPath};
      Circuit c = parseCircuit(readFile(circuitPath));
      QubitMap map = mapFromJson(readFile(mapPath));
      sink.emit("distributed.circuit", serializeCircuit(distributedRemap(c, map)));
    } else if (*sch) {
      sink.subcommand = "schedule";
      sink.inputs = {schCircuit};
      if (!timesPath.empty()) sink.inputs.push_back(timesPath);
      Circuit c = parseCircuit(readFile(schCircuit));
      GateTimeTable t = timesPath.empty() ? GateTimeTable::defaults()
                                          : parseTimeTable(readFile(timesPath));
      QpuSchedules per = splitPerQpu(buildGlobalSchedule(c, t));
      auto violations = validateSchedule(per, t);
      if (!violations.empty()) {
        for (auto& v : violations) std::cerr << "invalid schedule: " << v << "\n";
        return 1;
      }
      if (format == "json")
        sink.emit("schedule.json", scheduleToJson(per));
      else
        sink.emit("schedule.csv", scheduleToCsv(per));
    } else if (*vqe) {
      sink.subcommand = "vqe";
      sink.inputs = {vqeCluster, hamPath, ansatzPath};
      if (!*seedOpt)
        std::cerr << "warning: --seed not given, defaulting to 0\n";
      sink.seed = seed;
      ClusterSpec cluster = parseCluster(readFile(vqeCluster));
      PauliHamiltonian h = parseHamiltonian(readFile(hamPath));
      ParamCircuit rt = ParamCircuit::parse(readFile(ansatzPath));
      AvqeConfig cfg;
      cfg.solver = vqeSolver;
      cfg.aqpe.alpha = alpha;
      cfg.aqpe.seed = seed;
      AvqeResult r = distributedAvqe(cluster, h, rt, cfg);
      nlohmann::json results = nlohmann::json::array();
      long invocations = 0;
      for (const EstimationResult& e : r.finalResults) {
        results.push_back({{"pauliIndex", e.pauliIndex},
                           {"absExpectation", e.absExpectation},
                           {"sign", e.sign},
                           {"method", e.method},
                           {"iterations", e.iterations},
                           {"finalSigma", e.finalSigma},
                           {"circuitInvocations", e.circuitInvocations}});
        invocations += e.circuitInvocations;
      }
      nlohmann::json report{{"energy", r.energy},
                            {"lambda", r.lambda},
                            {"rounds", r.schedule.roundCount()},
                            {"circuitInvocations", invocations},
                            {"perPauli", results}};
      sink.emit("vqe.json", report.dump(2) + "\n");
    } else if (*net) {
      sink.subcommand = "netsim";
      sink.inputs = {scenarioPath, schedulePath, netCluster};
      NetConfig cfg = netConfigFromJson(readFile(scenarioPath));
      if (*netSeedOpt) cfg.seed = seed;
      sink.seed = cfg.seed;
      QpuSchedules per = scheduleFromJson(readFile(schedulePath));
      ClusterSpec cluster = parseCluster(readFile(netCluster));
      ExecutionTrace trace = cfg.topology == "decentralized"
                                 ? runDecentralized(per, cluster, cfg)
                                 : runCentralized(per, cluster, cfg);
      sink.emit("trace.jsonl", traceToJsonLines(trace));
      if (trace.aborted) {
        sink.writeManifest();
        return 1;
      }
    } else if (*anaRt) {
      sink.subcommand = "analyze runtime";
      sink.inputs = {rtCluster};
      ClusterSpec cluster = parseCluster(readFile(rtCluster));
      GateTimeTable t = rtTimes.empty() ? GateTimeTable::defaults()
                                        : parseTimeTable(readFile(rtTimes));
      RuntimeModel m;
      m.paulis = rtPaulis;
      m.gateConstant = gateConstant;
      sink.emit("runtime.csv", runtimeCurveCsv(cluster, nMax, t, m));
    } else if (*anaCap) {
      sink.subcommand = "analyze capacity";
      sink.emit("capacity.csv", maxAnsatzCurveCsv(qpuSize, maxQpus));
    }
    sink.writeManifest();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
