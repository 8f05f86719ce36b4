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

#include "dqvqe/remap.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

namespace dqvqe {

QubitId QubitMap::lookup(int k) const {
  if (k >= 0 && k < dataCount()) return data[k];
  if (k == dataCount() && qpe) return *qpe;
  throw ValidationError("logical qubit index not covered by map: " +
                        std::to_string(k));
}

void QubitMap::validate() const {
  std::set<QubitId> seen;
  auto add = [&](QubitId q, const char* what) {
    if (!seen.insert(q).second)
      throw ValidationError(std::string("map reuses a qubit as ") + what);
  };
  for (QubitId q : data) add(q, "data");
  if (qpe) add(*qpe, "QPE");
  for (auto& [qpu, locals] : comm)
    for (int l : locals) add(QubitId{qpu, l}, "comm");
}

QubitMap mapFromJson(const std::string& text) {
  QubitMap m;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& jq : j.at("data"))
      m.data.push_back({jq.at(0).get<int>(), jq.at(1).get<int>()});
    if (j.contains("comm"))
      for (auto& [key, locals] : j.at("comm").items())
        m.comm[std::stoi(key)] = locals.get<std::vector<int>>();
    if (j.contains("qpe"))
      m.qpe = QubitId{j.at("qpe").at(0).get<int>(), j.at("qpe").at(1).get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad map JSON: ") + e.what());
  }
  m.validate();
  return m;
}

std::string mapToJson(const QubitMap& map) {
  nlohmann::json j;
  j["data"] = nlohmann::json::array();
  for (QubitId q : map.data) j["data"].push_back({q.qpu, q.local});
  if (!map.comm.empty()) {
    j["comm"] = nlohmann::json::object();
    for (auto& [qpu, locals] : map.comm) j["comm"][std::to_string(qpu)] = locals;
  }
  if (map.qpe) j["qpe"] = {map.qpe->qpu, map.qpe->local};
  return j.dump(2) + "\n";
}

Circuit applyMap(const Circuit& c, const QubitMap& map) {
  auto translate = [&](QubitId q) {
    if (q.qpu != 0)
      throw ValidationError("applyMap expects monolithic (qpu 0) addresses");
    return map.lookup(q.local);
  };
  Circuit out;
  out.qubitCount = c.qubitCount;
  for (const Layer& layer : c.layers) {
    Layer mapped;
    for (Gate g : layer) {
      switch (g.kind) {
        case GateKind::Unitary:
          for (QubitId& ctl : g.controls) ctl = translate(ctl);
          g.target = translate(g.target);
          break;
        case GateKind::Measure:
        case GateKind::ClassicallyControlled:
          g.target = translate(g.target);
          break;
        case GateKind::EntGen:
        case GateKind::ClassicalComm:
          throw ValidationError("applyMap input is already distributed");
      }
      mapped.push_back(std::move(g));
    }
    out.appendLayer(std::move(mapped));
  }
  return out;
}

namespace {

bool seriesMatch(const Gate& g, int remoteQpu, QubitId control) {
  return g.isUnitary() && g.controls.size() == 1 && g.controls[0] == control &&
         g.target.qpu == remoteQpu;
}

std::vector<std::pair<int, int>> seriesPositions(const Circuit& c,
                                                 int afterLayer, int remoteQpu,
                                                 QubitId control) {
  std::vector<std::pair<int, int>> out;
  for (int l = afterLayer + 1; l < static_cast<int>(c.layers.size()); ++l) {
    for (int i = 0; i < static_cast<int>(c.layers[l].size()); ++i) {
      if (seriesMatch(c.layers[l][i], remoteQpu, control))
        out.push_back({l, i});
      else
        return out;
    }
  }
  return out;
}

}  // namespace

std::vector<Gate> getSeriesCGates(const Circuit& c, int afterLayer,
                                  int remoteQpu, QubitId control) {
  std::vector<Gate> out;
  for (auto [l, i] : seriesPositions(c, afterLayer, remoteQpu, control))
    out.push_back(c.layers[l][i]);
  return out;
}

namespace {

class Remapper {
 public:
  Remapper(const Circuit& c, const QubitMap& map)
      : in_(c), map_(map), nextReg_(c.maxRegister() + 1) {
    out_.qubitCount = c.qubitCount;
  }

  Circuit run() {
    for (int l = 0; l < static_cast<int>(in_.layers.size()); ++l) {
      Layer locals;
      std::vector<Gate> cross;
      std::vector<int> crossIdx;
      for (int i = 0; i < static_cast<int>(in_.layers[l].size()); ++i) {
        if (consumed_.count({l, i})) continue;
        const Gate& g = in_.layers[l][i];
        if (isCross(g)) {
          cross.push_back(g);
          crossIdx.push_back(i);
        } else {
          locals.push_back(g);
        }
      }
      out_.appendLayer(std::move(locals));
      for (size_t k = 0; k < cross.size(); ++k)
        emitSession(cross[k], l);
    }
    return std::move(out_);
  }

 private:
  static bool isCross(const Gate& g) {
    if (!g.isControlled()) return false;
    for (QubitId ctl : g.controls)
      if (ctl.qpu != g.target.qpu) return true;
    return false;
  }

  QubitId takeComm(int qpu, std::set<QubitId>& inUse) {
    auto it = map_.comm.find(qpu);
    if (it != map_.comm.end()) {
      for (int local : it->second) {
        QubitId q{qpu, local};
        if (inUse.insert(q).second) return q;
      }
    }
    throw ValidationError("no free communication qubit on QPU " +
                          std::to_string(qpu));
  }

  void one(Gate g) { out_.appendLayer({std::move(g)}); }

  void emitSession(const Gate& g, int layer) {
    const int t = g.target.qpu;
    struct Session {
      QubitId ctl, e1, e2;
      int c1, c2;
    };
    std::set<QubitId> inUse;
    std::vector<Session> sessions;
    Gate local = g;
    for (QubitId& ctl : local.controls) {
      if (ctl.qpu == t) continue;
      Session s;
      s.ctl = ctl;
      s.e1 = takeComm(ctl.qpu, inUse);
      s.e2 = takeComm(t, inUse);
      s.c1 = nextReg_++;
      s.c2 = nextReg_++;
      sessions.push_back(s);
      ctl = s.e2;
    }
    // Fold the following series only in the plain single-control case.
    std::vector<Gate> folded;
    if (g.controls.size() == 1 && sessions.size() == 1) {
      for (auto [fl, fi] : seriesPositions(in_, layer, t, g.controls[0])) {
        consumed_.insert({fl, fi});
        Gate fg = in_.layers[fl][fi];
        fg.controls[0] = sessions[0].e2;
        folded.push_back(std::move(fg));
      }
    }
    // Cat-entangler per remote control.
    for (const Session& s : sessions) {
      one(makeEntGen(s.e1, s.e2));
      one(makeControlled(GateName::X, s.ctl, s.e1));
      one(makeMeasure(s.e1, s.c1));
      out_.appendLayer({makeClassicalComm(s.ctl.qpu, t, s.c1),
                        makeClassicallyControlled(GateName::X, s.c1, s.e1)});
      one(makeClassicallyControlled(GateName::X, s.c1, s.e2));
    }
    one(std::move(local));
    for (Gate& fg : folded) one(std::move(fg));
    // Cat-disentangler, innermost session first.
    for (auto it = sessions.rbegin(); it != sessions.rend(); ++it) {
      const Session& s = *it;
      one(makeSingle(GateName::H, s.e2));
      one(makeMeasure(s.e2, s.c2));
      out_.appendLayer({makeClassicallyControlled(GateName::X, s.c2, s.e2),
                        makeClassicalComm(t, s.ctl.qpu, s.c2)});
      one(makeClassicallyControlled(GateName::Z, s.c2, s.ctl));
    }
  }

  const Circuit& in_;
  const QubitMap& map_;
  int nextReg_;
  Circuit out_;
  std::set<std::pair<int, int>> consumed_;
};

}  // namespace

Circuit remapNonlocal(const Circuit& c, const QubitMap& map) {
  return Remapper(c, map).run();
}

Circuit distributedRemap(const Circuit& c, const QubitMap& map) {
  return remapNonlocal(applyMap(c, map), map);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Controlled X^s as H(t), c-ZAngle(-pi s), H(t); exact including phase.
void emitCxPow(Circuit& c, QubitId ctl, QubitId tgt, double s) {
  c.appendLayer({makeSingle(GateName::H, tgt)});
  c.appendLayer({makeControlled(GateName::ZAngle, ctl, tgt, {-kPi * s})});
  c.appendLayer({makeSingle(GateName::H, tgt)});
}

// Multi-controlled X^s via the halved-power ladder:
// C^k(X^s) = CV(c_k, s/2) C^{k-1}X CV(c_k, -s/2) C^{k-1}X C^{k-1}(X^{s/2}).
void emitMcx(Circuit& c, const std::vector<QubitId>& ctls, QubitId tgt,
             double s) {
  if (ctls.empty()) {
    c.appendLayer({makeSingle(GateName::H, tgt)});
    c.appendLayer({makeSingle(GateName::ZAngle, tgt, {-kPi * s})});
    c.appendLayer({makeSingle(GateName::H, tgt)});
    return;
  }
  if (ctls.size() == 1) {
    emitCxPow(c, ctls[0], tgt, s);
    return;
  }
  std::vector<QubitId> rest(ctls.begin(), ctls.end() - 1);
  QubitId last = ctls.back();
  emitCxPow(c, last, tgt, s / 2);
  emitMcx(c, rest, last, 1.0);
  emitCxPow(c, last, tgt, -s / 2);
  emitMcx(c, rest, last, 1.0);
  emitMcx(c, rest, tgt, s / 2);
}

}  // namespace

Circuit buildReflection(int n) {
  if (n < 1) throw ValidationError("reflection needs n >= 1");
  Circuit c;
  c.qubitCount = n;
  Layer xAll;
  for (int q = 0; q < n; ++q) xAll.push_back(makeSingle(GateName::X, {0, q}));
  c.appendLayer(xAll);
  QubitId tgt{0, n - 1};
  c.appendLayer({makeSingle(GateName::H, tgt)});
  std::vector<QubitId> ctls;
  for (int q = 0; q < n - 1; ++q) ctls.push_back({0, q});
  emitMcx(c, ctls, tgt, 1.0);
  c.appendLayer({makeSingle(GateName::H, tgt)});
  c.appendLayer(xAll);
  return c;
}

Circuit pauliCircuit(const PauliString& p, int n) {
  if (p.size() != n) throw ValidationError("Pauli length mismatch");
  Circuit c;
  c.qubitCount = n;
  Layer layer;
  for (int q = 0; q < n; ++q) {
    switch (p.ops[q]) {
      case 'X':
        layer.push_back(makeSingle(GateName::X, {0, q}));
        break;
      case 'Y':
        layer.push_back(makeSingle(GateName::Y, {0, q}));
        break;
      case 'Z':
        layer.push_back(makeSingle(GateName::Z, {0, q}));
        break;
      default:
        break;
    }
  }
  c.appendLayer(std::move(layer));
  return c;
}

Circuit buildU(const Circuit& r, const PauliString& p, int n) {
  if (r.qubitCount != n || p.size() != n)
    throw ValidationError("qubit count mismatch in U construction");
  Circuit refl = buildReflection(n);
  Circuit rdag = dagger(r);
  Circuit pc = pauliCircuit(p, n);
  // U = R Pi Rdag P R Pi Rdag Pdag applied right to left.
  Circuit u;
  u.qubitCount = n;
  u.append(pc);
  u.append(rdag);
  u.append(refl);
  u.append(r);
  u.append(pc);
  u.append(rdag);
  u.append(refl);
  u.append(r);
  return u;
}

Circuit buildControlledPi(int n, const QubitMap& map) {
  if (!map.qpe) throw ValidationError("map lacks a QPE qubit");
  Circuit lifted = liftControl(buildReflection(n), QubitId{0, n});
  return remapNonlocal(applyMap(lifted, map), map);
}

}  // namespace dqvqe
