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

#include "dqvqe/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dqvqe {

int ClusterSpec::totalQubits() const {
  return std::accumulate(qpuSizes.begin(), qpuSizes.end(), 0);
}

bool ClusterSpec::contains(QubitId q) const {
  return q.qpu >= 0 && q.qpu < qpuCount() && q.local >= 0 &&
         q.local < qpuSizes[q.qpu];
}

ClusterSpec parseCluster(const std::string& text) {
  ClusterSpec spec;
  std::string tok;
  for (char ch : text) {
    if (ch == ',' || ch == '\n' || ch == ' ') {
      if (!tok.empty()) {
        spec.qpuSizes.push_back(std::stoi(tok));
        tok.clear();
      }
    } else {
      tok.push_back(ch);
    }
  }
  if (!tok.empty()) spec.qpuSizes.push_back(std::stoi(tok));
  if (spec.qpuSizes.empty())
    throw ParseError("cluster file holds no QPU sizes");
  for (int q : spec.qpuSizes)
    if (q < 1) throw ParseError("QPU sizes must be positive");
  return spec;
}

std::vector<QubitId> Gate::qubits() const {
  switch (kind) {
    case GateKind::Unitary: {
      std::vector<QubitId> out = controls;
      out.push_back(target);
      return out;
    }
    case GateKind::Measure:
    case GateKind::ClassicallyControlled:
      return {target};
    case GateKind::EntGen:
      return {entA, entB};
    case GateKind::ClassicalComm:
      return {};
  }
  return {};
}

QubitId Gate::sortKey() const {
  if (kind == GateKind::ClassicalComm) return QubitId{fromQpu, -1};
  auto qs = qubits();
  return *std::min_element(qs.begin(), qs.end());
}

Gate Gate::adjoint() const {
  if (kind != GateKind::Unitary)
    throw ValidationError("adjoint of non-unitary gate");
  Gate g = *this;
  switch (name) {
    case GateName::X:
    case GateName::Y:
    case GateName::Z:
    case GateName::H:
      break;
    case GateName::Rx:
    case GateName::Ry:
    case GateName::Rz:
    case GateName::ZAngle:
      g.params[0] = -g.params[0];
      break;
    case GateName::R:
      // (Rz(l3) Ry(l2) Rz(l1))^dagger = Rz(-l1) Ry(-l2) Rz(-l3)
      g.params = {-params[2], -params[1], -params[0]};
      break;
  }
  return g;
}

namespace {

int paramArity(GateName name) {
  switch (name) {
    case GateName::Rx:
    case GateName::Ry:
    case GateName::Rz:
    case GateName::ZAngle:
      return 1;
    case GateName::R:
      return 3;
    default:
      return 0;
  }
}

void checkParams(GateName name, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != paramArity(name))
    throw ValidationError("wrong parameter count for gate");
}

}  // namespace

Gate makeSingle(GateName name, QubitId target, std::vector<double> params) {
  checkParams(name, params);
  Gate g;
  g.kind = GateKind::Unitary;
  g.name = name;
  g.params = std::move(params);
  g.target = target;
  return g;
}

Gate makeControlled(GateName name, QubitId control, QubitId target,
                    std::vector<double> params) {
  if (control == target)
    throw ValidationError("controlled gate with control == target");
  Gate g = makeSingle(name, target, std::move(params));
  g.controls = {control};
  return g;
}

Gate makeMeasure(QubitId target, int reg) {
  Gate g;
  g.kind = GateKind::Measure;
  g.target = target;
  g.reg = reg;
  return g;
}

Gate makeClassicallyControlled(GateName name, int reg, QubitId target,
                               std::vector<double> params) {
  checkParams(name, params);
  Gate g;
  g.kind = GateKind::ClassicallyControlled;
  g.name = name;
  g.params = std::move(params);
  g.target = target;
  g.reg = reg;
  return g;
}

Gate makeEntGen(QubitId a, QubitId b) {
  if (a == b) throw ValidationError("entgen endpoints must differ");
  Gate g;
  g.kind = GateKind::EntGen;
  g.entA = a;
  g.entB = b;
  return g;
}

Gate makeClassicalComm(int fromQpu, int toQpu, int reg) {
  Gate g;
  g.kind = GateKind::ClassicalComm;
  g.fromQpu = fromQpu;
  g.toQpu = toQpu;
  g.reg = reg;
  return g;
}

std::vector<Gate> Circuit::flatten() const {
  std::vector<Gate> out;
  for (const Layer& layer : layers)
    out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

int Circuit::maxRegister() const {
  int m = -1;
  for (const Layer& layer : layers)
    for (const Gate& g : layer) m = std::max(m, g.reg);
  return m;
}

namespace {

void sortLayer(Layer& layer) {
  std::stable_sort(layer.begin(), layer.end(),
                   [](const Gate& a, const Gate& b) {
                     return a.sortKey() < b.sortKey();
                   });
}

}  // namespace

void Circuit::appendLayer(Layer layer) {
  if (layer.empty()) return;
  sortLayer(layer);
  layers.push_back(std::move(layer));
}

void Circuit::append(const Circuit& other) {
  for (const Layer& layer : other.layers) layers.push_back(layer);
  qubitCount = std::max(qubitCount, other.qubitCount);
}

Circuit layerize(const std::vector<Gate>& gates, int qubitCount) {
  Circuit c;
  c.qubitCount = qubitCount;
  std::map<QubitId, size_t> qubitFree;  // earliest layer a qubit is free in
  std::map<int, size_t> regFree;
  for (const Gate& g : gates) {
    size_t at = 0;
    for (QubitId q : g.qubits()) {
      auto it = qubitFree.find(q);
      if (it != qubitFree.end()) at = std::max(at, it->second);
    }
    if (g.reg >= 0) {
      auto it = regFree.find(g.reg);
      if (it != regFree.end()) at = std::max(at, it->second);
    }
    while (c.layers.size() <= at) c.layers.emplace_back();
    c.layers[at].push_back(g);
    for (QubitId q : g.qubits()) qubitFree[q] = at + 1;
    if (g.reg >= 0) regFree[g.reg] = at + 1;
  }
  for (Layer& layer : c.layers) sortLayer(layer);
  return c;
}

Circuit dagger(const Circuit& c) {
  Circuit out;
  out.qubitCount = c.qubitCount;
  for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
    Layer layer;
    for (const Gate& g : *it) layer.push_back(g.adjoint());
    out.appendLayer(std::move(layer));
  }
  return out;
}

Circuit liftControl(const Circuit& c, QubitId ctl) {
  Circuit out;
  out.qubitCount = c.qubitCount;
  for (const Layer& layer : c.layers) {
    Layer lifted;
    for (const Gate& g : layer) {
      if (!g.isUnitary())
        throw ValidationError("liftControl requires a unitary circuit");
      for (QubitId q : g.qubits())
        if (q == ctl)
          throw ValidationError("control qubit collides with circuit qubit");
      Gate lg = g;
      lg.controls.insert(lg.controls.begin(), ctl);
      lifted.push_back(std::move(lg));
    }
    out.appendLayer(std::move(lifted));
  }
  return out;
}

void validateCircuit(const Circuit& c, const ClusterSpec& cluster) {
  for (const Layer& layer : c.layers) {
    std::set<QubitId> seen;
    for (const Gate& g : layer) {
      for (QubitId q : g.qubits()) {
        if (!cluster.contains(q))
          throw ValidationError("qubit id out of cluster range");
        if (!seen.insert(q).second)
          throw ValidationError("qubit used twice in one layer");
      }
      if (g.kind == GateKind::ClassicalComm) {
        if (g.fromQpu < 0 || g.fromQpu >= cluster.qpuCount() || g.toQpu < 0 ||
            g.toQpu >= cluster.qpuCount())
          throw ValidationError("classical comm QPU out of range");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

const std::pair<const char*, GateName> kGateNames[] = {
    {"x", GateName::X},   {"y", GateName::Y},   {"z", GateName::Z},
    {"h", GateName::H},   {"rx", GateName::Rx}, {"ry", GateName::Ry},
    {"rz", GateName::Rz}, {"r", GateName::R},   {"zangle", GateName::ZAngle},
};

std::optional<GateName> lookupGateName(const std::string& s) {
  for (auto& [txt, name] : kGateNames)
    if (s == txt) return name;
  return std::nullopt;
}

std::string gateNameText(GateName name) {
  for (auto& [txt, n] : kGateNames)
    if (n == name) return txt;
  return "?";
}

QubitId parseQubit(const std::string& tok) {
  auto colon = tok.find(':');
  try {
    if (colon == std::string::npos) return QubitId{0, std::stoi(tok)};
    return QubitId{std::stoi(tok.substr(0, colon)),
                   std::stoi(tok.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad qubit id: " + tok);
  }
}

int parseRegister(const std::string& tok) {
  if (tok.empty() || tok[0] != 'c')
    throw ParseError("bad register id: " + tok);
  try {
    return std::stoi(tok.substr(1));
  } catch (const std::exception&) {
    throw ParseError("bad register id: " + tok);
  }
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

double parseAngle(const std::string& tok) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError("bad angle: " + tok);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad angle: " + tok);
  }
}

Gate parseGateLine(const std::vector<std::string>& toks) {
  const std::string& head = toks[0];
  if (head == "measure") {
    // measure <q> -> <creg>
    if (toks.size() != 4 || toks[2] != "->")
      throw ParseError("measure expects: measure <q> -> c<k>");
    return makeMeasure(parseQubit(toks[1]), parseRegister(toks[3]));
  }
  if (head == "entgen") {
    if (toks.size() != 3) throw ParseError("entgen expects two qubits");
    return makeEntGen(parseQubit(toks[1]), parseQubit(toks[2]));
  }
  if (head == "ccomm") {
    // ccomm <fromQpu> -> <toQpu> c<k>
    if (toks.size() != 5 || toks[2] != "->")
      throw ParseError("ccomm expects: ccomm <from> -> <to> c<k>");
    return makeClassicalComm(std::stoi(toks[1]), std::stoi(toks[3]),
                             parseRegister(toks[4]));
  }
  if (head == "ifc") {
    // ifc c<k> <gate> <q> [params...]
    if (toks.size() < 4) throw ParseError("ifc expects: ifc c<k> <gate> <q>");
    auto name = lookupGateName(toks[2]);
    if (!name) throw ParseError("unknown gate name: " + toks[2]);
    std::vector<double> params;
    for (size_t i = 4; i < toks.size(); ++i)
      params.push_back(parseAngle(toks[i]));
    return makeClassicallyControlled(*name, parseRegister(toks[1]),
                                     parseQubit(toks[3]), std::move(params));
  }
  // Unitary gate, possibly with 'c' control prefixes (cx, ccx, crz, ...).
  size_t nControls = 0;
  std::string base = head;
  while (!lookupGateName(base) && !base.empty() && base[0] == 'c') {
    ++nControls;
    base.erase(base.begin());
  }
  auto name = lookupGateName(base);
  if (!name || nControls > 2)
    throw ParseError("unknown gate name: " + head);
  size_t nQubits = nControls + 1;
  size_t nParams = static_cast<size_t>(paramArity(*name));
  if (toks.size() != 1 + nQubits + nParams)
    throw ParseError("wrong argument count for gate: " + head);
  Gate g;
  g.kind = GateKind::Unitary;
  g.name = *name;
  for (size_t i = 0; i < nControls; ++i)
    g.controls.push_back(parseQubit(toks[1 + i]));
  g.target = parseQubit(toks[1 + nControls]);
  for (size_t i = 0; i < nParams; ++i)
    g.params.push_back(parseAngle(toks[1 + nQubits + i]));
  for (QubitId c : g.controls)
    if (c == g.target) throw ParseError("control equals target");
  return g;
}

}  // namespace

Circuit parseCircuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Gate> gates;
  int qubitCount = -1;
  while (std::getline(in, line)) {
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "qubits") {
      if (toks.size() != 2) throw ParseError("qubits header expects a count");
      qubitCount = std::stoi(toks[1]);
      if (qubitCount < 0) throw ParseError("negative qubit count");
      continue;
    }
    if (qubitCount < 0) throw ParseError("missing 'qubits <n>' header");
    gates.push_back(parseGateLine(toks));
  }
  if (qubitCount < 0) throw ParseError("missing 'qubits <n>' header");
  return layerize(gates, qubitCount);
}

namespace {

std::string qubitText(QubitId q) {
  return std::to_string(q.qpu) + ":" + std::to_string(q.local);
}

std::string angleText(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

}  // namespace

std::string serializeCircuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.qubitCount << "\n";
  for (const Layer& layer : c.layers) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case GateKind::Unitary: {
          for (size_t i = 0; i < g.controls.size(); ++i) out << 'c';
          out << gateNameText(g.name);
          for (QubitId q : g.controls) out << ' ' << qubitText(q);
          out << ' ' << qubitText(g.target);
          for (double p : g.params) out << ' ' << angleText(p);
          break;
        }
        case GateKind::Measure:
          out << "measure " << qubitText(g.target) << " -> c" << g.reg;
          break;
        case GateKind::ClassicallyControlled:
          out << "ifc c" << g.reg << ' ' << gateNameText(g.name) << ' '
              << qubitText(g.target);
          for (double p : g.params) out << ' ' << angleText(p);
          break;
        case GateKind::EntGen:
          out << "entgen " << qubitText(g.entA) << ' ' << qubitText(g.entB);
          break;
        case GateKind::ClassicalComm:
          out << "ccomm " << g.fromQpu << " -> " << g.toQpu << " c" << g.reg;
          break;
      }
      out << "\n";
    }
  }
  return out.str();
}

ParamCircuit ParamCircuit::parse(const std::string& text) {
  ParamCircuit pc;
  pc.text_ = text;
  int maxParam = -1;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '$' && std::isdigit(static_cast<unsigned char>(text[i + 1])))
      maxParam = std::max(maxParam, std::atoi(text.c_str() + i + 1));
  }
  pc.paramCount_ = maxParam + 1;
  // Validate structure now by binding zeros.
  Circuit probe = pc.bind(std::vector<double>(pc.paramCount_, 0.0));
  pc.qubitCount_ = probe.qubitCount;
  return pc;
}

Circuit ParamCircuit::bind(const std::vector<double>& params) const {
  if (static_cast<int>(params.size()) != paramCount_)
    throw ValidationError("parameter count mismatch");
  std::string bound;
  bound.reserve(text_.size());
  for (size_t i = 0; i < text_.size();) {
    if (text_[i] == '$' && i + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[i + 1]))) {
      size_t j = i + 1;
      while (j < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[j])))
        ++j;
      int idx = std::atoi(text_.substr(i + 1, j - i - 1).c_str());
      bound += angleText(params[idx]);
      i = j;
    } else {
      bound.push_back(text_[i++]);
    }
  }
  return parseCircuit(bound);
}

}  // namespace dqvqe
