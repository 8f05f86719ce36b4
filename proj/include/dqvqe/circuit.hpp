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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqvqe {

/// Error raised when a circuit, schedule, or input file violates a
/// structural precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error raised by the text-format parsers.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cluster-level address of a qubit: QPU index plus local index on that QPU.
/// Monolithic circuits use qpu 0 throughout.
struct QubitId {
  int qpu = 0;
  int local = 0;
  auto operator<=>(const QubitId&) const = default;
};

/// Sizes of the QPUs in a cluster, in qubits.
struct ClusterSpec {
  std::vector<int> qpuSizes;

  int qpuCount() const { return static_cast<int>(qpuSizes.size()); }
  int totalQubits() const;
  bool contains(QubitId q) const;
};

ClusterSpec parseCluster(const std::string& text);

/// The closed single-qubit gate alphabet. R is the three-angle rotation
/// Rz(l3) * Ry(l2) * Rz(l1); ZAngle(a) is diag(1, exp(-i a)).
enum class GateName { X, Y, Z, H, Rx, Ry, Rz, R, ZAngle };

enum class GateKind {
  Unitary,               // single-qubit gate, possibly with control qubits
  Measure,               // Z-basis measurement into a classical register
  ClassicallyControlled, // single-qubit gate applied iff a register bit is 1
  EntGen,                // Bell-pair generation on two communication qubits
  ClassicalComm,         // register transmission between two QPUs
};

/// One circuit element. The fields used depend on `kind`; see the factory
/// functions below for the valid combinations.
struct Gate {
  GateKind kind = GateKind::Unitary;
  GateName name = GateName::X;
  std::vector<double> params;
  std::vector<QubitId> controls;  // Unitary only; may hold 0..2 entries
  QubitId target;                 // Unitary / Measure / ClassicallyControlled
  int reg = -1;                   // Measure dest, CC condition, comm register
  QubitId entA, entB;             // EntGen endpoints
  int fromQpu = -1, toQpu = -1;   // ClassicalComm direction

  bool isUnitary() const { return kind == GateKind::Unitary; }
  bool isControlled() const { return isUnitary() && !controls.empty(); }
  /// Every qubit the gate touches, controls first.
  std::vector<QubitId> qubits() const;
  /// Lowest (qpu, local) qubit touched; EntGen uses entA, ClassicalComm
  /// has no qubits and sorts by (fromQpu, -1).
  QubitId sortKey() const;
  /// Adjoint of a unitary gate (rotation angles negated). Throws for
  /// non-unitary kinds.
  Gate adjoint() const;
};

Gate makeSingle(GateName name, QubitId target, std::vector<double> params = {});
Gate makeControlled(GateName name, QubitId control, QubitId target,
                    std::vector<double> params = {});
Gate makeMeasure(QubitId target, int reg);
Gate makeClassicallyControlled(GateName name, int reg, QubitId target,
                               std::vector<double> params = {});
Gate makeEntGen(QubitId a, QubitId b);
Gate makeClassicalComm(int fromQpu, int toQpu, int reg);

using Layer = std::vector<Gate>;

/// Layered circuit: an ordered list of layers, each a set of gates on
/// disjoint qubits. Iteration order within a layer is deterministic
/// (sorted by the lowest qubit touched).
struct Circuit {
  int qubitCount = 0;  // data qubits, for monolithic addressing
  std::vector<Layer> layers;

  bool empty() const { return layers.empty(); }
  std::vector<Gate> flatten() const;
  /// Highest classical register id referenced, or -1.
  int maxRegister() const;
  void appendLayer(Layer layer);
  /// Concatenates another circuit's layers after this one's.
  void append(const Circuit& other);
};

/// Greedy ASAP layering: each gate goes to the earliest layer after every
/// gate sharing one of its qubits or classical registers.
Circuit layerize(const std::vector<Gate>& gates, int qubitCount);

/// Adjoint of a unitary-only circuit: layers reversed, each gate replaced
/// by its adjoint. Throws ValidationError on non-unitary gates.
Circuit dagger(const Circuit& c);

/// Adds `ctl` as an additional control to every gate of a unitary-only
/// circuit. Throws if ctl already appears in the circuit.
Circuit liftControl(const Circuit& c, QubitId ctl);

/// Checks all qubit ids against a cluster and the one-gate-per-qubit-per-
/// layer rule; throws ValidationError on violation.
void validateCircuit(const Circuit& c, const ClusterSpec& cluster);

/// Line-oriented text format: header "qubits <n>", then one gate per line
/// (e.g. "h 0:1", "cx 0:1 1:0", "measure 0:1 -> c0", "entgen 0:4 1:4",
/// "ccomm 0 -> 1 c3", "ifc c0 x 0:1"). '#' starts a comment.
Circuit parseCircuit(const std::string& text);
std::string serializeCircuit(const Circuit& c);

/// A circuit template whose rotation angles may be "$k" placeholders.
/// bind() substitutes a parameter vector and parses the result.
class ParamCircuit {
 public:
  static ParamCircuit parse(const std::string& text);
  Circuit bind(const std::vector<double>& params) const;
  int paramCount() const { return paramCount_; }
  int qubitCount() const { return qubitCount_; }

 private:
  std::string text_;
  int paramCount_ = 0;
  int qubitCount_ = 0;
};

}  // namespace dqvqe
