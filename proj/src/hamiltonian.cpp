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

#include "dqvqe/hamiltonian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dqvqe {

PauliHamiltonian parseHamiltonian(const std::string& text) {
  PauliHamiltonian h;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coeffTok, strTok;
    if (!(ls >> coeffTok)) continue;
    if (!(ls >> strTok)) throw ParseError("missing Pauli string: " + line);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens: " + line);
    double coeff;
    try {
      size_t used = 0;
      coeff = std::stod(coeffTok, &used);
      if (used != coeffTok.size()) throw std::invalid_argument(coeffTok);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient: " + coeffTok);
    }
    if (!std::isfinite(coeff)) throw ParseError("non-finite coefficient");
    for (char c : strTok)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw ParseError(std::string("bad Pauli character: ") + c);
    if (!h.terms.empty() && h.terms.front().string.size() !=
                                static_cast<int>(strTok.size()))
      throw ParseError("inconsistent Pauli string lengths");
    h.terms.push_back({coeff, PauliString{strTok}});
  }
  if (h.terms.empty()) throw ParseError("Hamiltonian holds no terms");
  return h;
}

std::string serializeHamiltonian(const PauliHamiltonian& h) {
  std::ostringstream out;
  for (const PauliTerm& t : h.terms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", t.coeff);
    out << buf << ' ' << t.string.ops << "\n";
  }
  return out.str();
}

std::vector<std::complex<double>> applyPauli(
    const PauliString& p, const std::vector<std::complex<double>>& state) {
  const int n = p.size();
  const size_t dim = size_t{1} << n;
  if (state.size() != dim)
    throw ValidationError("state dimension does not match Pauli length");
  std::vector<std::complex<double>> out(dim);
  // Qubit k is bit (n-1-k) of the index.
  size_t flipMask = 0;
  for (int k = 0; k < n; ++k)
    if (p.ops[k] == 'X' || p.ops[k] == 'Y')
      flipMask |= size_t{1} << (n - 1 - k);
  for (size_t i = 0; i < dim; ++i) {
    std::complex<double> phase = 1.0;
    for (int k = 0; k < n; ++k) {
      bool bit = (i >> (n - 1 - k)) & 1;
      switch (p.ops[k]) {
        case 'Y':
          // Y|0> = i|1>, Y|1> = -i|0>
          phase *= bit ? std::complex<double>(0, -1)
                       : std::complex<double>(0, 1);
          break;
        case 'Z':
          if (bit) phase = -phase;
          break;
        default:
          break;
      }
    }
    out[i ^ flipMask] = phase * state[i];
  }
  return out;
}

double pauliExpectation(const PauliString& p,
                        const std::vector<std::complex<double>>& state) {
  auto ps = applyPauli(p, state);
  std::complex<double> acc = 0.0;
  for (size_t i = 0; i < state.size(); ++i) acc += std::conj(state[i]) * ps[i];
  return acc.real();
}

double expectation(const PauliHamiltonian& h,
                   const std::vector<std::complex<double>>& state) {
  double acc = 0.0;
  for (const PauliTerm& t : h.terms)
    acc += t.coeff * pauliExpectation(t.string, state);
  return acc;
}

double exactGroundEnergy(const PauliHamiltonian& h) {
  const int n = h.qubitCount();
  if (n > 12) throw ValidationError("exactGroundEnergy limited to 12 qubits");
  const long dim = 1L << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<std::complex<double>> basis(dim);
  for (long col = 0; col < dim; ++col) {
    std::fill(basis.begin(), basis.end(), 0.0);
    basis[col] = 1.0;
    for (const PauliTerm& t : h.terms) {
      auto out = applyPauli(t.string, basis);
      for (long row = 0; row < dim; ++row) m(row, col) += t.coeff * out[row];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  return solver.eigenvalues().minCoeff();
}

}  // namespace dqvqe
