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

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "dqvqe/simulate.hpp"

using namespace dqvqe;

namespace {

std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Amp> randomState(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Amp> s(size_t{1} << n);
  double norm = 0.0;
  for (Amp& a : s) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (Amp& a : s) a /= norm;
  return s;
}

}  // namespace

TEST_CASE("parseHamiltonian reads coefficient string pairs") {
  PauliHamiltonian h = parseHamiltonian("1.0 ZZ\n0.5 XI\n");
  REQUIRE(h.terms.size() == 2);
  CHECK(h.qubitCount() == 2);
  CHECK(h.terms[0].coeff == doctest::Approx(1.0));
  CHECK(h.terms[1].string.ops == "XI");
}

TEST_CASE("the H2 fixture has 15 terms over 4 qubits") {
  PauliHamiltonian h = parseHamiltonian(readFixture("h2_bk.txt"));
  CHECK(h.terms.size() == 15);
  CHECK(h.qubitCount() == 4);
}

TEST_CASE("parseHamiltonian rejects malformed input") {
  CHECK_THROWS_AS(parseHamiltonian("1.0 XY\n1.0 XYZ\n"), ParseError);
  CHECK_THROWS_AS(parseHamiltonian("1.0 XQ\n"), ParseError);
  CHECK_THROWS_AS(parseHamiltonian("abc ZZ\n"), ParseError);
  CHECK_THROWS_AS(parseHamiltonian(""), ParseError);
}

TEST_CASE("parse then serialize round-trips") {
  const std::string text = readFixture("h2_bk.txt");
  PauliHamiltonian h = parseHamiltonian(text);
  PauliHamiltonian again = parseHamiltonian(serializeHamiltonian(h));
  REQUIRE(again.terms.size() == h.terms.size());
  for (size_t i = 0; i < h.terms.size(); ++i) {
    CHECK(again.terms[i].coeff == h.terms[i].coeff);
    CHECK(again.terms[i].string.ops == h.terms[i].string.ops);
  }
}

TEST_CASE("exactGroundEnergy on single-term instances") {
  CHECK(exactGroundEnergy(parseHamiltonian("1.0 Z\n")) ==
        doctest::Approx(-1.0));
  CHECK(exactGroundEnergy(parseHamiltonian("0.25 II\n")) ==
        doctest::Approx(0.25));
}

TEST_CASE("exactGroundEnergy of ZZ plus XI") {
  // Dense 4x4 eigensolve: blocks [[1,.5],[.5,-1]] give -sqrt(1.25).
  double e = exactGroundEnergy(parseHamiltonian("1.0 ZZ\n0.5 XI\n"));
  CHECK(e == doctest::Approx(-std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("exactGroundEnergy rejects large instances") {
  PauliHamiltonian h;
  h.terms.push_back({1.0, PauliString{std::string(13, 'Z')}});
  CHECK_THROWS_AS(exactGroundEnergy(h), ValidationError);
}

TEST_CASE("expectation on eigenstates") {
  std::vector<Amp> zero = {1.0, 0.0};
  CHECK(expectation(parseHamiltonian("1.0 Z\n"), zero) == doctest::Approx(1.0));
  std::vector<Amp> plus = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(expectation(parseHamiltonian("1.0 X\n"), plus) == doctest::Approx(1.0));
}

TEST_CASE("expectation matches a dense matrix-element oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    PauliHamiltonian h;
    std::uniform_real_distribution<double> cd(-2.0, 2.0);
    const char* alphabet = "IXYZ";
    std::uniform_int_distribution<int> pd(0, 3);
    for (int term = 0; term < 4; ++term) {
      std::string s;
      for (int q = 0; q < 3; ++q) s.push_back(alphabet[pd(rng)]);
      h.terms.push_back({cd(rng), PauliString{s}});
    }
    auto psi = randomState(rng, 3);
    // Oracle: <psi|H|psi> assembled by explicit Pauli application.
    Amp acc = 0.0;
    for (const PauliTerm& t : h.terms) {
      auto hp = applyPauli(t.string, psi);
      for (size_t i = 0; i < psi.size(); ++i)
        acc += t.coeff * std::conj(psi[i]) * hp[i];
    }
    CHECK(expectation(h, psi) == doctest::Approx(acc.real()).epsilon(1e-10));
    CHECK(std::abs(acc.imag()) < 1e-10);
  }
}

TEST_CASE("expectation never undercuts the ground energy") {
  std::mt19937_64 rng(9);
  PauliHamiltonian h = parseHamiltonian("1.0 ZZ\n0.5 XI\n-0.7 YY\n");
  double ground = exactGroundEnergy(h);
  for (int trial = 0; trial < 50; ++trial) {
    auto psi = randomState(rng, 2);
    CHECK(expectation(h, psi) >= ground - 1e-9);
  }
}

TEST_CASE("expectation is linear in coefficients") {
  std::mt19937_64 rng(13);
  auto psi = randomState(rng, 2);
  PauliHamiltonian a = parseHamiltonian("1.0 ZZ\n");
  PauliHamiltonian b = parseHamiltonian("1.0 XY\n");
  PauliHamiltonian sum = parseHamiltonian("2.0 ZZ\n-3.0 XY\n");
  CHECK(expectation(sum, psi) ==
        doctest::Approx(2.0 * expectation(a, psi) - 3.0 * expectation(b, psi))
            .epsilon(1e-12));
}

TEST_CASE("expectation rejects a dimension mismatch") {
  std::vector<Amp> s = {1.0, 0.0};
  CHECK_THROWS_AS(expectation(parseHamiltonian("1.0 ZZ\n"), s),
                  ValidationError);
}
