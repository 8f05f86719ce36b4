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

#include "dqvqe/placement.hpp"

#include <doctest.h>

#include <numeric>

using namespace dqvqe;

TEST_CASE("doesNotFit arithmetic") {
  CHECK_FALSE(doesNotFit({10}, 9));
  CHECK(doesNotFit({3}, 3));
  CHECK_FALSE(doesNotFit({6, 6, 6}, 11));
  CHECK(doesNotFit({}, 1));
  CHECK(doesNotFit({6, 6, 6}, 12));
}

TEST_CASE("greedy places five whole copies on five 10-qubit QPUs") {
  ClusterSpec cluster{{10, 10, 10, 10, 10}};
  PlacementSchedule s = greedyDistribute(cluster, 9, 5);
  REQUIRE(s.roundCount() == 1);
  CHECK(s.rounds[0].size() == 5);
  for (const AnsatzAllocation& a : s.rounds[0]) {
    CHECK(a.qpuSpan() == 1);
    CHECK(a.commPairs.empty());
  }
  CHECK(validatePlacement(cluster, 9, 5, s).empty());
}

TEST_CASE("greedy on three 9-qubit QPUs runs 15 size-4 copies in 4 rounds") {
  ClusterSpec cluster{{9, 9, 9}};
  PlacementSchedule s = greedyDistribute(cluster, 4, 15);
  REQUIRE(s.roundCount() == 4);
  CHECK(s.rounds[0].size() == 4);
  CHECK(s.rounds[1].size() == 4);
  CHECK(s.rounds[2].size() == 4);
  CHECK(s.rounds[3].size() == 3);
  CHECK(validatePlacement(cluster, 4, 15, s).empty());
}

TEST_CASE("greedy rejects an impossible instance") {
  ClusterSpec cluster{{3}};
  CHECK_THROWS_AS(greedyDistribute(cluster, 5, 1), ValidationError);
}

TEST_CASE("cpDistribute fits four copies with exactly one split") {
  ClusterSpec cluster{{9, 9, 9}};
  auto allocs = cpDistribute(cluster, 4, 4);
  REQUIRE(allocs.has_value());
  CHECK(validateAllocations(cluster, 4, *allocs).empty());
  int whole = 0, split = 0;
  for (const AnsatzAllocation& a : *allocs)
    (a.qpuSpan() == 1 ? whole : split) += 1;
  CHECK(whole == 3);
  CHECK(split == 1);
}

TEST_CASE("cpDistribute single-QPU fit uses no communication qubits") {
  ClusterSpec cluster{{5}};
  auto allocs = cpDistribute(cluster, 4, 1);
  REQUIRE(allocs.has_value());
  CHECK((*allocs)[0].perQpu == std::vector<int>{4});
  CHECK((*allocs)[0].qpeQpu == 0);
  CHECK((*allocs)[0].commPairs.empty());
}

TEST_CASE("cpDistribute minimizes communication qubits on a forced split") {
  ClusterSpec cluster{{6, 6, 6}};
  auto allocs = cpDistribute(cluster, 11, 1);
  REQUIRE(allocs.has_value());
  CHECK((*allocs)[0].commQubitCount() == 8);
  CHECK(validateAllocations(cluster, 11, *allocs).empty());
}

TEST_CASE("cpDistribute reports infeasibility rather than throwing") {
  ClusterSpec cluster{{5}};
  CHECK_FALSE(cpDistribute(cluster, 5, 1).has_value());
  CHECK_FALSE(cpDistribute(cluster, 4, 2).has_value());
}

TEST_CASE("cp data placement is optimal against brute capacity counting") {
  // On small clusters the largest feasible m must match the arithmetic
  // bound obtained by trying every m ascending.
  for (ClusterSpec cluster :
       {ClusterSpec{{4, 4, 4}}, ClusterSpec{{6, 6}}, ClusterSpec{{5, 4, 3}}}) {
    for (int n = 1; n <= 4; ++n) {
      int bestDirect = 0;
      for (int m = 1; m <= 3; ++m)
        if (cpDistribute(cluster, n, m)) bestDirect = m;
      // Feasibility is monotone: everything below bestDirect works too.
      for (int m = 1; m <= bestDirect; ++m)
        CHECK(cpDistribute(cluster, n, m).has_value());
    }
  }
}

TEST_CASE("cpSchedule matches the 4-round reference instance") {
  ClusterSpec cluster{{9, 9, 9}};
  PlacementSchedule s = cpSchedule(cluster, 4, 15);
  REQUIRE(s.roundCount() == 4);
  CHECK(s.rounds[0].size() == 4);
  CHECK(s.rounds[3].size() == 3);
  CHECK(validatePlacement(cluster, 4, 15, s).empty());
}

TEST_CASE("cpSchedule saturating single QPU goes one per round") {
  ClusterSpec cluster{{10}};
  PlacementSchedule s = cpSchedule(cluster, 9, 3);
  REQUIRE(s.roundCount() == 3);
  for (const auto& round : s.rounds) CHECK(round.size() == 1);
}

TEST_CASE("cpSchedule with zero Paulis is empty") {
  ClusterSpec cluster{{10}};
  CHECK(cpSchedule(cluster, 9, 0).roundCount() == 0);
}

TEST_CASE("greedy never needs fewer rounds than cp on shared instances") {
  for (ClusterSpec cluster :
       {ClusterSpec{{9, 9, 9}}, ClusterSpec{{6, 6, 6}}, ClusterSpec{{10, 5}}}) {
    for (int n : {2, 3, 4}) {
      PlacementSchedule g = greedyDistribute(cluster, n, 6);
      PlacementSchedule c = cpSchedule(cluster, n, 6);
      CHECK(g.roundCount() >= c.roundCount());
      CHECK(validatePlacement(cluster, n, 6, g).empty());
      CHECK(validatePlacement(cluster, n, 6, c).empty());
    }
  }
}

TEST_CASE("maxAnsatzSize matches the capacity formula and plot points") {
  CHECK(maxAnsatzSize(ClusterSpec{{10}}) == 9);
  CHECK(maxAnsatzSize(ClusterSpec{{10, 10}}) == 15);
  CHECK(maxAnsatzSize(ClusterSpec{std::vector<int>(15, 10)}) == 119);
  CHECK(maxAnsatzSize(ClusterSpec{{50, 50}}) == 95);
  CHECK(maxAnsatzSize(ClusterSpec{{100}}) == 99);
  CHECK(maxAnsatzSize(ClusterSpec{std::vector<int>(15, 150)}) == 2219);
  CHECK_THROWS_AS(maxAnsatzSize(ClusterSpec{{2, 2}}), ValidationError);
}

TEST_CASE("placement JSON round-trips") {
  ClusterSpec cluster{{9, 9, 9}};
  PlacementSchedule s = greedyDistribute(cluster, 4, 15);
  PlacementSchedule again = placementFromJson(placementToJson(s));
  REQUIRE(again.roundCount() == s.roundCount());
  for (int r = 0; r < s.roundCount(); ++r) {
    REQUIRE(again.rounds[r].size() == s.rounds[r].size());
    for (size_t i = 0; i < s.rounds[r].size(); ++i) {
      CHECK(again.rounds[r][i].perQpu == s.rounds[r][i].perQpu);
      CHECK(again.rounds[r][i].qpeQpu == s.rounds[r][i].qpeQpu);
      CHECK(again.rounds[r][i].commPairs == s.rounds[r][i].commPairs);
    }
  }
}
