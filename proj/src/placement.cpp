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

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>

namespace dqvqe {

int AnsatzAllocation::qpuSpan() const {
  int span = 0;
  for (int x : perQpu)
    if (x > 0) ++span;
  return span;
}

int AnsatzAllocation::occupied(int j) const {
  int occ = perQpu[j] + (j == qpeQpu ? 1 : 0);
  // A split QPU reserves one pair of communication qubits, shared across
  // its links.
  for (auto& [a, b] : commPairs) {
    if (a == j || b == j) {
      occ += 2;
      break;
    }
  }
  return occ;
}

std::vector<std::string> validateAllocations(
    const ClusterSpec& cluster, int ansatzSize,
    const std::vector<AnsatzAllocation>& allocs) {
  std::vector<std::string> out;
  const int m = cluster.qpuCount();
  std::vector<int> used(m, 0);
  for (const AnsatzAllocation& a : allocs) {
    std::string tag = "ansatz " + std::to_string(a.pauliIndex) + ": ";
    if (static_cast<int>(a.perQpu.size()) != m) {
      out.push_back(tag + "perQpu length mismatch");
      continue;
    }
    int total = std::accumulate(a.perQpu.begin(), a.perQpu.end(), 0);
    if (total != ansatzSize)
      out.push_back(tag + "data qubit total " + std::to_string(total) +
                    " != " + std::to_string(ansatzSize));
    if (a.qpeQpu < 0 || a.qpeQpu >= m || a.perQpu[a.qpeQpu] <= 0)
      out.push_back(tag + "QPE qubit not co-located with Ansatz qubits");
    std::vector<int> span;
    for (int j = 0; j < m; ++j)
      if (a.perQpu[j] > 0) span.push_back(j);
    if (span.size() >= 2) {
      // Chain over the involved QPUs in index order.
      std::set<std::pair<int, int>> expect;
      for (size_t k = 0; k + 1 < span.size(); ++k)
        expect.insert({span[k], span[k + 1]});
      if (a.commPairs != expect)
        out.push_back(tag + "communication pairs do not chain the split");
    } else if (!a.commPairs.empty()) {
      out.push_back(tag + "single-QPU allocation reserves comm qubits");
    }
    for (int j = 0; j < m; ++j) used[j] += a.occupied(j);
  }
  for (int j = 0; j < m; ++j)
    if (used[j] > cluster.qpuSizes[j])
      out.push_back("QPU " + std::to_string(j) + " over capacity: " +
                    std::to_string(used[j]) + " > " +
                    std::to_string(cluster.qpuSizes[j]));
  return out;
}

std::vector<std::string> validatePlacement(const ClusterSpec& cluster,
                                           int ansatzSize, int paulis,
                                           const PlacementSchedule& s) {
  std::vector<std::string> out;
  std::vector<int> seen(paulis, 0);
  for (const auto& round : s.rounds) {
    auto v = validateAllocations(cluster, ansatzSize, round);
    out.insert(out.end(), v.begin(), v.end());
    for (const AnsatzAllocation& a : round) {
      if (a.pauliIndex < 0 || a.pauliIndex >= paulis)
        out.push_back("pauli index out of range: " +
                      std::to_string(a.pauliIndex));
      else
        ++seen[a.pauliIndex];
    }
  }
  for (int i = 0; i < paulis; ++i)
    if (seen[i] != 1)
      out.push_back("pauli " + std::to_string(i) + " placed " +
                    std::to_string(seen[i]) + " times");
  return out;
}

bool doesNotFit(const std::vector<int>& sortedCapacities, int n) {
  if (sortedCapacities.empty()) return true;
  if (sortedCapacities.front() - 1 >= n) return false;
  int reach = sortedCapacities.front() - 3;
  for (size_t j = 1; j < sortedCapacities.size(); ++j) {
    reach += sortedCapacities[j] - 2;
    if (reach >= n) return false;
  }
  return true;
}

namespace {

// QPU indices sorted by (capacity desc, index asc).
std::vector<int> byCapacity(const std::vector<int>& caps) {
  std::vector<int> order(caps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return caps[a] > caps[b]; });
  return order;
}

// Places one Ansatz on the remaining capacities, greedily: whole onto the
// largest QPU when it fits with its QPE qubit, otherwise split over the
// minimal prefix of QPUs in capacity order. Returns false if it cannot fit.
bool greedyPlaceOne(const std::vector<int>& qpuSizes, std::vector<int>& caps,
                    int n, int pauliIndex, AnsatzAllocation& out) {
  auto order = byCapacity(caps);
  out = AnsatzAllocation{};
  out.pauliIndex = pauliIndex;
  out.perQpu.assign(qpuSizes.size(), 0);
  if (caps[order[0]] >= n + 1) {
    int j = order[0];
    out.perQpu[j] = n;
    out.qpeQpu = j;
    caps[j] -= n + 1;
    return true;
  }
  // Split: first QPU reserves QPE + 2 comm, each later QPU 2 comm.
  int reach = 0;
  size_t k = 0;
  for (; k < order.size(); ++k) {
    int give = caps[order[k]] - (k == 0 ? 3 : 2);
    if (give <= 0) return false;
    reach += give;
    if (reach >= n) break;
  }
  if (reach < n) return false;
  std::vector<int> chosen(order.begin(), order.begin() + k + 1);
  int remaining = n;
  for (size_t i = 0; i < chosen.size(); ++i) {
    int j = chosen[i];
    int give = std::min(remaining, caps[j] - (i == 0 ? 3 : 2));
    out.perQpu[j] = give;
    remaining -= give;
  }
  out.qpeQpu = chosen[0];
  std::sort(chosen.begin(), chosen.end());
  for (size_t i = 0; i + 1 < chosen.size(); ++i)
    out.commPairs.insert({chosen[i], chosen[i + 1]});
  for (int j = 0; j < static_cast<int>(qpuSizes.size()); ++j)
    caps[j] -= out.occupied(j);
  return true;
}

}  // namespace

PlacementSchedule greedyDistribute(const ClusterSpec& cluster, int n, int p) {
  if (n < 1 || p < 1) throw ValidationError("need n >= 1 and p >= 1");
  PlacementSchedule s;
  int next = 0;
  while (next < p) {
    std::vector<int> caps = cluster.qpuSizes;
    std::vector<AnsatzAllocation> round;
    while (next < p) {
      AnsatzAllocation a;
      if (!greedyPlaceOne(cluster.qpuSizes, caps, n, next, a)) break;
      round.push_back(std::move(a));
      ++next;
    }
    if (round.empty())
      throw ValidationError("Ansatz of size " + std::to_string(n) +
                            " does not fit the cluster");
    s.rounds.push_back(std::move(round));
  }
  return s;
}

namespace {

struct Candidate {
  AnsatzAllocation alloc;
  int commQubits = 0;
};

// All placements of one n-qubit Ansatz on an m-QPU cluster, deterministic
// order: whole placements by QPU index, then chain splits by (QPU subset,
// composition, QPE choice).
std::vector<Candidate> enumerateCandidates(const ClusterSpec& cluster, int n) {
  const int m = cluster.qpuCount();
  std::vector<Candidate> cands;
  for (int j = 0; j < m; ++j) {
    if (cluster.qpuSizes[j] < n + 1) continue;
    Candidate c;
    c.alloc.perQpu.assign(m, 0);
    c.alloc.perQpu[j] = n;
    c.alloc.qpeQpu = j;
    cands.push_back(std::move(c));
  }
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> subset;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) subset.push_back(j);
    const int k = static_cast<int>(subset.size());
    if (k < 2) continue;
    // Compositions of n into k positive parts.
    std::vector<int> parts(k, 1);
    if (n < k) continue;
    parts[k - 1] = n - (k - 1);
    auto emit = [&](const std::vector<int>& ps) {
      for (int qpe : subset) {
        Candidate c;
        c.alloc.perQpu.assign(m, 0);
        for (int i = 0; i < k; ++i) c.alloc.perQpu[subset[i]] = ps[i];
        c.alloc.qpeQpu = qpe;
        for (int i = 0; i + 1 < k; ++i)
          c.alloc.commPairs.insert({subset[i], subset[i + 1]});
        c.commQubits = 4 * (k - 1);
        bool fits = true;
        for (int j : subset)
          if (c.alloc.occupied(j) > cluster.qpuSizes[j]) fits = false;
        if (fits) cands.push_back(std::move(c));
      }
    };
    // Iterate compositions in lexicographic order.
    std::vector<int> comp(k, 1);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k - 1) {
        if (left >= 1) {
          comp[pos] = left;
          emit(comp);
        }
        return;
      }
      for (int v = 1; v <= left - (k - 1 - pos); ++v) {
        comp[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, n);
  }
  return cands;
}

struct CpSearch {
  const ClusterSpec& cluster;
  const std::vector<Candidate>& cands;
  int m;
  std::vector<int> caps;
  std::vector<int> pick;
  int commSoFar = 0;
  int bestComm = -1;
  std::vector<int> bestPick;

  void dfs(int ansatz) {
    if (bestComm >= 0 && commSoFar >= bestComm) return;
    if (ansatz == m) {
      bestComm = commSoFar;
      bestPick = pick;
      return;
    }
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      const Candidate& c = cands[ci];
      bool fits = true;
      for (int j = 0; j < cluster.qpuCount(); ++j) {
        int occ = c.alloc.occupied(j);
        if (occ > caps[j]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (int j = 0; j < cluster.qpuCount(); ++j)
        caps[j] -= c.alloc.occupied(j);
      commSoFar += c.commQubits;
      pick[ansatz] = static_cast<int>(ci);
      dfs(ansatz + 1);
      commSoFar -= c.commQubits;
      for (int j = 0; j < cluster.qpuCount(); ++j)
        caps[j] += c.alloc.occupied(j);
    }
  }
};

}  // namespace

std::optional<std::vector<AnsatzAllocation>> cpDistribute(
    const ClusterSpec& cluster, int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("need n >= 1 and m >= 1");
  auto cands = enumerateCandidates(cluster, n);
  if (cands.empty()) return std::nullopt;
  CpSearch search{cluster, cands, m, cluster.qpuSizes,
                  std::vector<int>(m, -1), 0, -1, {}};
  search.dfs(0);
  if (search.bestComm < 0) return std::nullopt;
  std::vector<AnsatzAllocation> out;
  for (int i = 0; i < m; ++i) {
    AnsatzAllocation a = cands[search.bestPick[i]].alloc;
    a.pauliIndex = i;
    out.push_back(std::move(a));
  }
  return out;
}

PlacementSchedule cpSchedule(const ClusterSpec& cluster, int n, int p) {
  if (n < 1) throw ValidationError("need n >= 1");
  PlacementSchedule s;
  if (p == 0) return s;
  int next = 0;
  while (next < p) {
    int remaining = p - next;
    // Feasibility is monotone in m, so binary-search the largest round.
    int lo = 1, hi = std::min(remaining,
                              cluster.totalQubits() / (n + 1) + 1);
    if (!cpDistribute(cluster, n, 1))
      throw ValidationError("Ansatz of size " + std::to_string(n) +
                            " does not fit the cluster");
    std::optional<std::vector<AnsatzAllocation>> best =
        cpDistribute(cluster, n, lo);
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      auto r = cpDistribute(cluster, n, mid);
      if (r) {
        lo = mid;
        best = std::move(r);
      } else {
        hi = mid - 1;
      }
    }
    for (auto& a : *best) a.pauliIndex += next;
    next += lo;
    s.rounds.push_back(std::move(*best));
  }
  return s;
}

int maxAnsatzSize(const ClusterSpec& cluster) {
  const int n = cluster.qpuCount();
  if (n == 1) return cluster.qpuSizes[0] - 1;
  for (int q : cluster.qpuSizes)
    if (q <= 2)
      throw ValidationError("QPUs must hold more than 2 qubits when split");
  return cluster.totalQubits() - 2 * n - 1;
}

std::string placementToJson(const PlacementSchedule& s) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& round : s.rounds) {
    nlohmann::json jr = nlohmann::json::array();
    for (const AnsatzAllocation& a : round) {
      nlohmann::json pairs = nlohmann::json::array();
      for (auto& [x, y] : a.commPairs) pairs.push_back({x, y});
      jr.push_back({{"pauliIndex", a.pauliIndex},
                    {"perQpu", a.perQpu},
                    {"qpeQpu", a.qpeQpu},
                    {"commPairs", pairs}});
    }
    rounds.push_back(std::move(jr));
  }
  return nlohmann::json{{"rounds", rounds}}.dump(2) + "\n";
}

PlacementSchedule placementFromJson(const std::string& text) {
  PlacementSchedule s;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    for (const auto& jr : j.at("rounds")) {
      std::vector<AnsatzAllocation> round;
      for (const auto& ja : jr) {
        AnsatzAllocation a;
        a.pauliIndex = ja.at("pauliIndex").get<int>();
        a.perQpu = ja.at("perQpu").get<std::vector<int>>();
        a.qpeQpu = ja.at("qpeQpu").get<int>();
        for (const auto& jp : ja.at("commPairs"))
          a.commPairs.insert({jp.at(0).get<int>(), jp.at(1).get<int>()});
        round.push_back(std::move(a));
      }
      s.rounds.push_back(std::move(round));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad placement JSON: ") + e.what());
  }
  return s;
}

}  // namespace dqvqe
