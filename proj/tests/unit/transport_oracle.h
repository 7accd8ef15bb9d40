// Copyright 2026 The GRUEN Metric Authors.
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

#ifndef GRUEN_TESTS_UNIT_TRANSPORT_ORACLE_H_
#define GRUEN_TESTS_UNIT_TRANSPORT_ORACLE_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace gruen::testing {

// Minimum transport cost by enumerating every basic solution of the
// transportation polytope: each spanning tree on the m + n row and column
// nodes fixes a unique flow, and the optimum is attained at a feasible one.
// Exponential, intended for supports of at most 4 x 4.
inline double BruteForceTransportCost(const std::vector<double>& supply,
                                      const std::vector<double>& demand,
                                      const std::vector<double>& cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  const std::size_t cells = m * n;
  const std::size_t k = m + n - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> chosen;

  auto evaluate = [&]() {
    // Acyclic with m + n - 1 edges means spanning tree.
    std::vector<std::size_t> parent(m + n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t c : chosen) {
      const std::size_t a = find(c / n);
      const std::size_t b = find(m + c % n);
      if (a == b) return;
      parent[a] = b;
    }
    // Peel leaves: a node with one remaining edge fixes that edge's flow.
    std::vector<double> rest(m + n);
    for (std::size_t i = 0; i < m; ++i) rest[i] = supply[i];
    for (std::size_t j = 0; j < n; ++j) rest[m + j] = demand[j];
    std::vector<bool> used(chosen.size(), false);
    double total = 0.0;
    for (std::size_t round = 0; round < chosen.size(); ++round) {
      bool progressed = false;
      for (std::size_t node = 0; node < m + n && !progressed; ++node) {
        std::size_t degree = 0;
        std::size_t edge = 0;
        for (std::size_t e = 0; e < chosen.size(); ++e) {
          if (used[e]) continue;
          const std::size_t c = chosen[e];
          if (c / n == node || m + c % n == node) {
            ++degree;
            edge = e;
          }
        }
        if (degree != 1) continue;
        const double x = rest[node];
        if (x < -1e-12) return;
        const std::size_t c = chosen[edge];
        rest[c / n] -= x;
        rest[m + c % n] -= x;
        used[edge] = true;
        total += x * cost[c];
        progressed = true;
      }
      if (!progressed) return;
    }
    if (total < best) best = total;
  };

  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (chosen.size() == k) {
      evaluate();
      return;
    }
    for (std::size_t c = start; c + (k - chosen.size()) <= cells; ++c) {
      chosen.push_back(c);
      choose(c + 1);
      chosen.pop_back();
    }
  };
  choose(0);
  return best;
}

}  // namespace gruen::testing

#endif  // GRUEN_TESTS_UNIT_TRANSPORT_ORACLE_H_
