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

#include "gruen/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "gruen/error.h"

namespace gruen {
namespace {

void CheckMasses(const std::vector<double>& v, const char* what) {
  if (v.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is empty");
  }
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " has a negative or non-finite mass");
    }
  }
}

double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// The basis is a spanning tree on m row nodes and n column nodes; node ids
// are rows 0..m-1 followed by columns m..m+n-1.
class Basis {
 public:
  Basis(std::size_t m, std::size_t n) : m_(m), n_(n), in_basis_(m * n, false) {}

  void Add(std::size_t cell) { in_basis_[cell] = true; }
  void Remove(std::size_t cell) { in_basis_[cell] = false; }
  bool Contains(std::size_t cell) const { return in_basis_[cell]; }

  // Solves u_i + v_j = c_ij over basic cells with u_0 = 0.
  void Potentials(const std::vector<double>& cost, std::vector<double>* u,
                  std::vector<double>* v) const {
    u->assign(m_, 0.0);
    v->assign(n_, 0.0);
    std::vector<bool> seen(m_ + n_, false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop();
      if (node < m_) {
        for (std::size_t j = 0; j < n_; ++j) {
          const std::size_t cell = node * n_ + j;
          if (!in_basis_[cell] || seen[m_ + j]) continue;
          (*v)[j] = cost[cell] - (*u)[node];
          seen[m_ + j] = true;
          queue.push(m_ + j);
        }
      } else {
        const std::size_t j = node - m_;
        for (std::size_t i = 0; i < m_; ++i) {
          const std::size_t cell = i * n_ + j;
          if (!in_basis_[cell] || seen[i]) continue;
          (*u)[i] = cost[cell] - (*v)[j];
          seen[i] = true;
          queue.push(i);
        }
      }
    }
  }

  // Basic cells on the tree path from row `row` to column `col`, in order.
  std::vector<std::size_t> Path(std::size_t row, std::size_t col) const {
    const std::size_t target = m_ + col;
    std::vector<std::size_t> parent(m_ + n_, kNone);
    std::vector<std::size_t> via(m_ + n_, kNone);
    std::queue<std::size_t> queue;
    queue.push(row);
    parent[row] = row;
    while (!queue.empty() && parent[target] == kNone) {
      const std::size_t node = queue.front();
      queue.pop();
      for (std::size_t k = 0; k < (node < m_ ? n_ : m_); ++k) {
        const std::size_t next = node < m_ ? m_ + k : k;
        const std::size_t cell =
            node < m_ ? node * n_ + k : k * n_ + (node - m_);
        if (!in_basis_[cell] || parent[next] != kNone) continue;
        parent[next] = node;
        via[next] = cell;
        queue.push(next);
      }
    }
    if (parent[target] == kNone) {
      throw Error(ErrorCode::kInference, "transport basis is not connected");
    }
    std::vector<std::size_t> cells;
    for (std::size_t node = target; node != row; node = parent[node]) {
      cells.push_back(via[node]);
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t m_;
  std::size_t n_;
  std::vector<bool> in_basis_;
};

}  // namespace

TransportSolution SolveTransport(const std::vector<double>& supply,
                                 const std::vector<double>& demand,
                                 const std::vector<double>& cost) {
  CheckMasses(supply, "supply");
  CheckMasses(demand, "demand");
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (cost.size() != m * n) {
    throw Error(ErrorCode::kInvalidArgument, "cost matrix has the wrong size");
  }
  double max_cost = 0.0;
  for (double c : cost) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite transport cost");
    }
    max_cost = std::max(max_cost, std::fabs(c));
  }
  const double total = Sum(supply);
  if (std::fabs(total - Sum(demand)) > 1e-9 * std::max(1.0, total)) {
    throw Error(ErrorCode::kInvalidArgument, "supply and demand totals differ");
  }

  TransportSolution sol;
  sol.flow.assign(m * n, 0.0);
  Basis basis(m, n);

  // Northwest corner: exactly m + n - 1 cells, some possibly carrying zero.
  {
    std::vector<double> s = supply;
    std::vector<double> d = demand;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
      const double x = std::min(s[i], d[j]);
      sol.flow[i * n + j] = x;
      basis.Add(i * n + j);
      s[i] -= x;
      d[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (s[i] == 0.0) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const double tolerance = 1e-12 * std::max(1.0, max_cost);
  const int max_iterations = 50 * static_cast<int>((m + n) * (m + n)) + 1000;
  std::vector<double> u, v;
  while (true) {
    basis.Potentials(cost, &u, &v);
    std::size_t entering = m * n;
    for (std::size_t cell = 0; cell < m * n; ++cell) {
      if (basis.Contains(cell)) continue;
      const double reduced = cost[cell] - u[cell / n] - v[cell % n];
      if (reduced < -tolerance) {
        entering = cell;
        break;
      }
    }
    if (entering == m * n) break;
    if (++sol.iterations > max_iterations) {
      throw Error(ErrorCode::kInference, "transport simplex did not converge");
    }
    // The cycle is the entering cell (+) followed by the tree path from its
    // row to its column, alternating - and +.
    const std::vector<std::size_t> path = basis.Path(entering / n, entering % n);
    std::size_t leaving = m * n;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const std::size_t cell = path[k];
      if (sol.flow[cell] < theta || (sol.flow[cell] == theta && cell < leaving)) {
        theta = sol.flow[cell];
        leaving = cell;
      }
    }
    sol.flow[entering] = theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
      sol.flow[path[k]] += (k % 2 == 0) ? -theta : theta;
    }
    sol.flow[leaving] = 0.0;
    basis.Remove(leaving);
    basis.Add(entering);
  }

  for (std::size_t cell = 0; cell < m * n; ++cell) {
    if (sol.flow[cell] < 0.0) sol.flow[cell] = 0.0;
    sol.cost += sol.flow[cell] * cost[cell];
  }
  return sol;
}

}  // namespace gruen
