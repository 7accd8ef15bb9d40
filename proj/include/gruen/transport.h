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

#ifndef GRUEN_TRANSPORT_H_
#define GRUEN_TRANSPORT_H_

#include <cstddef>
#include <vector>

namespace gruen {

struct TransportSolution {
  double cost = 0.0;
  // Row-major supply.size() x demand.size() flow matrix.
  std::vector<double> flow;
  int iterations = 0;
};

// Exact minimum-cost transport between two non-negative mass vectors with
// equal totals, solved with the transportation simplex (northwest-corner
// start, MODI potentials, Bland's rule against cycling). `cost` is row-major
// supply.size() x demand.size().
// Errors: kInvalidArgument for empty, negative, non-finite or unbalanced
// inputs; kInference if the iteration guard trips.
TransportSolution SolveTransport(const std::vector<double>& supply,
                                 const std::vector<double>& demand,
                                 const std::vector<double>& cost);

}  // namespace gruen

#endif  // GRUEN_TRANSPORT_H_
