// Copyright 2026 The cisdc Authors
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

#include "cisdc/sweep_state.hpp"

#include <cmath>
#include <stdexcept>

namespace cisdc {

SweepState::SweepState(int M, std::size_t dim) : M_(M), dim_(dim) {
  if (M < 1) throw std::invalid_argument("SweepState: M must be >= 1");
  if (dim == 0) throw std::invalid_argument("SweepState: dimension must be positive");
  phi.assign(M + 1, NodeVector(dim, 0.0));
  fa.assign(M + 1, NodeVector(dim, 0.0));
  fd.assign(M + 1, NodeVector(dim, 0.0));
  fr.assign(M + 1, NodeVector(dim, 0.0));
  phi_ad.assign(M + 1, NodeVector(dim, 0.0));
}

void SweepState::initialize(const OperatorSplitProblem& problem, std::span<const double> phi0) {
  if (phi0.size() != dim_) throw std::invalid_argument("SweepState::initialize: dimension mismatch");
  NodeVector a(dim_), d(dim_), r(dim_);
  problem.eval_advection(phi0, a);
  problem.eval_diffusion(phi0, d);
  problem.eval_reaction(phi0, r);
  for (int m = 0; m <= M_; ++m) {
    phi[m].assign(phi0.begin(), phi0.end());
    fa[m] = a;
    fd[m] = d;
    fr[m] = r;
  }
}

void SweepState::set_node_values(const OperatorSplitProblem& problem,
                                 const std::vector<NodeVector>& values) {
  if (static_cast<int>(values.size()) != M_ + 1)
    throw std::invalid_argument("SweepState::set_node_values: node count mismatch");
  for (int m = 0; m <= M_; ++m) {
    if (values[m].size() != dim_)
      throw std::invalid_argument("SweepState::set_node_values: dimension mismatch");
    phi[m] = values[m];
    problem.eval_advection(phi[m], fa[m]);
    problem.eval_diffusion(phi[m], fd[m]);
    problem.eval_reaction(phi[m], fr[m]);
  }
}

double increment_norm(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("increment_norm: size mismatch");
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

}  // namespace cisdc
