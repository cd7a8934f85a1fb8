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

#include "cisdc/problems/linear.hpp"

namespace cisdc {

void LinearScalarProblem::eval_advection(std::span<const double> phi, std::span<double> out) const {
  out[0] = triple_.a * phi[0];
}

void LinearScalarProblem::eval_diffusion(std::span<const double> phi, std::span<double> out) const {
  out[0] = triple_.d * phi[0];
}

void LinearScalarProblem::eval_reaction(std::span<const double> phi, std::span<double> out) const {
  out[0] = triple_.r * phi[0];
}

void LinearScalarProblem::solve_diffusion(double coef, std::span<const double> rhs,
                                          std::span<double> out) const {
  const double denom = 1.0 - coef * triple_.d;
  if (denom == 0.0) throw SolveError("LinearScalarProblem: singular diffusion stage");
  out[0] = rhs[0] / denom;
}

void LinearScalarProblem::solve_reaction(double coef, std::span<const double> rhs,
                                         std::span<double> out) const {
  const double denom = 1.0 - coef * triple_.r;
  if (denom == 0.0) throw SolveError("LinearScalarProblem: singular reaction stage");
  out[0] = rhs[0] / denom;
}

void LinearScalarProblem::solve_coupled(double coef, std::span<const double> rhs,
                                        std::span<double> out) const {
  const double denom = 1.0 - coef * (triple_.d + triple_.r);
  if (denom == 0.0) throw SolveError("LinearScalarProblem: singular coupled stage");
  out[0] = rhs[0] / denom;
}

}  // namespace cisdc
