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

#ifndef CISDC_PROBLEMS_LINEAR_HPP_
#define CISDC_PROBLEMS_LINEAR_HPP_

#include "cisdc/operator_split.hpp"

namespace cisdc {

//! Coefficients of the scalar model problem phi' = (a + d + r) phi.
struct StiffnessTriple {
  double a = 0.0;
  double d = 0.0;
  double r = 0.0;
  double sum() const { return a + d + r; }
};

//! phi' = a*phi + d*phi + r*phi with split evaluations and exact stage solves.
class LinearScalarProblem final : public OperatorSplitProblem {
 public:
  explicit LinearScalarProblem(const StiffnessTriple& triple, double phi0 = 1.0)
      : triple_(triple), phi0_(phi0) {}

  const StiffnessTriple& triple() const { return triple_; }
  double initial_value() const { return phi0_; }

  std::size_t dimension() const override { return 1; }
  void eval_advection(std::span<const double> phi, std::span<double> out) const override;
  void eval_diffusion(std::span<const double> phi, std::span<double> out) const override;
  void eval_reaction(std::span<const double> phi, std::span<double> out) const override;
  void solve_diffusion(double coef, std::span<const double> rhs, std::span<double> out) const override;
  void solve_reaction(double coef, std::span<const double> rhs, std::span<double> out) const override;
  bool has_coupled_solve() const override { return true; }
  void solve_coupled(double coef, std::span<const double> rhs, std::span<double> out) const override;

 private:
  StiffnessTriple triple_;
  double phi0_;
};

}  // namespace cisdc

#endif  // CISDC_PROBLEMS_LINEAR_HPP_
