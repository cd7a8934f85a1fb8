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

#ifndef CISDC_PROBLEMS_REACTION_DIFFUSION_HPP_
#define CISDC_PROBLEMS_REACTION_DIFFUSION_HPP_

#include <array>
#include <string>
#include <vector>

#include "cisdc/operator_split.hpp"

namespace cisdc {

using FieldVector = std::vector<double>;

//! Uniform finite-volume grid on [0,20] for the nonlinear test PDE
//!   phi_t = a phi_x + d phi_xx + r phi (phi-1)(phi-1/2),
//! with Dirichlet data phi(0)=1, phi(20)=0. Cell values are point values at
//! cell centers; two ghost cells per side are filled by a quartic through
//! the boundary face value and the first four interior cells.
struct ReactionDiffusionGrid {
  ReactionDiffusionGrid(int n_x, double a, double d, double r);

  int n_x = 0;
  double dx = 0.0;
  double a = 0.0, d = 0.0, r = 0.0;
  double phi_left = 1.0;
  double phi_right = 0.0;

  static constexpr double x_left = 0.0;
  static constexpr double x_right = 20.0;
  static constexpr int ghost_depth = 2;

  double cell_center(int i) const { return x_left + (i + 0.5) * dx; }

  //! Ghost-fill weights: ghost value = w[0]*face + sum w[1..4]*phi(first 4 cells).
  std::array<std::array<double, 5>, 2> ghost_weights{};

  //! Field extended by two ghost cells per side (size n_x + 4).
  void fill_ghosts(std::span<const double> phi, std::vector<double>& ext) const;
};

//! phi^0(x) = (1 + tanh(20 - 2x)) / 2 at the cell centers.
FieldVector initial_condition(const ReactionDiffusionGrid& grid);

//! Fourth-order centered first derivative times a. Throws for n_x < 5.
FieldVector advection_operator(std::span<const double> field, const ReactionDiffusionGrid& grid);

//! Fourth-order centered second derivative times d.
FieldVector laplacian_operator(std::span<const double> field, const ReactionDiffusionGrid& grid);

//! Pointwise cubic r*phi*(phi-1)*(phi-1/2).
FieldVector reaction_term(std::span<const double> field, double r);

//! Its derivative r*(3 phi^2 - 3 phi + 1/2).
FieldVector reaction_derivative(std::span<const double> field, double r);

//! Solves (I - coef*d*Lap) phi = rhs + boundary terms, i.e.
//! phi - coef*F_D(phi) = rhs with the ghost policy folded into a banded
//! system (bandwidth 3 at the boundary rows).
FieldVector solve_diffusion_implicit(double coef, std::span<const double> rhs,
                                     const ReactionDiffusionGrid& grid);

//! Per-cell scalar Newton solve of phi - coef*R(phi) = rhs_i, guess rhs_i.
//! A failing cell throws SolveError naming the cell index.
FieldVector solve_reaction_implicit(double coef, std::span<const double> rhs,
                                    const ReactionDiffusionGrid& grid);

//! Mean absolute difference (1/n) sum |a_i - b_i|.
double l1_error(std::span<const double> field, std::span<const double> reference);

//! OperatorSplitProblem adapter over the grid.
class ReactionDiffusionProblem final : public OperatorSplitProblem {
 public:
  explicit ReactionDiffusionProblem(const ReactionDiffusionGrid& grid) : grid_(grid) {}
  const ReactionDiffusionGrid& grid() const { return grid_; }

  std::size_t dimension() const override { return static_cast<std::size_t>(grid_.n_x); }
  void eval_advection(std::span<const double> phi, std::span<double> out) const override;
  void eval_diffusion(std::span<const double> phi, std::span<double> out) const override;
  void eval_reaction(std::span<const double> phi, std::span<double> out) const override;
  void solve_diffusion(double coef, std::span<const double> rhs, std::span<double> out) const override;
  void solve_reaction(double coef, std::span<const double> rhs, std::span<double> out) const override;

 private:
  ReactionDiffusionGrid grid_;
};

//! Field snapshot file: magic "SDC1", u32 n_x, f64 dx, then n_x doubles,
//! all little-endian.
void write_field_snapshot(const std::string& path, int n_x, double dx,
                          std::span<const double> data);

struct FieldSnapshot {
  int n_x = 0;
  double dx = 0.0;
  FieldVector data;
};

FieldSnapshot read_field_snapshot(const std::string& path);

}  // namespace cisdc

#endif  // CISDC_PROBLEMS_REACTION_DIFFUSION_HPP_
