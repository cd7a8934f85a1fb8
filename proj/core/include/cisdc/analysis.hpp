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

#ifndef CISDC_ANALYSIS_HPP_
#define CISDC_ANALYSIS_HPP_

#include <vector>

#include "cisdc/integrators.hpp"
#include "cisdc/linalg.hpp"
#include "cisdc/problems/linear.hpp"
#include "cisdc/quadrature.hpp"

namespace cisdc {

//! Linear-plus-offset representation of a full node vector as a function of
//! (phi0, Phi^{(k)}): Phi_out = W * Phi^{(k)} + offset * phi0.
struct AffineMap {
  DenseMatrix W;               // M x M
  std::vector<double> offset;  // length M
};

struct IterationMatrixResult {
  DenseMatrix G;  // M x M
  double gamma = 0.0;
  Scheme scheme = Scheme::misdcq;
  int M = 0;
  int nu = 1;
  double dt = 0.0;
  StiffnessTriple triple;
};

//! Builds the iteration matrix G of one sweep on the linear model problem by
//! propagating affine maps in (phi0, Phi^{(k)}) through the exact update
//! equations of the chosen scheme. Throws SolveError when an implicit stage
//! factor 1 - kappa*dt*qI_{m+1,m+1} vanishes (singular stage).
IterationMatrixResult affine_iteration_matrix(
    Scheme scheme, const StiffnessTriple& triple, double dt, int M, int nu,
    EulerConvention convention = EulerConvention::literal);

//! Full affine sweep map (G plus the phi0 offset column) from the same
//! propagation.
AffineMap affine_sweep_map(Scheme scheme, const StiffnessTriple& triple, double dt, int M,
                           int nu, EulerConvention convention = EulerConvention::literal);

//! Empirical oracle for G: runs the actual sweep engine on the linear
//! problem with Phi^{(k)} = 0 and Phi^{(k)} = e_j (stored evaluations kept
//! consistent); column j of G is sweep(e_j) - sweep(0).
DenseMatrix probe_iteration_matrix(Scheme scheme, const StiffnessTriple& triple, double dt,
                                   int M, int nu,
                                   EulerConvention convention = EulerConvention::literal,
                                   double phi0 = 0.0);

enum class DRule { half_of_r, fixed };

struct ScanOptions {
  std::vector<Scheme> schemes;
  std::vector<int> nu_list;      // applied to cisdcq only
  std::vector<double> r_grid;    // negative reaction coefficients
  DRule d_rule = DRule::half_of_r;
  double fixed_d = -5.0;
  double a = 1.0;
  double dt = 1.0;
  int M = 4;
  EulerConvention convention = EulerConvention::literal;
};

struct ScanPoint {
  Scheme scheme;
  int M;
  int nu;
  double a, d, r, dt;
  double gamma;
  bool ok;  // false when the eigenvalue computation failed (gamma = NA)
};

//! One gamma per (scheme[, nu], r) combination. Throws std::invalid_argument
//! for an empty r grid; per-point numeric failures are recorded, not thrown.
std::vector<ScanPoint> spectral_radius_scan(const ScanOptions& opt);

//! r values -10^{lo} .. -10^{hi} sampled log-uniformly, points_per_decade
//! per decade (default matches the figures: 1e-2 to 1e6, 40 per decade).
std::vector<double> log_r_grid(double lo_exp = -2.0, double hi_exp = 6.0,
                               int points_per_decade = 40);

struct CostInputs {
  double cost_AD = 1.0;   // Upsilon_AD
  double cost_R = 1.0;    // Upsilon_R
  double cost_ADR = 0.0;  // Upsilon_ADR; required by cost_ratio_imex only
  int nu = 1;
  int M = 4;
  int N_M = 1;  // MISDCQ sweeps
  int N_C = 1;  // CISDCQ-nu sweeps
  int N_I = 1;  // IMEXQ sweeps

  double alpha() const { return (cost_AD + cost_R) / std::max(cost_AD, cost_R); }
  double beta() const { return cost_ADR / std::max(cost_AD, cost_R); }
};

//! R_nu = (N_M/N_C) * alpha*M / (alpha*nu + M - 1).
double cost_ratio(const CostInputs& in);

//! R'_nu = (N_I/N_C) * beta*M / (beta*nu + M - 1). Throws
//! std::invalid_argument when cost_ADR is missing (nonpositive).
double cost_ratio_imex(const CostInputs& in);

struct SweepCountResult {
  int sweeps = 0;
  bool converged = false;
  double last_increment = 0.0;
};

//! Smallest sweep count k with |phi^{M,(k)} - phi^{M,(k-1)}| <= tol on the
//! linear problem, capped (no-convergence is reported, not fatal).
SweepCountResult sweeps_to_tolerance(Scheme scheme, const StiffnessTriple& triple, double dt,
                                     int M, int nu, double tol, int cap = 200,
                                     EulerConvention convention = EulerConvention::literal,
                                     double phi0 = 1.0);

}  // namespace cisdc

#endif  // CISDC_ANALYSIS_HPP_
