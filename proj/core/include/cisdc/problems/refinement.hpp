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

#ifndef CISDC_PROBLEMS_REFINEMENT_HPP_
#define CISDC_PROBLEMS_REFINEMENT_HPP_

#include <string>
#include <vector>

#include "cisdc/integrators.hpp"
#include "cisdc/problems/reaction_diffusion.hpp"

namespace cisdc {

//! Time-refinement study of the nonlinear test PDE at fixed grid spacing.
//! Errors are L1 distances to a fine-step MISDCQ reference at the same
//! spacing (reference dt defaults to dx/32).
struct RefinementOptions {
  int n_x = 200;
  double a = 1.0, d = 2.0, r = 4.0;
  double final_time = 0.4;
  std::vector<double> dt_list{0.05, 0.025, 0.0125, 0.00625};
  std::vector<int> sweep_counts{2, 4, 8};
  std::vector<Scheme> schemes{Scheme::misdc, Scheme::misdcq, Scheme::cisdcq};
  int nu = 1;  // for cisdcq
  int M = 4;
  EulerConvention convention = EulerConvention::cumulative;
  double ref_dt = 0.0;  // 0 -> dx/32
  int ref_sweeps = 8;
  std::string cache_dir;  // empty disables reference caching
};

struct RefinementCurve {
  Scheme scheme;
  int sweeps;
  std::vector<double> errors;  // one per dt
  double slope = 0.0;          // least-squares log-log fit
  bool slope_valid = false;    // false for a single-dt grid
};

struct RefinementResult {
  std::vector<double> dt_list;
  std::vector<RefinementCurve> curves;
  FieldVector reference;
};

RefinementResult refinement_study(const RefinementOptions& opt);

//! Least-squares slope of log(err) against log(dt); invalid for fewer than
//! two points.
double fit_loglog_slope(const std::vector<double>& dts, const std::vector<double>& errors);

}  // namespace cisdc

#endif  // CISDC_PROBLEMS_REFINEMENT_HPP_
