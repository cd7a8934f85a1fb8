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

#include "cisdc/problems/refinement.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace cisdc {

namespace {

int steps_for(double final_time, double dt) {
  const double raw = final_time / dt;
  const int n = static_cast<int>(std::llround(raw));
  if (n < 1 || std::abs(n * dt - final_time) > 1e-9 * final_time)
    throw std::invalid_argument("refinement_study: dt must divide the final time");
  return n;
}

FieldVector run_pde(const ReactionDiffusionProblem& problem, Scheme scheme, double dt,
                    double final_time, int sweeps, int nu, int M, EulerConvention conv) {
  IntegrateOptions opt;
  opt.scheme = scheme;
  opt.dt = dt;
  opt.n_steps = steps_for(final_time, dt);
  opt.M = M;
  opt.n_sweeps = sweeps;
  opt.nu = nu;
  opt.convention = conv;
  const FieldVector phi0 = initial_condition(problem.grid());
  return integrate(problem, phi0, opt).final_state;
}

std::string ref_cache_path(const std::string& dir, int n_x, double dt, Scheme scheme,
                           int sweeps) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "ref_nx%d_dt%.9g_%s_s%d.field", n_x, dt,
                scheme_name(scheme).c_str(), sweeps);
  return dir + "/" + buf;
}

}  // namespace

double fit_loglog_slope(const std::vector<double>& dts, const std::vector<double>& errors) {
  if (dts.size() != errors.size() || dts.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double x = std::log(dts[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RefinementResult refinement_study(const RefinementOptions& opt) {
  if (opt.dt_list.empty()) throw std::invalid_argument("refinement_study: empty dt list");
  const ReactionDiffusionGrid grid(opt.n_x, opt.a, opt.d, opt.r);
  const ReactionDiffusionProblem problem(grid);
  const double ref_dt = opt.ref_dt > 0.0 ? opt.ref_dt : grid.dx / 32.0;

  RefinementResult result;
  result.dt_list = opt.dt_list;

  // Reference: fine-step MISDCQ, optionally cached on disk.
  bool have_ref = false;
  std::string cache_file;
  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    cache_file = ref_cache_path(opt.cache_dir, opt.n_x, ref_dt, Scheme::misdcq, opt.ref_sweeps);
    if (std::filesystem::exists(cache_file)) {
      const FieldSnapshot snap = read_field_snapshot(cache_file);
      if (snap.n_x == opt.n_x) {
        result.reference = snap.data;
        have_ref = true;
      }
    }
  }
  if (!have_ref) {
    result.reference = run_pde(problem, Scheme::misdcq, ref_dt, opt.final_time, opt.ref_sweeps,
                               1, opt.M, opt.convention);
    if (!cache_file.empty())
      write_field_snapshot(cache_file, opt.n_x, grid.dx, result.reference);
  }

  for (Scheme scheme : opt.schemes) {
    for (int sweeps : opt.sweep_counts) {
      RefinementCurve curve;
      curve.scheme = scheme;
      curve.sweeps = sweeps;
      for (double dt : opt.dt_list) {
        const FieldVector sol =
            run_pde(problem, scheme, dt, opt.final_time, sweeps, opt.nu, opt.M, opt.convention);
        curve.errors.push_back(l1_error(sol, result.reference));
      }
      if (opt.dt_list.size() >= 2) {
        curve.slope = fit_loglog_slope(opt.dt_list, curve.errors);
        curve.slope_valid = true;
      }
      result.curves.push_back(std::move(curve));
    }
  }
  return result;
}

}  // namespace cisdc
