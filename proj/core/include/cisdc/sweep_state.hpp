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

#ifndef CISDC_SWEEP_STATE_HPP_
#define CISDC_SWEEP_STATE_HPP_

#include <span>
#include <vector>

#include "cisdc/operator_split.hpp"

namespace cisdc {

using NodeVector = std::vector<double>;

//! Per-node solution and operator evaluations of one SDC time step.
//!
//! On entry to a sweep, phi/fa/fd/fr hold sweep (k); on return they hold
//! sweep (k+1). Node 0 is never modified by a sweep. phi_ad keeps the
//! diffusion-stage values of the most recent sweep (last nested iteration
//! for CISDCQ).
struct SweepState {
  SweepState(int M, std::size_t dim);

  //! Sweep 0: every node is a copy of phi0, evaluations taken once.
  void initialize(const OperatorSplitProblem& problem, std::span<const double> phi0);

  //! Sets node values and re-evaluates fa/fd/fr consistently (node 0 included).
  void set_node_values(const OperatorSplitProblem& problem,
                       const std::vector<NodeVector>& values);

  int subintervals() const { return M_; }
  std::size_t dim() const { return dim_; }

  std::vector<NodeVector> phi;     // M+1 node values
  std::vector<NodeVector> fa, fd, fr;
  std::vector<NodeVector> phi_ad;  // M+1, entry 0 unused

 private:
  int M_;
  std::size_t dim_;
};

//! Per-sweep diagnostics of one time step.
struct SweepReport {
  std::vector<double> increments;  // |phi^{M,(k+1)} - phi^{M,(k)}| per sweep (L1 mean for vectors)
  int sweeps = 0;
  SolveCounters counters;
};

//! Final-node increment norm: |a-b| for scalars, mean absolute difference
//! for vector problems.
double increment_norm(std::span<const double> a, std::span<const double> b);

}  // namespace cisdc

#endif  // CISDC_SWEEP_STATE_HPP_
