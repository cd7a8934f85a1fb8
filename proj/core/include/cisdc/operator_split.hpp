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

#ifndef CISDC_OPERATOR_SPLIT_HPP_
#define CISDC_OPERATOR_SPLIT_HPP_

#include <cstddef>
#include <span>

#include "cisdc/errors.hpp"

namespace cisdc {

//! Problem-side contract of the operator-split integrators.
//!
//! A problem exposes the three split right-hand sides F_A (advection),
//! F_D (diffusion), F_R (reaction), and implicit stage solves
//!   solve_diffusion: phi - coef*F_D(phi) = rhs
//!   solve_reaction:  phi - coef*F_R(phi) = rhs
//! where coef is the time-weight handed down by the sweep (the problem never
//! sees quadrature internals). solve_coupled solves
//! phi - coef*(F_D+F_R)(phi) = rhs and is required only by IMEXQ.
//!
//! All members must be safe to call concurrently on disjoint output spans.
class OperatorSplitProblem {
 public:
  virtual ~OperatorSplitProblem() = default;

  virtual std::size_t dimension() const = 0;

  virtual void eval_advection(std::span<const double> phi, std::span<double> out) const = 0;
  virtual void eval_diffusion(std::span<const double> phi, std::span<double> out) const = 0;
  virtual void eval_reaction(std::span<const double> phi, std::span<double> out) const = 0;

  virtual void solve_diffusion(double coef, std::span<const double> rhs, std::span<double> out) const = 0;
  virtual void solve_reaction(double coef, std::span<const double> rhs, std::span<double> out) const = 0;

  virtual bool has_coupled_solve() const { return false; }
  virtual void solve_coupled(double /*coef*/, std::span<const double> /*rhs*/,
                             std::span<double> /*out*/) const {
    throw CapabilityError("OperatorSplitProblem: coupled diffusion-reaction solve not provided");
  }
};

//! Per-stage solve counts accumulated by the sweep engines.
struct SolveCounters {
  long diffusion = 0;
  long reaction = 0;
  long coupled = 0;

  SolveCounters& operator+=(const SolveCounters& o) {
    diffusion += o.diffusion;
    reaction += o.reaction;
    coupled += o.coupled;
    return *this;
  }
};

}  // namespace cisdc

#endif  // CISDC_OPERATOR_SPLIT_HPP_
