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

#ifndef CISDC_INTEGRATORS_HPP_
#define CISDC_INTEGRATORS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cisdc/operator_split.hpp"
#include "cisdc/quadrature.hpp"
#include "cisdc/sweep_state.hpp"

namespace cisdc {

enum class Scheme { misdc, misdcq, cisdcq, imexq };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

//! One MISDC sweep: node-to-node marching with forward-Euler advection,
//! backward-Euler diffusion then reaction corrections, and the S-matrix
//! quadrature term.
void misdc_sweep(SweepState& state, const QuadratureTables& tables,
                 const OperatorSplitProblem& problem, double dt,
                 SolveCounters* counters = nullptr);

//! One MISDCQ sweep: zero-to-node form with the LU-based implicit weights
//! QtI and explicit weights QtE.
void misdcq_sweep(SweepState& state, const QuadratureTables& tables,
                  const OperatorSplitProblem& problem, double dt,
                  SolveCounters* counters = nullptr);

//! One CISDCQ sweep with nu nested iterations; lagged cross-node couplings
//! decouple the diffusion stage at node m+1 from the reaction stage at node
//! m. The reaction update uses the incremental (reaction-correction) form.
void cisdcq_sweep(SweepState& state, const QuadratureTables& tables,
                  const OperatorSplitProblem& problem, double dt, int nu,
                  SolveCounters* counters = nullptr);

//! One IMEXQ sweep: a single coupled diffusion-reaction implicit stage per
//! node. Requires the problem's coupled solve.
void imexq_sweep(SweepState& state, const QuadratureTables& tables,
                 const OperatorSplitProblem& problem, double dt,
                 SolveCounters* counters = nullptr);

//! Dispatch on the scheme enum (nu is used by cisdcq only).
void run_sweep(Scheme scheme, SweepState& state, const QuadratureTables& tables,
               const OperatorSplitProblem& problem, double dt, int nu,
               SolveCounters* counters = nullptr);

struct IntegrateOptions {
  Scheme scheme = Scheme::misdcq;
  double dt = 0.0;
  int n_steps = 1;
  int M = 4;
  int n_sweeps = 1;
  int nu = 1;                      // cisdcq only
  std::optional<double> stop_tol;  // early stop on final-node increment
  EulerConvention convention = EulerConvention::literal;
};

struct IntegrateResult {
  NodeVector final_state;
  std::vector<SweepReport> steps;  // one report per time step
};

//! Advances n_steps steps of size dt; within each step runs n_sweeps sweeps
//! (or stops early once the final-node increment drops to stop_tol). The
//! node-0 value of step n+1 is the node-M value of step n. Stage failures
//! are rethrown with step/sweep context.
IntegrateResult integrate(const OperatorSplitProblem& problem, std::span<const double> phi0,
                          const IntegrateOptions& opt);

//! Shared per-cell computations of the CISDCQ sweep. The serial sweep and
//! the pipelined executor run exactly these functions, so each cell performs
//! an identical, fixed-operand-order computation regardless of scheduling.
namespace cisdcq_cells {

//! Single-writer slots for every (node m, nested iteration ell) cell.
struct Workspace {
  int M = 0;
  int nu = 0;
  std::size_t dim = 0;
  // Indexed by slot(m, ell), m in 1..M, ell in 1..nu.
  std::vector<NodeVector> phi_ad;         // diffusion-stage outputs
  std::vector<NodeVector> fa_ad, fd_ad;   // evaluations at phi_ad (pass 1 only)
  std::vector<NodeVector> phi_r;          // reaction-stage outputs
  std::vector<NodeVector> fa_r, fd_r, fr_r;

  void resize(int M_, int nu_, std::size_t dim_);
  std::size_t slot(int m, int ell) const {
    return static_cast<std::size_t>(ell - 1) * M + (m - 1);
  }
};

//! Diffusion cell D(m, ell): assembles the lagged right-hand side and runs
//! the implicit diffusion solve into ws.phi_ad[slot]; on the first nested
//! iteration it also publishes F_A/F_D at the diffusion output.
void run_diffusion_cell(int m, int ell, const SweepState& in, const QuadratureTables& tables,
                        const OperatorSplitProblem& problem, double dt, Workspace& ws,
                        SolveCounters* counters);

//! Reaction cell R(m, ell): incremental reaction correction and implicit
//! reaction solve into ws.phi_r[slot], plus evaluations at the output.
void run_reaction_cell(int m, int ell, const SweepState& in, const QuadratureTables& tables,
                       const OperatorSplitProblem& problem, double dt, Workspace& ws,
                       SolveCounters* counters);

//! Copies the last nested iteration's outputs back into the sweep state.
void finalize(SweepState& state, const Workspace& ws);

}  // namespace cisdcq_cells

}  // namespace cisdc

#endif  // CISDC_INTEGRATORS_HPP_
