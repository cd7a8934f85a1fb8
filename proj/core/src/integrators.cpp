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

#include "cisdc/integrators.hpp"

#include <cmath>
#include <stdexcept>

namespace cisdc {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::misdc: return "misdc";
    case Scheme::misdcq: return "misdcq";
    case Scheme::cisdcq: return "cisdcq";
    case Scheme::imexq: return "imexq";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "misdc") return Scheme::misdc;
  if (name == "misdcq") return Scheme::misdcq;
  if (name == "cisdcq") return Scheme::cisdcq;
  if (name == "imexq") return Scheme::imexq;
  throw std::invalid_argument("unknown scheme: " + name);
}

namespace {

void check_dimensions(const SweepState& state, const QuadratureTables& tables,
                      const OperatorSplitProblem& problem) {
  if (state.subintervals() != tables.nodes.M)
    throw std::invalid_argument("sweep: state and tables disagree on M");
  if (state.dim() != problem.dimension())
    throw std::invalid_argument("sweep: state and problem disagree on dimension");
}

// rhs = phi0 + dt * sum_j Q(row,j) * (fa+fd+fr)(node j), the full-quadrature
// base of the zero-to-node updates.
void quadrature_base(const SweepState& s, const DenseMatrix& Q, int row, double dt,
                     const std::vector<NodeVector>& fa, const std::vector<NodeVector>& fd,
                     const std::vector<NodeVector>& fr, NodeVector& rhs) {
  const std::size_t n = s.dim();
  const int M = s.subintervals();
  for (std::size_t i = 0; i < n; ++i) rhs[i] = s.phi[0][i];
  for (int j = 0; j <= M; ++j) {
    const double c = dt * Q(row, j);
    const NodeVector& a = fa[j];
    const NodeVector& d = fd[j];
    const NodeVector& r = fr[j];
    for (std::size_t i = 0; i < n; ++i) rhs[i] += c * (a[i] + d[i] + r[i]);
  }
}

}  // namespace

void misdc_sweep(SweepState& state, const QuadratureTables& tables,
                 const OperatorSplitProblem& problem, double dt, SolveCounters* counters) {
  check_dimensions(state, tables, problem);
  const int M = state.subintervals();
  const std::size_t n = state.dim();
  const std::vector<NodeVector> fa_p = state.fa, fd_p = state.fd, fr_p = state.fr;

  NodeVector base(n), rhs(n), fd_ad(n);
  for (int m = 0; m < M; ++m) {
    const double dtm = dt * tables.nodes.dtau[m];
    for (std::size_t i = 0; i < n; ++i) base[i] = state.phi[m][i];
    for (int j = 0; j <= M; ++j) {
      const double c = dt * tables.S(m, j);
      for (std::size_t i = 0; i < n; ++i)
        base[i] += c * (fa_p[j][i] + fd_p[j][i] + fr_p[j][i]);
    }
    // diffusion correction: explicit advection at node m, implicit at m+1
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] = base[i] + dtm * (state.fa[m][i] - fa_p[m][i] - fd_p[m + 1][i]);
    problem.solve_diffusion(dtm, rhs, state.phi_ad[m + 1]);
    if (counters) ++counters->diffusion;
    problem.eval_diffusion(state.phi_ad[m + 1], fd_ad);
    // reaction correction on top of the diffusion stage
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] = base[i] + dtm * (state.fa[m][i] - fa_p[m][i] + fd_ad[i] - fd_p[m + 1][i] -
                                fr_p[m + 1][i]);
    problem.solve_reaction(dtm, rhs, state.phi[m + 1]);
    if (counters) ++counters->reaction;
    problem.eval_advection(state.phi[m + 1], state.fa[m + 1]);
    problem.eval_diffusion(state.phi[m + 1], state.fd[m + 1]);
    problem.eval_reaction(state.phi[m + 1], state.fr[m + 1]);
  }
}

void misdcq_sweep(SweepState& state, const QuadratureTables& tables,
                  const OperatorSplitProblem& problem, double dt, SolveCounters* counters) {
  check_dimensions(state, tables, problem);
  const int M = state.subintervals();
  const std::size_t n = state.dim();
  const std::vector<NodeVector> fa_p = state.fa, fd_p = state.fd, fr_p = state.fr;

  NodeVector base(n), rhs(n), fd_ad(n);
  for (int m = 0; m < M; ++m) {
    quadrature_base(state, tables.Q, m, dt, fa_p, fd_p, fr_p, base);
    const double coef = dt * tables.QtI(m, m);
    // diffusion stage
    for (std::size_t i = 0; i < n; ++i) rhs[i] = base[i];
    for (int j = 1; j <= m; ++j) {
      const double cE = dt * tables.QtE(m, j - 1);
      const double cI = dt * tables.QtI(m, j - 1);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] += cE * (state.fa[j][i] - fa_p[j][i]) + cI * (state.fd[j][i] - fd_p[j][i]);
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= coef * fd_p[m + 1][i];
    problem.solve_diffusion(coef, rhs, state.phi_ad[m + 1]);
    if (counters) ++counters->diffusion;
    problem.eval_diffusion(state.phi_ad[m + 1], fd_ad);
    // reaction stage
    for (std::size_t i = 0; i < n; ++i) rhs[i] = base[i];
    for (int j = 1; j <= m; ++j) {
      const double cE = dt * tables.QtE(m, j - 1);
      const double cI = dt * tables.QtI(m, j - 1);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] += cE * (state.fa[j][i] - fa_p[j][i]) +
                  cI * (state.fd[j][i] - fd_p[j][i] + state.fr[j][i] - fr_p[j][i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] += coef * (fd_ad[i] - fd_p[m + 1][i] - fr_p[m + 1][i]);
    problem.solve_reaction(coef, rhs, state.phi[m + 1]);
    if (counters) ++counters->reaction;
    problem.eval_advection(state.phi[m + 1], state.fa[m + 1]);
    problem.eval_diffusion(state.phi[m + 1], state.fd[m + 1]);
    problem.eval_reaction(state.phi[m + 1], state.fr[m + 1]);
  }
}

void imexq_sweep(SweepState& state, const QuadratureTables& tables,
                 const OperatorSplitProblem& problem, double dt, SolveCounters* counters) {
  check_dimensions(state, tables, problem);
  if (!problem.has_coupled_solve())
    throw CapabilityError("imexq_sweep: problem provides no coupled diffusion-reaction solve");
  const int M = state.subintervals();
  const std::size_t n = state.dim();
  const std::vector<NodeVector> fa_p = state.fa, fd_p = state.fd, fr_p = state.fr;

  NodeVector rhs(n);
  for (int m = 0; m < M; ++m) {
    quadrature_base(state, tables.Q, m, dt, fa_p, fd_p, fr_p, rhs);
    for (int j = 1; j <= m; ++j) {
      const double cE = dt * tables.QtE(m, j - 1);
      const double cI = dt * tables.QtI(m, j - 1);
      for (std::size_t i = 0; i < n; ++i)
        rhs[i] += cE * (state.fa[j][i] - fa_p[j][i]) +
                  cI * (state.fd[j][i] - fd_p[j][i] + state.fr[j][i] - fr_p[j][i]);
    }
    const double coef = dt * tables.QtI(m, m);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= coef * (fd_p[m + 1][i] + fr_p[m + 1][i]);
    problem.solve_coupled(coef, rhs, state.phi[m + 1]);
    if (counters) ++counters->coupled;
    state.phi_ad[m + 1] = state.phi[m + 1];
    problem.eval_advection(state.phi[m + 1], state.fa[m + 1]);
    problem.eval_diffusion(state.phi[m + 1], state.fd[m + 1]);
    problem.eval_reaction(state.phi[m + 1], state.fr[m + 1]);
  }
}

namespace cisdcq_cells {

void Workspace::resize(int M_, int nu_, std::size_t dim_) {
  M = M_;
  nu = nu_;
  dim = dim_;
  const std::size_t cells = static_cast<std::size_t>(M) * nu;
  auto prep = [&](std::vector<NodeVector>& v) {
    v.resize(cells);
    for (auto& x : v) x.assign(dim, 0.0);
  };
  prep(phi_ad);
  prep(fa_ad);
  prep(fd_ad);
  prep(phi_r);
  prep(fa_r);
  prep(fd_r);
  prep(fr_r);
}

void run_diffusion_cell(int m, int ell, const SweepState& in, const QuadratureTables& tables,
                        const OperatorSplitProblem& problem, double dt, Workspace& ws,
                        SolveCounters* counters) {
  const std::size_t n = ws.dim;
  const int row = m - 1;
  NodeVector rhs(n);
  quadrature_base(in, tables.Q, row, dt, in.fa, in.fd, in.fr, rhs);
  // nodes 1..m-2: current-iteration reaction outputs
  for (int j = 1; j <= m - 2; ++j) {
    const double cE = dt * tables.QtE(row, j - 1);
    const double cI = dt * tables.QtI(row, j - 1);
    const std::size_t sj = ws.slot(j, ell);
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] += cE * (ws.fa_r[sj][i] - in.fa[j][i]) +
                cI * (ws.fd_r[sj][i] - in.fd[j][i] + ws.fr_r[sj][i] - in.fr[j][i]);
  }
  // node m-1: lagged advection/diffusion/reaction
  if (m >= 2) {
    const double cE = dt * tables.QtE(row, m - 2);
    const double cI = dt * tables.QtI(row, m - 2);
    const NodeVector& lag_fa = (ell == 1) ? ws.fa_ad[ws.slot(m - 1, 1)] : ws.fa_r[ws.slot(m - 1, ell - 1)];
    const NodeVector& lag_fd = (ell == 1) ? ws.fd_ad[ws.slot(m - 1, 1)] : ws.fd_r[ws.slot(m - 1, ell - 1)];
    const NodeVector& lag_fr = (ell == 1) ? in.fr[m - 1] : ws.fr_r[ws.slot(m - 1, ell - 1)];
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] += cE * (lag_fa[i] - in.fa[m - 1][i]) +
                cI * (lag_fd[i] - in.fd[m - 1][i] + lag_fr[i] - in.fr[m - 1][i]);
  }
  // node m: implicit diffusion, lagged reaction
  const double coef = dt * tables.QtI(row, m - 1);
  const NodeVector& lag_fr_m = (ell == 1) ? in.fr[m] : ws.fr_r[ws.slot(m, ell - 1)];
  for (std::size_t i = 0; i < n; ++i)
    rhs[i] += coef * (lag_fr_m[i] - in.fr[m][i]) - coef * in.fd[m][i];
  const std::size_t s = ws.slot(m, ell);
  problem.solve_diffusion(coef, rhs, ws.phi_ad[s]);
  if (counters) ++counters->diffusion;
  if (ell == 1) {
    // published for the next diffusion cell of this first pass
    problem.eval_advection(ws.phi_ad[s], ws.fa_ad[s]);
    problem.eval_diffusion(ws.phi_ad[s], ws.fd_ad[s]);
  }
}

void run_reaction_cell(int m, int ell, const SweepState& in, const QuadratureTables& tables,
                       const OperatorSplitProblem& problem, double dt, Workspace& ws,
                       SolveCounters* counters) {
  const std::size_t n = ws.dim;
  const int row = m - 1;
  const std::size_t s = ws.slot(m, ell);
  NodeVector rhs = ws.phi_ad[s];
  if (m >= 2) {
    const double cI = dt * tables.QtI(row, m - 2);
    const NodeVector& fr_new = ws.fr_r[ws.slot(m - 1, ell)];
    const NodeVector& lag_fr = (ell == 1) ? in.fr[m - 1] : ws.fr_r[ws.slot(m - 1, ell - 1)];
    for (std::size_t i = 0; i < n; ++i) rhs[i] += cI * (fr_new[i] - lag_fr[i]);
  }
  const double coef = dt * tables.QtI(row, m - 1);
  const NodeVector& lag_fr_m = (ell == 1) ? in.fr[m] : ws.fr_r[ws.slot(m, ell - 1)];
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= coef * lag_fr_m[i];
  problem.solve_reaction(coef, rhs, ws.phi_r[s]);
  if (counters) ++counters->reaction;
  problem.eval_advection(ws.phi_r[s], ws.fa_r[s]);
  problem.eval_diffusion(ws.phi_r[s], ws.fd_r[s]);
  problem.eval_reaction(ws.phi_r[s], ws.fr_r[s]);
}

void finalize(SweepState& state, const Workspace& ws) {
  for (int m = 1; m <= ws.M; ++m) {
    const std::size_t s = ws.slot(m, ws.nu);
    state.phi[m] = ws.phi_r[s];
    state.fa[m] = ws.fa_r[s];
    state.fd[m] = ws.fd_r[s];
    state.fr[m] = ws.fr_r[s];
    state.phi_ad[m] = ws.phi_ad[s];
  }
}

}  // namespace cisdcq_cells

void cisdcq_sweep(SweepState& state, const QuadratureTables& tables,
                  const OperatorSplitProblem& problem, double dt, int nu,
                  SolveCounters* counters) {
  check_dimensions(state, tables, problem);
  if (nu < 1) throw std::invalid_argument("cisdcq_sweep: nu must be >= 1");
  const int M = state.subintervals();
  cisdcq_cells::Workspace ws;
  ws.resize(M, nu, state.dim());
  for (int ell = 1; ell <= nu; ++ell) {
    for (int m = 1; m <= M; ++m) {
      cisdcq_cells::run_diffusion_cell(m, ell, state, tables, problem, dt, ws, counters);
      cisdcq_cells::run_reaction_cell(m, ell, state, tables, problem, dt, ws, counters);
    }
  }
  cisdcq_cells::finalize(state, ws);
}

void run_sweep(Scheme scheme, SweepState& state, const QuadratureTables& tables,
               const OperatorSplitProblem& problem, double dt, int nu,
               SolveCounters* counters) {
  switch (scheme) {
    case Scheme::misdc: misdc_sweep(state, tables, problem, dt, counters); return;
    case Scheme::misdcq: misdcq_sweep(state, tables, problem, dt, counters); return;
    case Scheme::cisdcq: cisdcq_sweep(state, tables, problem, dt, nu, counters); return;
    case Scheme::imexq: imexq_sweep(state, tables, problem, dt, counters); return;
  }
}

IntegrateResult integrate(const OperatorSplitProblem& problem, std::span<const double> phi0,
                          const IntegrateOptions& opt) {
  if (opt.n_sweeps < 1) throw std::invalid_argument("integrate: n_sweeps must be >= 1");
  if (opt.scheme == Scheme::cisdcq && opt.nu < 1)
    throw std::invalid_argument("integrate: nu must be >= 1");
  const QuadratureTables tables = make_quadrature_tables(opt.M, opt.convention);
  SweepState state(opt.M, problem.dimension());
  NodeVector start(phi0.begin(), phi0.end());

  IntegrateResult result;
  result.steps.reserve(opt.n_steps);
  for (int step = 0; step < opt.n_steps; ++step) {
    state.initialize(problem, start);
    SweepReport rep;
    NodeVector prev_end = state.phi[opt.M];
    for (int k = 1; k <= opt.n_sweeps; ++k) {
      try {
        run_sweep(opt.scheme, state, tables, problem, opt.dt, opt.nu, &rep.counters);
      } catch (const std::exception& e) {
        throw SolveError("integrate: step " + std::to_string(step + 1) + ", sweep " +
                         std::to_string(k) + ": " + e.what());
      }
      rep.increments.push_back(increment_norm(state.phi[opt.M], prev_end));
      prev_end = state.phi[opt.M];
      if (opt.stop_tol && rep.increments.back() <= *opt.stop_tol) break;
    }
    rep.sweeps = static_cast<int>(rep.increments.size());
    result.steps.push_back(std::move(rep));
    start = state.phi[opt.M];
  }
  result.final_state = std::move(start);
  return result;
}

}  // namespace cisdc
