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

#include "cisdc/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cisdc {

namespace {

// Affine function of (phi0, Phi^{(k)}) for one node value.
struct AffVal {
  double c0 = 0.0;
  std::vector<double> w;

  explicit AffVal(int M = 0) : w(M, 0.0) {}
};

AffVal operator-(AffVal lhs, const AffVal& rhs) {
  lhs.c0 -= rhs.c0;
  for (std::size_t i = 0; i < lhs.w.size(); ++i) lhs.w[i] -= rhs.w[i];
  return lhs;
}

AffVal operator*(double c, AffVal v) {
  v.c0 *= c;
  for (double& x : v.w) x *= c;
  return v;
}

void axpy(AffVal& y, double c, const AffVal& x) {
  y.c0 += c * x.c0;
  for (std::size_t i = 0; i < y.w.size(); ++i) y.w[i] += c * x.w[i];
}

AffVal stage_solve(const AffVal& rhs, double coef, double kappa, int node, const char* which) {
  const double denom = 1.0 - coef * kappa;
  if (denom == 0.0) {
    throw SolveError(std::string("affine_iteration_matrix: singular ") + which +
                     " stage at node " + std::to_string(node));
  }
  return (1.0 / denom) * rhs;
}

struct AffineEngine {
  const QuadratureTables& tb;
  StiffnessTriple triple;
  double dt;
  int M;

  std::vector<AffVal> prev;  // sweep-(k) node values: e_j, node 0 = phi0

  AffineEngine(const QuadratureTables& tables, const StiffnessTriple& tr, double dt_)
      : tb(tables), triple(tr), dt(dt_), M(tables.nodes.M) {
    prev.assign(M + 1, AffVal(M));
    prev[0].c0 = 1.0;
    for (int j = 1; j <= M; ++j) prev[j].w[j - 1] = 1.0;
  }

  // phi0 + dt * sum_j Q(row,j) * s * prev[j]
  AffVal quadrature_base(int row) const {
    const double s = triple.sum();
    AffVal base = prev[0];
    for (int j = 0; j <= M; ++j) axpy(base, dt * tb.Q(row, j) * s, prev[j]);
    return base;
  }

  std::vector<AffVal> misdcq() const {
    const double a = triple.a, d = triple.d, r = triple.r;
    std::vector<AffVal> cur = prev;
    for (int m = 0; m < M; ++m) {
      const AffVal base = quadrature_base(m);
      const double coef = dt * tb.QtI(m, m);
      AffVal rhs = base;
      for (int j = 1; j <= m; ++j) {
        const AffVal delta = cur[j] - prev[j];
        axpy(rhs, dt * tb.QtE(m, j - 1) * a, delta);
        axpy(rhs, dt * tb.QtI(m, j - 1) * d, delta);
      }
      axpy(rhs, -coef * d, prev[m + 1]);
      const AffVal phi_ad = stage_solve(rhs, coef, d, m + 1, "diffusion");
      AffVal rhs2 = base;
      for (int j = 1; j <= m; ++j) {
        const AffVal delta = cur[j] - prev[j];
        axpy(rhs2, dt * tb.QtE(m, j - 1) * a, delta);
        axpy(rhs2, dt * tb.QtI(m, j - 1) * (d + r), delta);
      }
      axpy(rhs2, coef * d, phi_ad);
      axpy(rhs2, -coef * (d + r), prev[m + 1]);
      cur[m + 1] = stage_solve(rhs2, coef, r, m + 1, "reaction");
    }
    return cur;
  }

  std::vector<AffVal> misdc() const {
    const double a = triple.a, d = triple.d, r = triple.r;
    const double s = triple.sum();
    std::vector<AffVal> cur = prev;
    for (int m = 0; m < M; ++m) {
      const double dtm = dt * tb.nodes.dtau[m];
      AffVal base = cur[m];
      for (int j = 0; j <= M; ++j) axpy(base, dt * tb.S(m, j) * s, prev[j]);
      AffVal rhs = base;
      axpy(rhs, dtm * a, cur[m] - prev[m]);
      axpy(rhs, -dtm * d, prev[m + 1]);
      const AffVal phi_ad = stage_solve(rhs, dtm, d, m + 1, "diffusion");
      AffVal rhs2 = base;
      axpy(rhs2, dtm * a, cur[m] - prev[m]);
      axpy(rhs2, dtm * d, phi_ad - prev[m + 1]);
      axpy(rhs2, -dtm * r, prev[m + 1]);
      cur[m + 1] = stage_solve(rhs2, dtm, r, m + 1, "reaction");
    }
    return cur;
  }

  std::vector<AffVal> imexq() const {
    const double a = triple.a, d = triple.d, r = triple.r;
    std::vector<AffVal> cur = prev;
    for (int m = 0; m < M; ++m) {
      AffVal rhs = quadrature_base(m);
      for (int j = 1; j <= m; ++j) {
        const AffVal delta = cur[j] - prev[j];
        axpy(rhs, dt * tb.QtE(m, j - 1) * a, delta);
        axpy(rhs, dt * tb.QtI(m, j - 1) * (d + r), delta);
      }
      const double coef = dt * tb.QtI(m, m);
      axpy(rhs, -coef * (d + r), prev[m + 1]);
      cur[m + 1] = stage_solve(rhs, coef, d + r, m + 1, "coupled");
    }
    return cur;
  }

  std::vector<AffVal> cisdcq(int nu) const {
    const double a = triple.a, d = triple.d, r = triple.r;
    // Lagged reaction values start at sweep (k); lagged A/D values at node m
    // come from the current pass's diffusion output on pass 1 and from the
    // previous pass's reaction output afterwards.
    std::vector<AffVal> lag_r = prev;
    std::vector<AffVal> lag_ad = prev;  // pass-1 entries are overwritten in order
    std::vector<AffVal> cur_r = prev;
    for (int ell = 1; ell <= nu; ++ell) {
      std::vector<AffVal> new_r = prev;
      std::vector<AffVal> phi_ad(M + 1, AffVal(M));
      for (int m = 0; m < M; ++m) {
        const int node = m + 1;
        AffVal rhs = quadrature_base(m);
        for (int j = 1; j <= m - 1; ++j) {
          const AffVal delta = new_r[j] - prev[j];
          axpy(rhs, dt * tb.QtE(m, j - 1) * a, delta);
          axpy(rhs, dt * tb.QtI(m, j - 1) * (d + r), delta);
        }
        if (m >= 1) {
          axpy(rhs, dt * tb.QtE(m, m - 1) * a, lag_ad[m] - prev[m]);
          axpy(rhs, dt * tb.QtI(m, m - 1) * d, lag_ad[m] - prev[m]);
          axpy(rhs, dt * tb.QtI(m, m - 1) * r, lag_r[m] - prev[m]);
        }
        const double coef = dt * tb.QtI(m, m);
        axpy(rhs, coef * r, lag_r[node] - prev[node]);
        axpy(rhs, -coef * d, prev[node]);
        phi_ad[node] = stage_solve(rhs, coef, d, node, "diffusion");
        if (ell == 1) lag_ad[node] = phi_ad[node];
        AffVal rhs2 = phi_ad[node];
        if (m >= 1) axpy(rhs2, dt * tb.QtI(m, m - 1) * r, new_r[m] - lag_r[m]);
        axpy(rhs2, -coef * r, lag_r[node]);
        new_r[node] = stage_solve(rhs2, coef, r, node, "reaction");
      }
      cur_r = new_r;
      lag_r = new_r;
      lag_ad = new_r;  // passes >= 2 lag A/D at the previous reaction output
    }
    return cur_r;
  }

  std::vector<AffVal> run(Scheme scheme, int nu) const {
    switch (scheme) {
      case Scheme::misdc: return misdc();
      case Scheme::misdcq: return misdcq();
      case Scheme::cisdcq: return cisdcq(nu);
      case Scheme::imexq: return imexq();
    }
    throw std::invalid_argument("affine engine: unknown scheme");
  }
};

}  // namespace

AffineMap affine_sweep_map(Scheme scheme, const StiffnessTriple& triple, double dt, int M,
                           int nu, EulerConvention convention) {
  if (scheme == Scheme::cisdcq && nu < 1)
    throw std::invalid_argument("affine_sweep_map: nu must be >= 1");
  const QuadratureTables tables = make_quadrature_tables(M, convention);
  const AffineEngine engine(tables, triple, dt);
  const std::vector<AffVal> out = engine.run(scheme, nu);
  AffineMap map;
  map.W = DenseMatrix(M, M);
  map.offset.resize(M);
  for (int m = 1; m <= M; ++m) {
    map.offset[m - 1] = out[m].c0;
    for (int j = 0; j < M; ++j) map.W(m - 1, j) = out[m].w[j];
  }
  return map;
}

IterationMatrixResult affine_iteration_matrix(Scheme scheme, const StiffnessTriple& triple,
                                              double dt, int M, int nu,
                                              EulerConvention convention) {
  IterationMatrixResult res;
  res.G = affine_sweep_map(scheme, triple, dt, M, nu, convention).W;
  res.gamma = spectral_radius(res.G);
  res.scheme = scheme;
  res.M = M;
  res.nu = nu;
  res.dt = dt;
  res.triple = triple;
  return res;
}

DenseMatrix probe_iteration_matrix(Scheme scheme, const StiffnessTriple& triple, double dt,
                                   int M, int nu, EulerConvention convention, double phi0) {
  const LinearScalarProblem problem(triple, phi0);
  const QuadratureTables tables = make_quadrature_tables(M, convention);

  auto run_with = [&](int basis) {
    SweepState state(M, 1);
    std::vector<NodeVector> vals(M + 1, NodeVector(1, 0.0));
    vals[0][0] = phi0;
    if (basis >= 1) vals[basis][0] = 1.0;
    state.set_node_values(problem, vals);
    run_sweep(scheme, state, tables, problem, dt, nu);
    std::vector<double> out(M);
    for (int m = 1; m <= M; ++m) out[m - 1] = state.phi[m][0];
    return out;
  };

  const std::vector<double> base = run_with(0);
  DenseMatrix G(M, M);
  for (int j = 1; j <= M; ++j) {
    const std::vector<double> col = run_with(j);
    for (int m = 0; m < M; ++m) G(m, j - 1) = col[m] - base[m];
  }
  return G;
}

std::vector<double> log_r_grid(double lo_exp, double hi_exp, int points_per_decade) {
  if (points_per_decade < 1) throw std::invalid_argument("log_r_grid: points_per_decade >= 1");
  const int n = static_cast<int>(std::lround((hi_exp - lo_exp) * points_per_decade));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double e = lo_exp + (hi_exp - lo_exp) * i / n;
    grid.push_back(-std::pow(10.0, e));
  }
  return grid;
}

std::vector<ScanPoint> spectral_radius_scan(const ScanOptions& opt) {
  if (opt.r_grid.empty()) throw std::invalid_argument("spectral_radius_scan: empty r grid");
  if (opt.schemes.empty()) throw std::invalid_argument("spectral_radius_scan: no schemes");
  std::vector<ScanPoint> out;
  for (Scheme scheme : opt.schemes) {
    const std::vector<int> nus =
        (scheme == Scheme::cisdcq) ? opt.nu_list : std::vector<int>{1};
    for (int nu : nus) {
      for (double r : opt.r_grid) {
        const double d = (opt.d_rule == DRule::half_of_r) ? r / 2.0 : opt.fixed_d;
        ScanPoint p{scheme, opt.M, nu, opt.a, d, r, opt.dt, 0.0, true};
        try {
          p.gamma = affine_iteration_matrix(scheme, {opt.a, d, r}, opt.dt, opt.M, nu,
                                            opt.convention)
                        .gamma;
        } catch (const std::exception&) {
          p.ok = false;
        }
        out.push_back(p);
      }
    }
  }
  return out;
}

double cost_ratio(const CostInputs& in) {
  if (in.cost_AD <= 0.0 || in.cost_R <= 0.0)
    throw std::invalid_argument("cost_ratio: stage costs must be positive");
  if (in.nu < 1 || in.M < 1 || in.N_M < 1 || in.N_C < 1)
    throw std::invalid_argument("cost_ratio: counts must be >= 1");
  const double alpha = in.alpha();
  return (static_cast<double>(in.N_M) / in.N_C) * (alpha * in.M) / (alpha * in.nu + in.M - 1.0);
}

double cost_ratio_imex(const CostInputs& in) {
  if (in.cost_ADR <= 0.0)
    throw std::invalid_argument("cost_ratio_imex: cost_ADR is required");
  if (in.cost_AD <= 0.0 || in.cost_R <= 0.0)
    throw std::invalid_argument("cost_ratio_imex: stage costs must be positive");
  if (in.nu < 1 || in.M < 1 || in.N_I < 1 || in.N_C < 1)
    throw std::invalid_argument("cost_ratio_imex: counts must be >= 1");
  const double beta = in.beta();
  return (static_cast<double>(in.N_I) / in.N_C) * (beta * in.M) / (beta * in.nu + in.M - 1.0);
}

SweepCountResult sweeps_to_tolerance(Scheme scheme, const StiffnessTriple& triple, double dt,
                                     int M, int nu, double tol, int cap,
                                     EulerConvention convention, double phi0) {
  const LinearScalarProblem problem(triple, phi0);
  const QuadratureTables tables = make_quadrature_tables(M, convention);
  SweepState state(M, 1);
  const double p0[1] = {phi0};
  state.initialize(problem, p0);
  SweepCountResult res;
  double prev_end = state.phi[M][0];
  for (int k = 1; k <= cap; ++k) {
    run_sweep(scheme, state, tables, problem, dt, nu);
    res.last_increment = std::abs(state.phi[M][0] - prev_end);
    prev_end = state.phi[M][0];
    if (res.last_increment <= tol) {
      res.sweeps = k;
      res.converged = true;
      return res;
    }
  }
  res.sweeps = cap;
  res.converged = false;
  return res;
}

}  // namespace cisdc
