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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cisdc/integrators.hpp"
#include "cisdc/problems/linear.hpp"
#include "oracles/oracles.hpp"

using namespace cisdc;

namespace {

constexpr double kPhi0 = 1.0;

SweepState fresh_state(const LinearScalarProblem& p, int M) {
  SweepState st(M, 1);
  const double phi0[1] = {p.initial_value()};
  st.initialize(p, phi0);
  return st;
}

int sweeps_until(Scheme scheme, const LinearScalarProblem& p, const QuadratureTables& tb,
                 double dt, int nu, double tol, int cap = 2000) {
  SweepState st = fresh_state(p, tb.nodes.M);
  double prev = st.phi[tb.nodes.M][0];
  for (int k = 1; k <= cap; ++k) {
    run_sweep(scheme, st, tb, p, dt, nu);
    const double inc = std::abs(st.phi[tb.nodes.M][0] - prev);
    prev = st.phi[tb.nodes.M][0];
    if (inc <= tol) return k;
  }
  return cap + 1;
}

}  // namespace

TEST_CASE("zero-coefficient problems leave the state unchanged") {
  const LinearScalarProblem p({0.0, 0.0, 0.0}, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(3);
  for (Scheme s : {Scheme::misdc, Scheme::misdcq, Scheme::imexq}) {
    SweepState st = fresh_state(p, 3);
    run_sweep(s, st, tb, p, 1.0, 1);
    for (int m = 0; m <= 3; ++m) CHECK(st.phi[m][0] == kPhi0);
  }
  for (int nu : {1, 2, 5}) {
    SweepState st = fresh_state(p, 3);
    cisdcq_sweep(st, tb, p, 1.0, nu);
    for (int m = 0; m <= 3; ++m) CHECK(st.phi[m][0] == kPhi0);
  }
}

TEST_CASE("node 0 never changes across sweeps") {
  const LinearScalarProblem p({1.0, -2.0, -4.0}, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(4);
  for (Scheme s : {Scheme::misdc, Scheme::misdcq, Scheme::cisdcq, Scheme::imexq}) {
    SweepState st = fresh_state(p, 4);
    for (int k = 0; k < 12; ++k) {
      run_sweep(s, st, tb, p, 1.0, 3);
      CHECK(st.phi[0][0] == kPhi0);
    }
  }
}

TEST_CASE("linear fixed points: 19/7 and 7/67 at M=2") {
  // Collocation equals the Pade(2,2) approximant of exp at z = a+d+r.
  struct Case {
    StiffnessTriple triple;
    double expected;
  };
  const Case cases[] = {{{1.0, 0.0, 0.0}, 19.0 / 7.0}, {{1.0, -2.0, -4.0}, 7.0 / 67.0}};
  for (const Case& c : cases) {
    const LinearScalarProblem p(c.triple, kPhi0);
    for (auto conv : {EulerConvention::literal, EulerConvention::cumulative}) {
      const QuadratureTables tb = make_quadrature_tables(2, conv);
      const auto oracle = oracles::collocation_fixed_point(tb, c.triple.sum(), 1.0, kPhi0);
      CHECK(oracle.back() == doctest::Approx(c.expected).epsilon(1e-13));
      for (Scheme s : {Scheme::misdc, Scheme::misdcq, Scheme::imexq}) {
        SweepState st = fresh_state(p, 2);
        for (int k = 0; k < 200; ++k) run_sweep(s, st, tb, p, 1.0, 1);
        CHECK(st.phi[2][0] == doctest::Approx(c.expected).epsilon(1e-12));
      }
      for (int nu : {1, 3}) {
        SweepState st = fresh_state(p, 2);
        for (int k = 0; k < 200; ++k) cisdcq_sweep(st, tb, p, 1.0, nu);
        CHECK(st.phi[2][0] == doctest::Approx(c.expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("fixed-point equivalence across schemes and the collocation equation") {
  const StiffnessTriple triple{1.0, -2.0, -4.0};
  const LinearScalarProblem p(triple, kPhi0);
  for (int M : {2, 4}) {
    const QuadratureTables tb = make_quadrature_tables(M, EulerConvention::cumulative);
    const auto oracle = oracles::collocation_fixed_point(tb, triple.sum(), 1.0, kPhi0);
    std::vector<std::vector<double>> results;
    for (Scheme s : {Scheme::misdc, Scheme::misdcq, Scheme::imexq}) {
      SweepState st = fresh_state(p, M);
      for (int k = 0; k < 300; ++k) run_sweep(s, st, tb, p, 1.0, 1);
      std::vector<double> nodes(M);
      for (int m = 1; m <= M; ++m) nodes[m - 1] = st.phi[m][0];
      results.push_back(nodes);
    }
    for (int nu : {1, 3, 6}) {
      SweepState st = fresh_state(p, M);
      for (int k = 0; k < 300; ++k) cisdcq_sweep(st, tb, p, 1.0, nu);
      std::vector<double> nodes(M);
      for (int m = 1; m <= M; ++m) nodes[m - 1] = st.phi[m][0];
      results.push_back(nodes);
    }
    for (const auto& nodes : results) {
      for (int m = 0; m < M; ++m) {
        CHECK(std::abs(nodes[m] - oracle[m]) <= 1e-12);
        CHECK(std::abs(nodes[m] - results[0][m]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("MISDCQ reaches the fixed point in fewer sweeps than MISDC on a stiff problem") {
  const LinearScalarProblem p({1.0, -10.0, -20.0}, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(4, EulerConvention::cumulative);
  const int n_misdcq = sweeps_until(Scheme::misdcq, p, tb, 1.0, 1, 1e-14);
  const int n_misdc = sweeps_until(Scheme::misdc, p, tb, 1.0, 1, 1e-14);
  CHECK(n_misdcq < n_misdc);
}

TEST_CASE("cisdcq argument validation") {
  const LinearScalarProblem p({1.0, -1.0, -1.0}, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(2);
  SweepState st = fresh_state(p, 2);
  CHECK_THROWS_AS(cisdcq_sweep(st, tb, p, 1.0, 0), std::invalid_argument);
}

TEST_CASE("incremental reaction form matches the direct update on random linear inputs") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const StiffnessTriple triple{u(rng), u(rng), u(rng)};
    const LinearScalarProblem p(triple, kPhi0);
    const int M = 3;
    const QuadratureTables tb = make_quadrature_tables(M, EulerConvention::cumulative);
    SweepState st(M, 1);
    std::vector<NodeVector> vals(M + 1, NodeVector(1));
    for (int m = 0; m <= M; ++m) vals[m][0] = u(rng);
    st.set_node_values(p, vals);
    const std::vector<NodeVector> fa_k = st.fa, fd_k = st.fd, fr_k = st.fr;
    const double phi0 = st.phi[0][0];
    const double dt = 0.7;

    cisdcq_sweep(st, tb, p, dt, 1);

    // Direct evaluation of the printed reaction update for nu = 1: lagged
    // A/D at node m sit at the first-pass diffusion output, lagged reaction
    // values at sweep (k).
    for (int m = 0; m < M; ++m) {
      double rhs = phi0;
      for (int j = 0; j <= M; ++j)
        rhs += dt * tb.Q(m, j) * (fa_k[j][0] + fd_k[j][0] + fr_k[j][0]);
      for (int j = 1; j <= m - 1; ++j) {
        rhs += dt * tb.QtE(m, j - 1) * (triple.a * st.phi[j][0] - fa_k[j][0]);
        rhs += dt * tb.QtI(m, j - 1) * (triple.d * st.phi[j][0] - fd_k[j][0] +
                                        triple.r * st.phi[j][0] - fr_k[j][0]);
      }
      if (m >= 1) {
        rhs += dt * tb.QtE(m, m - 1) * (triple.a * st.phi_ad[m][0] - fa_k[m][0]);
        rhs += dt * tb.QtI(m, m - 1) * (triple.d * st.phi_ad[m][0] - fd_k[m][0] +
                                        triple.r * st.phi[m][0] - fr_k[m][0]);
      }
      const double coef = dt * tb.QtI(m, m);
      rhs += coef * (triple.d * st.phi_ad[m + 1][0] - fd_k[m + 1][0] +
                     triple.r * st.phi[m + 1][0] - fr_k[m + 1][0]);
      CHECK(std::abs(st.phi[m + 1][0] - rhs) <= 1e-14);
    }
  }
}

TEST_CASE("cisdcq inner iterations converge to the coupled-solve (IMEXQ) sweep") {
  // The nested iteration's fixed point is the fully coupled
  // diffusion-reaction solve, i.e. the IMEXQ sweep, not MISDCQ.
  const StiffnessTriple triple{1.0, -2.0, -1.0};
  const LinearScalarProblem p(triple, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(2, EulerConvention::cumulative);

  SweepState st_c = fresh_state(p, 2);
  cisdcq_sweep(st_c, tb, p, 1.0, 64);
  SweepState st_i = fresh_state(p, 2);
  imexq_sweep(st_i, tb, p, 1.0);
  SweepState st_m = fresh_state(p, 2);
  misdcq_sweep(st_m, tb, p, 1.0);

  for (int m = 1; m <= 2; ++m) {
    CHECK(std::abs(st_c.phi[m][0] - st_i.phi[m][0]) <= 1e-10);
  }
  CHECK(std::abs(st_c.phi[2][0] - st_m.phi[2][0]) > 1e-3);
}

TEST_CASE("imexq requires the coupled solve") {
  class NoCoupled final : public OperatorSplitProblem {
   public:
    std::size_t dimension() const override { return 1; }
    void eval_advection(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void eval_diffusion(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void eval_reaction(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void solve_diffusion(double c, std::span<const double> b, std::span<double> o) const override {
      o[0] = b[0] / (1.0 - c);
    }
    void solve_reaction(double c, std::span<const double> b, std::span<double> o) const override {
      o[0] = b[0] / (1.0 - c);
    }
  };
  const NoCoupled p;
  const QuadratureTables tb = make_quadrature_tables(2);
  SweepState st(2, 1);
  const double phi0[1] = {1.0};
  st.initialize(p, phi0);
  CHECK_THROWS_AS(imexq_sweep(st, tb, p, 0.1), CapabilityError);
}

TEST_CASE("each sweep raises the one-step order by one until the quadrature order") {
  const StiffnessTriple triple{1.0, -1.0, -2.0};
  const LinearScalarProblem p(triple, kPhi0);
  const double s = triple.sum();
  std::vector<double> dts;
  for (int e = 3; e <= 8; ++e) dts.push_back(std::pow(2.0, -e));

  auto one_step_error = [&](Scheme scheme, int M, int sweeps, double dt) {
    const QuadratureTables tb = make_quadrature_tables(M, EulerConvention::cumulative);
    SweepState st = fresh_state(p, M);
    for (int k = 0; k < sweeps; ++k) run_sweep(scheme, st, tb, p, dt, 1);
    return std::abs(st.phi[M][0] - kPhi0 * std::exp(s * dt));
  };
  auto slope = [&](Scheme scheme, int M, int sweeps) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double dt : dts) {
      const double x = std::log(dt);
      const double y = std::log(one_step_error(scheme, M, sweeps, dt));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(dts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  for (Scheme scheme : {Scheme::misdc, Scheme::misdcq, Scheme::cisdcq, Scheme::imexq}) {
    for (int k = 1; k <= 3; ++k) {
      CHECK(std::abs(slope(scheme, 4, k) - (k + 1)) <= 0.3);
    }
    // M=1 caps at the quadrature order (one-step order 2M+1 = 3).
    CHECK(std::abs(slope(scheme, 1, 2) - 3.0) <= 0.3);
    CHECK(slope(scheme, 1, 3) < 3.3);
  }
}

TEST_CASE("integrate driver") {
  SUBCASE("zero coefficients return the initial condition") {
    const LinearScalarProblem p({0, 0, 0}, kPhi0);
    IntegrateOptions opt;
    opt.scheme = Scheme::misdcq;
    opt.dt = 1.0;
    opt.n_steps = 1;
    opt.M = 2;
    opt.n_sweeps = 1;
    const double phi0[1] = {kPhi0};
    const auto res = integrate(p, phi0, opt);
    CHECK(res.final_state[0] == kPhi0);
    CHECK(res.steps.size() == 1);
  }

  SUBCASE("two converged steps reproduce the squared Pade(2,2) value") {
    const LinearScalarProblem p({1.0, 0.0, 0.0}, kPhi0);
    IntegrateOptions opt;
    opt.scheme = Scheme::misdcq;
    opt.dt = 0.5;
    opt.n_steps = 2;
    opt.M = 2;
    opt.n_sweeps = 200;
    opt.stop_tol = 1e-15;
    const double phi0[1] = {kPhi0};
    const auto res = integrate(p, phi0, opt);
    // Oracle: the M=2 collocation step function is Pade(2,2) of exp, and
    // R(1/2) = 61/37, so two steps give (61/37)^2 = 3721/1369.
    const double expected = 3721.0 / 1369.0;
    CHECK(res.final_state[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(res.final_state[0] - std::exp(1.0)) <= 3e-4);
  }

  SUBCASE("per-step reports carry increments and solve counts") {
    const LinearScalarProblem p({1.0, -2.0, -4.0}, kPhi0);
    IntegrateOptions opt;
    opt.scheme = Scheme::cisdcq;
    opt.dt = 0.5;
    opt.n_steps = 2;
    opt.M = 3;
    opt.n_sweeps = 4;
    opt.nu = 2;
    const double phi0[1] = {kPhi0};
    const auto res = integrate(p, phi0, opt);
    REQUIRE(res.steps.size() == 2);
    for (const auto& step : res.steps) {
      CHECK(step.sweeps == 4);
      CHECK(step.increments.size() == 4);
      for (double inc : step.increments) CHECK(inc >= 0.0);
      // nu * M solves per stage per sweep
      CHECK(step.counters.diffusion == 4 * 2 * 3);
      CHECK(step.counters.reaction == 4 * 2 * 3);
    }
  }

  SUBCASE("invalid options rejected") {
    const LinearScalarProblem p({1, 0, 0}, kPhi0);
    IntegrateOptions opt;
    opt.n_sweeps = 0;
    const double phi0[1] = {kPhi0};
    CHECK_THROWS_AS(integrate(p, phi0, opt), std::invalid_argument);
  }
}

TEST_CASE("stored evaluations stay consistent with the node values") {
  const StiffnessTriple triple{0.7, -1.3, -0.4};
  const LinearScalarProblem p(triple, kPhi0);
  const QuadratureTables tb = make_quadrature_tables(3, EulerConvention::cumulative);
  SweepState st = fresh_state(p, 3);
  for (int k = 0; k < 5; ++k) {
    run_sweep(k % 2 == 0 ? Scheme::misdcq : Scheme::cisdcq, st, tb, p, 0.8, 2);
    for (int m = 0; m <= 3; ++m) {
      CHECK(std::abs(st.fa[m][0] - triple.a * st.phi[m][0]) <= 1e-13);
      CHECK(std::abs(st.fd[m][0] - triple.d * st.phi[m][0]) <= 1e-13);
      CHECK(std::abs(st.fr[m][0] - triple.r * st.phi[m][0]) <= 1e-13);
    }
  }
}
