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

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "cisdc/pipeline.hpp"
#include "cisdc/problems/linear.hpp"
#include "cisdc/problems/reaction_diffusion.hpp"

using namespace cisdc;

namespace {

std::vector<int> sorted_deps(const TaskGraph& g, CellKind kind, int m, int ell) {
  auto v = g.dependencies[g.cell_id(kind, m, ell)];
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("build_task_graph shapes and critical paths") {
  CHECK_THROWS_AS(build_task_graph(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_task_graph(1, 0), std::invalid_argument);

  const TaskGraph g21 = build_task_graph(2, 1);
  CHECK(g21.cells.size() == 4);
  CHECK(critical_path_length(g21) == 3);

  const TaskGraph g43 = build_task_graph(4, 3);
  CHECK(g43.cells.size() == 24);
  CHECK(critical_path_length(g43) == 9);

  const TaskGraph g11 = build_task_graph(1, 1);
  CHECK(g11.cells.size() == 2);
  CHECK(critical_path_length(g11) == 2);
  CHECK(sorted_deps(g11, CellKind::reaction, 1, 1) ==
        std::vector<int>{g11.cell_id(CellKind::diffusion, 1, 1)});

  for (int M = 1; M <= 8; ++M)
    for (int nu = 1; nu <= 8; ++nu)
      CHECK(critical_path_length(build_task_graph(M, nu)) == 2 * nu + (M - 1));
}

TEST_CASE("task graph edges match the dependency rules exactly") {
  const TaskGraph g = build_task_graph(4, 3);
  // D(3,2) <- D(2,2), R(1,2), R(2,1), R(3,1)
  std::vector<int> expect{
      g.cell_id(CellKind::diffusion, 2, 2), g.cell_id(CellKind::reaction, 1, 2),
      g.cell_id(CellKind::reaction, 2, 1), g.cell_id(CellKind::reaction, 3, 1)};
  std::sort(expect.begin(), expect.end());
  CHECK(sorted_deps(g, CellKind::diffusion, 3, 2) == expect);
  // R(3,2) <- D(3,2), R(2,2)
  std::vector<int> expect_r{g.cell_id(CellKind::diffusion, 3, 2),
                            g.cell_id(CellKind::reaction, 2, 2)};
  std::sort(expect_r.begin(), expect_r.end());
  CHECK(sorted_deps(g, CellKind::reaction, 3, 2) == expect_r);
  // D(1,1) has no dependencies; D(1,2) <- R(1,1) only.
  CHECK(g.dependencies[g.cell_id(CellKind::diffusion, 1, 1)].empty());
  CHECK(sorted_deps(g, CellKind::diffusion, 1, 2) ==
        std::vector<int>{g.cell_id(CellKind::reaction, 1, 1)});
}

TEST_CASE("simulate_makespan") {
  SUBCASE("unlimited workers, unit costs: 2nu + M - 1, all M, nu <= 8") {
    for (int M = 1; M <= 8; ++M) {
      for (int nu = 1; nu <= 8; ++nu) {
        const TaskGraph g = build_task_graph(M, nu);
        const double ms = simulate_makespan(g, 2 * M * nu, 1.0, 1.0);
        CHECK(ms == doctest::Approx(2 * nu + M - 1).epsilon(1e-12));
      }
    }
  }

  SUBCASE("asymmetric costs follow nu*(AD+R) + (M-1)*max") {
    const TaskGraph g = build_task_graph(4, 1);
    CHECK(simulate_makespan(g, 8, 2.0, 1.0) == doctest::Approx(9.0).epsilon(1e-12));
  }

  SUBCASE("one worker serializes to the cost sum") {
    for (int M : {2, 4}) {
      for (int nu : {1, 3}) {
        const TaskGraph g = build_task_graph(M, nu);
        CHECK(simulate_makespan(g, 1, 1.0, 1.0) ==
              doctest::Approx(2.0 * M * nu).epsilon(1e-12));
        CHECK(simulate_makespan(g, 1, 2.5, 0.5) ==
              doctest::Approx(3.0 * M * nu).epsilon(1e-12));
      }
    }
  }

  SUBCASE("invalid arguments") {
    const TaskGraph g = build_task_graph(2, 1);
    CHECK_THROWS_AS(simulate_makespan(g, 0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_makespan(g, 1, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("execute_pipelined is bitwise identical to the serial sweep (linear)") {
  const LinearScalarProblem p({1.0, -8.0, -16.0}, 1.0);
  for (int M : {2, 4, 6}) {
    const QuadratureTables tb = make_quadrature_tables(M, EulerConvention::cumulative);
    for (int nu : {1, 3, 6, 8}) {
      SweepState serial(M, 1);
      const double phi0[1] = {1.0};
      serial.initialize(p, phi0);
      cisdcq_sweep(serial, tb, p, 1.0, nu);

      for (int workers : {1, 2, 4}) {
        SweepState par(M, 1);
        par.initialize(p, phi0);
        const ScheduleTrace trace = execute_pipelined(par, tb, p, 1.0, nu, workers);
        for (int m = 0; m <= M; ++m) {
          CHECK(std::memcmp(par.phi[m].data(), serial.phi[m].data(), sizeof(double)) == 0);
          CHECK(std::memcmp(par.fr[m].data(), serial.fr[m].data(), sizeof(double)) == 0);
        }
        const TaskGraph g = build_task_graph(M, nu);
        CHECK(validate_schedule_trace(g, trace).empty());
        CHECK(static_cast<int>(trace.cells.size()) == 2 * M * nu);
      }
    }
  }
}

TEST_CASE("execute_pipelined matches the serial sweep on the PDE") {
  const ReactionDiffusionGrid grid(64, 1.0, 2.0, 4.0);
  const ReactionDiffusionProblem p(grid);
  const int M = 4;
  const QuadratureTables tb = make_quadrature_tables(M, EulerConvention::cumulative);
  const FieldVector phi0 = initial_condition(grid);

  for (int nu : {1, 3}) {
    SweepState serial(M, p.dimension());
    serial.initialize(p, phi0);
    cisdcq_sweep(serial, tb, p, 0.05, nu);
    for (int workers : {1, 2, 4}) {
      SweepState par(M, p.dimension());
      par.initialize(p, phi0);
      SolveCounters counters;
      const ScheduleTrace trace = execute_pipelined(par, tb, p, 0.05, nu, workers, &counters);
      double linf = 0.0;
      bool bitwise = true;
      for (int m = 0; m <= M; ++m) {
        for (std::size_t i = 0; i < p.dimension(); ++i) {
          linf = std::max(linf, std::abs(par.phi[m][i] - serial.phi[m][i]));
          if (par.phi[m][i] != serial.phi[m][i]) bitwise = false;
        }
      }
      CHECK(linf <= 1e-14);
      CHECK(bitwise);
      CHECK(counters.diffusion == nu * M);
      CHECK(counters.reaction == nu * M);
      CHECK(validate_schedule_trace(build_task_graph(M, nu), trace).empty());
    }
  }
}

TEST_CASE("worker failure aborts with the cell label") {
  class FailingProblem final : public OperatorSplitProblem {
   public:
    std::size_t dimension() const override { return 1; }
    void eval_advection(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void eval_diffusion(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void eval_reaction(std::span<const double> x, std::span<double> o) const override { o[0] = x[0]; }
    void solve_diffusion(double c, std::span<const double> b, std::span<double> o) const override {
      o[0] = b[0] / (1.0 - c);
    }
    void solve_reaction(double, std::span<const double>, std::span<double>) const override {
      throw SolveError("synthetic reaction failure");
    }
  };
  const FailingProblem p;
  const QuadratureTables tb = make_quadrature_tables(2);
  SweepState st(2, 1);
  const double phi0[1] = {1.0};
  st.initialize(p, phi0);
  try {
    execute_pipelined(st, tb, p, 0.1, 2, 2);
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(std::string(e.what()).find("R(") != std::string::npos);
    CHECK(std::string(e.what()).find("synthetic reaction failure") != std::string::npos);
  }
}

TEST_CASE("trace CSV export") {
  const LinearScalarProblem p({1.0, -2.0, -4.0}, 1.0);
  const QuadratureTables tb = make_quadrature_tables(2);
  SweepState st(2, 1);
  const double phi0[1] = {1.0};
  st.initialize(p, phi0);
  const ScheduleTrace trace = execute_pipelined(st, tb, p, 1.0, 2, 2);
  const std::string path = "trace_test.csv";
  write_trace_csv(path, trace);
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line == "cell,kind,m,ell,worker,start_ns,end_ns");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 8);
  std::remove(path.c_str());
}
