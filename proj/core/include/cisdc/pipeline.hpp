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

#ifndef CISDC_PIPELINE_HPP_
#define CISDC_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cisdc/integrators.hpp"

namespace cisdc {

enum class CellKind : std::uint8_t { diffusion, reaction };

//! One diffusion or reaction stage at (node m, nested iteration ell).
struct Cell {
  CellKind kind;
  int m;    // node, 1..M
  int ell;  // nested iteration, 1..nu
};

std::string cell_label(const Cell& c);

//! Dependency DAG of the cells of one CISDCQ-nu sweep.
//!
//! Edges (cell <- dependencies):
//!   D(m, ell) <- D(m-1, ell), R(m-2, ell), R(m-1, ell-1), R(m, ell-1)
//!   R(m, ell) <- D(m, ell), R(m-1, ell)
//! with out-of-range dependencies dropped (ell-1 = 0 couplings resolve to
//! sweep-(k) data, which is immutable input). The unit-cost critical path
//! has length 2*nu + (M-1).
struct TaskGraph {
  int M = 0;
  int nu = 0;
  std::vector<Cell> cells;                     // index = cell id
  std::vector<std::vector<int>> dependencies;  // ids of prerequisite cells
  std::vector<std::vector<int>> dependents;    // reverse edges
  double cost_AD = 1.0;
  double cost_R = 1.0;

  int cell_id(CellKind kind, int m, int ell) const {
    return 2 * ((ell - 1) * M + (m - 1)) + (kind == CellKind::reaction ? 1 : 0);
  }
};

//! Builds the DAG for M nodes and nu nested iterations.
//! Throws std::invalid_argument when either is < 1.
TaskGraph build_task_graph(int M, int nu);

//! Longest path in unit costs (sanity measure; equals 2*nu + M - 1).
int critical_path_length(const TaskGraph& graph);

//! Greedy list-scheduling makespan under `workers` workers: ready cells are
//! dispatched FIFO by ready time, ties broken by (ell, m, D before R).
//! Throws std::invalid_argument for workers < 1 or nonpositive costs.
double simulate_makespan(const TaskGraph& graph, int workers, double cost_AD, double cost_R);

//! Execution record of one cell.
struct CellTrace {
  Cell cell;
  int worker = -1;
  std::int64_t start_ns = 0;  // steady-clock offsets from executor start
  std::int64_t end_ns = 0;
  std::int64_t seq_start = 0;  // logical ticks, single global order
  std::int64_t seq_end = 0;
};

struct ScheduleTrace {
  int workers = 0;
  std::vector<CellTrace> cells;  // in completion-processing order
};

//! Runs one CISDCQ-nu sweep as the task DAG on `workers` worker threads.
//! The updated state is bitwise identical to cisdcq_sweep on the same
//! inputs: both execute exactly the same per-cell arithmetic, each cell
//! reads immutable snapshots and writes its own slot once. A worker failure
//! aborts the sweep and rethrows with the cell label.
ScheduleTrace execute_pipelined(SweepState& state, const QuadratureTables& tables,
                                const OperatorSplitProblem& problem, double dt, int nu,
                                int workers, SolveCounters* counters = nullptr);

//! Post-hoc validation: every DAG edge respected (predecessor end before
//! successor start) and no worker runs two cells at once. Returns an empty
//! string on success, else a description of the first violation.
std::string validate_schedule_trace(const TaskGraph& graph, const ScheduleTrace& trace);

//! Writes `cell,kind,m,ell,worker,start_ns,end_ns` rows.
void write_trace_csv(const std::string& path, const ScheduleTrace& trace);

}  // namespace cisdc

#endif  // CISDC_PIPELINE_HPP_
