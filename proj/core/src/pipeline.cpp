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

#include "cisdc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

namespace cisdc {

std::string cell_label(const Cell& c) {
  return std::string(c.kind == CellKind::diffusion ? "D(" : "R(") + std::to_string(c.m) + "," +
         std::to_string(c.ell) + ")";
}

TaskGraph build_task_graph(int M, int nu) {
  if (M < 1 || nu < 1) throw std::invalid_argument("build_task_graph: M and nu must be >= 1");
  TaskGraph g;
  g.M = M;
  g.nu = nu;
  const int n_cells = 2 * M * nu;
  g.cells.resize(n_cells);
  g.dependencies.assign(n_cells, {});
  g.dependents.assign(n_cells, {});
  for (int ell = 1; ell <= nu; ++ell) {
    for (int m = 1; m <= M; ++m) {
      g.cells[g.cell_id(CellKind::diffusion, m, ell)] = {CellKind::diffusion, m, ell};
      g.cells[g.cell_id(CellKind::reaction, m, ell)] = {CellKind::reaction, m, ell};
    }
  }
  auto add_edge = [&](int from, int to) {
    g.dependencies[to].push_back(from);
    g.dependents[from].push_back(to);
  };
  for (int ell = 1; ell <= nu; ++ell) {
    for (int m = 1; m <= M; ++m) {
      const int d = g.cell_id(CellKind::diffusion, m, ell);
      const int r = g.cell_id(CellKind::reaction, m, ell);
      if (m >= 2) add_edge(g.cell_id(CellKind::diffusion, m - 1, ell), d);
      if (m >= 3) add_edge(g.cell_id(CellKind::reaction, m - 2, ell), d);
      if (ell >= 2) {
        if (m >= 2) add_edge(g.cell_id(CellKind::reaction, m - 1, ell - 1), d);
        add_edge(g.cell_id(CellKind::reaction, m, ell - 1), d);
      }
      add_edge(d, r);
      if (m >= 2) add_edge(g.cell_id(CellKind::reaction, m - 1, ell), r);
    }
  }
  return g;
}

int critical_path_length(const TaskGraph& graph) {
  const int n = static_cast<int>(graph.cells.size());
  std::vector<int> depth(n, 0);
  // cell ids are already topologically ordered within a pass except the
  // D/R interleaving; a simple relaxation over a Kahn order is safest.
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(graph.dependencies[v].size());
  std::deque<int> q;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push_back(v);
  int longest = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    int d = 1;
    for (int u : graph.dependencies[v]) d = std::max(d, depth[u] + 1);
    depth[v] = d;
    longest = std::max(longest, d);
    for (int w : graph.dependents[v])
      if (--indeg[w] == 0) q.push_back(w);
  }
  return longest;
}

namespace {

// Dispatch priority: iteration, then node, then diffusion before reaction.
struct CellPriority {
  int ell, m, kind;
  bool operator<(const CellPriority& o) const {
    if (ell != o.ell) return ell < o.ell;
    if (m != o.m) return m < o.m;
    return kind < o.kind;
  }
};

CellPriority priority_of(const Cell& c) {
  return {c.ell, c.m, c.kind == CellKind::diffusion ? 0 : 1};
}

}  // namespace

double simulate_makespan(const TaskGraph& graph, int workers, double cost_AD, double cost_R) {
  if (workers < 1) throw std::invalid_argument("simulate_makespan: workers must be >= 1");
  if (cost_AD <= 0.0 || cost_R <= 0.0)
    throw std::invalid_argument("simulate_makespan: costs must be positive");
  const int n = static_cast<int>(graph.cells.size());
  std::vector<int> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(graph.dependencies[v].size());

  // Ready cells keyed by (ready_time, priority) -- FIFO in ready time with
  // the documented tie-break.
  using ReadyKey = std::pair<double, CellPriority>;
  auto cmp = [](const std::pair<ReadyKey, int>& a, const std::pair<ReadyKey, int>& b) {
    return b.first < a.first;  // min-heap
  };
  std::priority_queue<std::pair<ReadyKey, int>, std::vector<std::pair<ReadyKey, int>>, decltype(cmp)>
      ready(cmp);
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push({{0.0, priority_of(graph.cells[v])}, v});

  // Running cells as (finish_time, id); workers free counter.
  auto fcmp = [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
    return b.first < a.first;
  };
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, decltype(fcmp)>
      running(fcmp);
  int free_workers = workers;
  double now = 0.0;
  double makespan = 0.0;
  int done = 0;
  while (done < n) {
    while (free_workers > 0 && !ready.empty() && ready.top().first.first <= now) {
      const int v = ready.top().second;
      ready.pop();
      const double cost = graph.cells[v].kind == CellKind::diffusion ? cost_AD : cost_R;
      running.push({now + cost, v});
      --free_workers;
    }
    if (running.empty()) {
      if (ready.empty()) throw std::logic_error("simulate_makespan: dependency cycle");
      now = std::max(now, ready.top().first.first);
      continue;
    }
    now = running.top().first;
    while (!running.empty() && running.top().first == now) {
      const int v = running.top().second;
      running.pop();
      ++free_workers;
      ++done;
      makespan = std::max(makespan, now);
      for (int w : graph.dependents[v]) {
        if (--indeg[w] == 0) ready.push({{now, priority_of(graph.cells[w])}, w});
      }
    }
  }
  return makespan;
}

ScheduleTrace execute_pipelined(SweepState& state, const QuadratureTables& tables,
                                const OperatorSplitProblem& problem, double dt, int nu,
                                int workers, SolveCounters* counters) {
  if (workers < 1) throw std::invalid_argument("execute_pipelined: workers must be >= 1");
  if (nu < 1) throw std::invalid_argument("execute_pipelined: nu must be >= 1");
  const int M = state.subintervals();
  const TaskGraph graph = build_task_graph(M, nu);
  const int n_cells = static_cast<int>(graph.cells.size());

  cisdcq_cells::Workspace ws;
  ws.resize(M, nu, state.dim());

  ScheduleTrace trace;
  trace.workers = workers;
  trace.cells.resize(n_cells);

  std::mutex mu;
  std::condition_variable cv_work;
  std::condition_variable cv_done;
  std::deque<int> work_queue;
  std::deque<int> done_queue;
  bool shutdown = false;
  std::exception_ptr failure;
  std::string failure_cell;
  std::vector<SolveCounters> worker_counters(workers);
  std::atomic<std::int64_t> tick{0};
  const auto t0 = std::chrono::steady_clock::now();

  auto now_ns = [&t0]() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                t0)
        .count();
  };

  auto worker_body = [&](int wid) {
    for (;;) {
      int id = -1;
      {
        std::unique_lock<std::mutex> lk(mu);
        cv_work.wait(lk, [&] { return shutdown || !work_queue.empty(); });
        if (!work_queue.empty()) {
          id = work_queue.front();
          work_queue.pop_front();
        } else if (shutdown) {
          return;
        }
      }
      if (id < 0) continue;
      const Cell& cell = graph.cells[id];
      CellTrace ct;
      ct.cell = cell;
      ct.worker = wid;
      ct.seq_start = tick.fetch_add(1);
      ct.start_ns = now_ns();
      bool ok = true;
      try {
        if (cell.kind == CellKind::diffusion) {
          cisdcq_cells::run_diffusion_cell(cell.m, cell.ell, state, tables, problem, dt, ws,
                                           &worker_counters[wid]);
        } else {
          cisdcq_cells::run_reaction_cell(cell.m, cell.ell, state, tables, problem, dt, ws,
                                          &worker_counters[wid]);
        }
      } catch (...) {
        ok = false;
        std::lock_guard<std::mutex> lk(mu);
        if (!failure) {
          failure = std::current_exception();
          failure_cell = cell_label(cell);
        }
      }
      ct.end_ns = now_ns();
      ct.seq_end = tick.fetch_add(1);
      {
        std::lock_guard<std::mutex> lk(mu);
        trace.cells[id] = ct;
        done_queue.push_back(ok ? id : -1 - id);
      }
      cv_done.notify_one();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_body, w);

  // Coordinator: releases ready cells in (ell, m, D-before-R) order and
  // processes completion messages.
  std::vector<int> indeg(n_cells);
  for (int v = 0; v < n_cells; ++v) indeg[v] = static_cast<int>(graph.dependencies[v].size());
  auto release_sorted = [&](std::vector<int>& cells_ready) {
    std::sort(cells_ready.begin(), cells_ready.end(), [&](int a, int b) {
      return priority_of(graph.cells[a]) < priority_of(graph.cells[b]);
    });
    {
      std::lock_guard<std::mutex> lk(mu);
      for (int id : cells_ready) work_queue.push_back(id);
    }
    cv_work.notify_all();
  };

  std::vector<int> initially_ready;
  for (int v = 0; v < n_cells; ++v)
    if (indeg[v] == 0) initially_ready.push_back(v);
  release_sorted(initially_ready);

  int completed = 0;
  bool aborted = false;
  while (completed < n_cells && !aborted) {
    std::vector<int> done_now;
    {
      std::unique_lock<std::mutex> lk(mu);
      cv_done.wait(lk, [&] { return !done_queue.empty(); });
      done_now.assign(done_queue.begin(), done_queue.end());
      done_queue.clear();
      if (failure) aborted = true;
    }
    if (aborted) break;
    std::vector<int> newly_ready;
    for (int id : done_now) {
      ++completed;
      for (int w : graph.dependents[id]) {
        if (--indeg[w] == 0) newly_ready.push_back(w);
      }
    }
    if (!newly_ready.empty()) release_sorted(newly_ready);
  }

  {
    std::lock_guard<std::mutex> lk(mu);
    shutdown = true;
    work_queue.clear();
  }
  cv_work.notify_all();
  for (auto& t : pool) t.join();

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw SolveError("execute_pipelined: cell " + failure_cell + " failed: " + e.what());
    }
  }

  cisdcq_cells::finalize(state, ws);
  if (counters) {
    for (const SolveCounters& c : worker_counters) *counters += c;
  }
  return trace;
}

std::string validate_schedule_trace(const TaskGraph& graph, const ScheduleTrace& trace) {
  const int n = static_cast<int>(graph.cells.size());
  if (static_cast<int>(trace.cells.size()) != n) return "trace size does not match graph";
  for (int v = 0; v < n; ++v) {
    for (int u : graph.dependencies[v]) {
      if (trace.cells[u].end_ns > trace.cells[v].start_ns ||
          trace.cells[u].seq_end > trace.cells[v].seq_start) {
        return "edge violated: " + cell_label(graph.cells[u]) + " -> " +
               cell_label(graph.cells[v]);
      }
    }
  }
  // No worker may execute two cells at once.
  std::vector<std::vector<const CellTrace*>> by_worker(trace.workers);
  for (const CellTrace& c : trace.cells) {
    if (c.worker < 0 || c.worker >= trace.workers) return "bad worker id in trace";
    by_worker[c.worker].push_back(&c);
  }
  for (auto& v : by_worker) {
    std::sort(v.begin(), v.end(),
              [](const CellTrace* a, const CellTrace* b) { return a->start_ns < b->start_ns; });
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i]->start_ns < v[i - 1]->end_ns) {
        return "worker overlap: " + cell_label(v[i - 1]->cell) + " and " + cell_label(v[i]->cell);
      }
    }
  }
  return {};
}

void write_trace_csv(const std::string& path, const ScheduleTrace& trace) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("write_trace_csv: cannot open " + path);
  f << "cell,kind,m,ell,worker,start_ns,end_ns\n";
  for (const CellTrace& c : trace.cells) {
    f << cell_label(c.cell) << ',' << (c.cell.kind == CellKind::diffusion ? 'D' : 'R') << ','
      << c.cell.m << ',' << c.cell.ell << ',' << c.worker << ',' << c.start_ns << ','
      << c.end_ns << '\n';
  }
}

}  // namespace cisdc
