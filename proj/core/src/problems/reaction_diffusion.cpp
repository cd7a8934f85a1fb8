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

#include "cisdc/problems/reaction_diffusion.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cisdc/linalg.hpp"

namespace cisdc {

namespace {

// Interpolation abscissae in cell units, face at 0: the face value plus the
// first four cell centers.
constexpr std::array<double, 5> kStencilPoints{0.0, 0.5, 1.5, 2.5, 3.5};

std::array<double, 5> lagrange_weights_at(double xg) {
  std::array<double, 5> w{};
  for (int j = 0; j < 5; ++j) {
    double num = 1.0, den = 1.0;
    for (int i = 0; i < 5; ++i) {
      if (i == j) continue;
      num *= xg - kStencilPoints[i];
      den *= kStencilPoints[j] - kStencilPoints[i];
    }
    w[j] = num / den;
  }
  return w;
}

}  // namespace

ReactionDiffusionGrid::ReactionDiffusionGrid(int n_x_, double a_, double d_, double r_)
    : n_x(n_x_), a(a_), d(d_), r(r_) {
  if (n_x < 8) throw std::invalid_argument("ReactionDiffusionGrid: n_x must be >= 8");
  dx = (x_right - x_left) / n_x;
  ghost_weights[0] = lagrange_weights_at(-0.5);
  ghost_weights[1] = lagrange_weights_at(-1.5);
}

void ReactionDiffusionGrid::fill_ghosts(std::span<const double> phi, std::vector<double>& ext) const {
  ext.resize(n_x + 4);
  std::memcpy(ext.data() + 2, phi.data(), static_cast<std::size_t>(n_x) * sizeof(double));
  for (int k = 0; k < 2; ++k) {
    const auto& w = ghost_weights[k];
    ext[1 - k] = w[0] * phi_left + w[1] * phi[0] + w[2] * phi[1] + w[3] * phi[2] + w[4] * phi[3];
    ext[n_x + 2 + k] = w[0] * phi_right + w[1] * phi[n_x - 1] + w[2] * phi[n_x - 2] +
                       w[3] * phi[n_x - 3] + w[4] * phi[n_x - 4];
  }
}

FieldVector initial_condition(const ReactionDiffusionGrid& grid) {
  FieldVector out(grid.n_x);
  for (int i = 0; i < grid.n_x; ++i)
    out[i] = 0.5 * (1.0 + std::tanh(20.0 - 2.0 * grid.cell_center(i)));
  return out;
}

FieldVector advection_operator(std::span<const double> field, const ReactionDiffusionGrid& grid) {
  if (grid.n_x < 5) throw std::invalid_argument("advection_operator: grid too small");
  std::vector<double> g;
  grid.fill_ghosts(field, g);
  FieldVector out(grid.n_x);
  const double c = grid.a / (12.0 * grid.dx);
  for (int i = 0; i < grid.n_x; ++i) {
    const int k = i + 2;
    out[i] = c * (g[k - 2] - 8.0 * g[k - 1] + 8.0 * g[k + 1] - g[k + 2]);
  }
  return out;
}

FieldVector laplacian_operator(std::span<const double> field, const ReactionDiffusionGrid& grid) {
  if (grid.n_x < 5) throw std::invalid_argument("laplacian_operator: grid too small");
  std::vector<double> g;
  grid.fill_ghosts(field, g);
  FieldVector out(grid.n_x);
  const double c = grid.d / (12.0 * grid.dx * grid.dx);
  for (int i = 0; i < grid.n_x; ++i) {
    const int k = i + 2;
    out[i] = c * (-g[k - 2] + 16.0 * g[k - 1] - 30.0 * g[k] + 16.0 * g[k + 1] - g[k + 2]);
  }
  return out;
}

FieldVector reaction_term(std::span<const double> field, double r) {
  FieldVector out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double p = field[i];
    out[i] = r * p * (p - 1.0) * (p - 0.5);
  }
  return out;
}

FieldVector reaction_derivative(std::span<const double> field, double r) {
  FieldVector out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double p = field[i];
    out[i] = r * (3.0 * p * p - 3.0 * p + 0.5);
  }
  return out;
}

namespace {

// Laplacian stencil in ghost-extended index space, multiplied by d/(12 dx^2).
constexpr std::array<double, 5> kLapStencil{-1.0, 16.0, -30.0, 16.0, -1.0};

// Assembles (I - coef*d*Lap) with the ghost dependence folded into the band,
// and the Dirichlet contribution folded into the right-hand side.
void assemble_diffusion_system(double coef, std::span<const double> rhs,
                               const ReactionDiffusionGrid& grid, BandedMatrix& A,
                               std::vector<double>& b) {
  const int n = grid.n_x;
  const double c = coef * grid.d / (12.0 * grid.dx * grid.dx);
  b.assign(rhs.begin(), rhs.end());
  for (int i = 0; i < n; ++i) A.at(i, i) = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int o = -2; o <= 2; ++o) {
      const double s = -c * kLapStencil[o + 2];
      const int j = i + o;
      if (j >= 0 && j < n) {
        A.at(i, j) += s;
      } else if (j < 0) {
        const auto& w = grid.ghost_weights[-j - 1];
        for (int q = 0; q < 4; ++q) A.at(i, q) += s * w[q + 1];
        b[i] -= s * w[0] * grid.phi_left;
      } else {
        const auto& w = grid.ghost_weights[j - n];
        for (int q = 0; q < 4; ++q) A.at(i, n - 1 - q) += s * w[q + 1];
        b[i] -= s * w[0] * grid.phi_right;
      }
    }
  }
}

}  // namespace

FieldVector solve_diffusion_implicit(double coef, std::span<const double> rhs,
                                     const ReactionDiffusionGrid& grid) {
  if (static_cast<int>(rhs.size()) != grid.n_x)
    throw std::invalid_argument("solve_diffusion_implicit: size mismatch");
  if (coef == 0.0) return FieldVector(rhs.begin(), rhs.end());
  BandedMatrix A(grid.n_x, 3, 3);
  std::vector<double> b;
  assemble_diffusion_system(coef, rhs, grid, A, b);
  return banded_solve(A, b);
}

FieldVector solve_reaction_implicit(double coef, std::span<const double> rhs,
                                    const ReactionDiffusionGrid& grid) {
  if (static_cast<int>(rhs.size()) != grid.n_x)
    throw std::invalid_argument("solve_reaction_implicit: size mismatch");
  FieldVector out(grid.n_x);
  const double r = grid.r;
  for (int i = 0; i < grid.n_x; ++i) {
    const double bi = rhs[i];
    try {
      out[i] = newton_scalar(
          [&](double p) { return p - coef * r * p * (p - 1.0) * (p - 0.5) - bi; },
          [&](double p) { return 1.0 - coef * r * (3.0 * p * p - 3.0 * p + 0.5); }, bi);
    } catch (const std::exception& e) {
      throw SolveError("solve_reaction_implicit: cell " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

double l1_error(std::span<const double> field, std::span<const double> reference) {
  if (field.size() != reference.size()) throw std::invalid_argument("l1_error: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) s += std::abs(field[i] - reference[i]);
  return s / static_cast<double>(field.size());
}

void ReactionDiffusionProblem::eval_advection(std::span<const double> phi,
                                              std::span<double> out) const {
  const FieldVector v = advection_operator(phi, grid_);
  std::memcpy(out.data(), v.data(), v.size() * sizeof(double));
}

void ReactionDiffusionProblem::eval_diffusion(std::span<const double> phi,
                                              std::span<double> out) const {
  const FieldVector v = laplacian_operator(phi, grid_);
  std::memcpy(out.data(), v.data(), v.size() * sizeof(double));
}

void ReactionDiffusionProblem::eval_reaction(std::span<const double> phi,
                                             std::span<double> out) const {
  const FieldVector v = reaction_term(phi, grid_.r);
  std::memcpy(out.data(), v.data(), v.size() * sizeof(double));
}

void ReactionDiffusionProblem::solve_diffusion(double coef, std::span<const double> rhs,
                                               std::span<double> out) const {
  const FieldVector v = solve_diffusion_implicit(coef, rhs, grid_);
  std::memcpy(out.data(), v.data(), v.size() * sizeof(double));
}

void ReactionDiffusionProblem::solve_reaction(double coef, std::span<const double> rhs,
                                              std::span<double> out) const {
  const FieldVector v = solve_reaction_implicit(coef, rhs, grid_);
  std::memcpy(out.data(), v.data(), v.size() * sizeof(double));
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "field snapshot IO assumes a little-endian host");

constexpr char kMagic[4] = {'S', 'D', 'C', '1'};

}  // namespace

void write_field_snapshot(const std::string& path, int n_x, double dx,
                          std::span<const double> data) {
  if (static_cast<int>(data.size()) != n_x)
    throw std::invalid_argument("write_field_snapshot: size mismatch");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_field_snapshot: cannot open " + path);
  f.write(kMagic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(n_x);
  f.write(reinterpret_cast<const char*>(&n), sizeof(n));
  f.write(reinterpret_cast<const char*>(&dx), sizeof(dx));
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!f) throw std::runtime_error("write_field_snapshot: write failed for " + path);
}

FieldSnapshot read_field_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_field_snapshot: cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_field_snapshot: bad magic in " + path);
  std::uint32_t n = 0;
  FieldSnapshot snap;
  f.read(reinterpret_cast<char*>(&n), sizeof(n));
  f.read(reinterpret_cast<char*>(&snap.dx), sizeof(snap.dx));
  snap.n_x = static_cast<int>(n);
  snap.data.resize(n);
  f.read(reinterpret_cast<char*>(snap.data.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!f) throw std::runtime_error("read_field_snapshot: truncated file " + path);
  return snap;
}

}  // namespace cisdc
