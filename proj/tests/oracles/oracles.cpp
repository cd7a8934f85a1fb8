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

#include "oracles/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace cisdc::oracles {

void legendre_poly(int M, double x, double& p, double& dp) {
  // Build monomial coefficients of P_M by the recurrence
  // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}, then evaluate by Horner.
  std::vector<double> pm1{1.0};     // P_0
  std::vector<double> pm{0.0, 1.0}; // P_1
  if (M == 0) { p = 1.0; dp = 0.0; return; }
  for (int k = 2; k <= M; ++k) {
    std::vector<double> pk(k + 1, 0.0);
    for (std::size_t i = 0; i < pm.size(); ++i) pk[i + 1] += (2.0 * k - 1.0) / k * pm[i];
    for (std::size_t i = 0; i < pm1.size(); ++i) pk[i] -= (k - 1.0) / k * pm1[i];
    pm1 = pm;
    pm = pk;
  }
  double v = 0.0, d = 0.0;
  for (int i = static_cast<int>(pm.size()) - 1; i >= 0; --i) {
    d = d * x + v;
    v = v * x + pm[i];
  }
  p = v;
  dp = d;
}

std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
    if (A[piv][k] == 0.0) throw std::runtime_error("oracle dense_solve: singular");
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double m = A[i][k] / A[k][k];
      for (int j = k; j < n; ++j) A[i][j] -= m * A[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

std::vector<double> collocation_fixed_point(const QuadratureTables& tables, double s, double dt,
                                            double phi0) {
  const int M = tables.nodes.M;
  std::vector<std::vector<double>> A(M, std::vector<double>(M, 0.0));
  std::vector<double> b(M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) A[i][j] = (i == j ? 1.0 : 0.0) - dt * s * tables.Qt(i, j);
    b[i] = phi0 * (1.0 + dt * s * tables.q[i]);
  }
  return dense_solve(std::move(A), std::move(b));
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::invalid_argument("oracle bisect: no sign change");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0 || (hi - lo) < tol) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cisdc::oracles
