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

#include "cisdc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cisdc {

namespace {

// P_M and P'_M at x by the three-term recurrence.
void legendre_and_derivative(int M, double x, double& p, double& dp) {
  double pm1 = 1.0, pm = x;
  if (M == 0) { p = 1.0; dp = 0.0; return; }
  for (int k = 2; k <= M; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * pm - (k - 1.0) * pm1) / k;
    pm1 = pm;
    pm = pk;
  }
  p = pm;
  dp = M * (x * pm - pm1) / (x * x - 1.0);
}

}  // namespace

NodeSet gauss_lobatto_nodes(int M) {
  if (M < 1) throw std::invalid_argument("gauss_lobatto_nodes: M must be >= 1");
  NodeSet ns;
  ns.M = M;
  ns.tau.resize(M + 1);
  std::vector<double> x(M + 1);  // nodes on [-1,1]
  x[0] = -1.0;
  x[M] = 1.0;
  // Interior nodes: roots of P'_M. Newton from the Chebyshev-Gauss-Lobatto
  // guesses, which interlace correctly for all practical M.
  for (int i = 1; i < M; ++i) {
    double xi = -std::cos(M_PI * i / M);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre_and_derivative(M, xi, p, dp);
      // d/dx P'_M from the Legendre ODE: (1-x^2) P'' = 2x P' - M(M+1) P
      const double ddp = (2.0 * xi * dp - M * (M + 1.0) * p) / (1.0 - xi * xi);
      const double step = dp / ddp;
      xi -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(xi))) break;
    }
    x[i] = xi;
  }
  // Enforce exact symmetry about the midpoint.
  for (int i = 0; i <= M / 2; ++i) {
    const double s = 0.5 * (x[i] - x[M - i]);
    x[i] = s;
    x[M - i] = -s;
  }
  if (M % 2 == 0) x[M / 2] = 0.0;
  for (int i = 0; i <= M; ++i) ns.tau[i] = 0.5 * (x[i] + 1.0);
  ns.tau[0] = 0.0;
  ns.tau[M] = 1.0;
  ns.dtau.resize(M);
  for (int m = 0; m < M; ++m) ns.dtau[m] = ns.tau[m + 1] - ns.tau[m];
  return ns;
}

DenseMatrix build_Q(const NodeSet& nodes) {
  const int M = nodes.M;
  DenseMatrix Q(M, M + 1);
  // Lagrange basis L_j expanded to monomial coefficients, integrated
  // analytically from 0 to tau[m+1].
  for (int j = 0; j <= M; ++j) {
    std::vector<double> coef{1.0};  // ascending powers
    double denom = 1.0;
    for (int i = 0; i <= M; ++i) {
      if (i == j) continue;
      std::vector<double> next(coef.size() + 1, 0.0);
      for (std::size_t c = 0; c < coef.size(); ++c) {
        next[c + 1] += coef[c];
        next[c] -= nodes.tau[i] * coef[c];
      }
      coef = std::move(next);
      denom *= nodes.tau[j] - nodes.tau[i];
    }
    for (int m = 0; m < M; ++m) {
      const double t = nodes.tau[m + 1];
      double integral = 0.0;
      double tp = t;
      for (std::size_t c = 0; c < coef.size(); ++c) {
        integral += coef[c] * tp / static_cast<double>(c + 1);
        tp *= t;
      }
      Q(m, j) = integral / denom;
    }
  }
  return Q;
}

DenseMatrix build_S(const NodeSet& nodes) {
  const DenseMatrix Q = build_Q(nodes);
  const int M = nodes.M;
  DenseMatrix S(M, M + 1);
  for (int j = 0; j <= M; ++j) {
    S(0, j) = Q(0, j);
    for (int m = 1; m < M; ++m) S(m, j) = Q(m, j) - Q(m - 1, j);
  }
  return S;
}

DenseMatrix build_QtI(const DenseMatrix& Qt) {
  const int M = Qt.rows();
  if (Qt.cols() != M) throw std::invalid_argument("build_QtI: Qt must be square");
  DenseMatrix At(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) At(i, j) = Qt(j, i);
  const LuFactors f = lu_factor_dense(At, /*pivoting=*/false);
  DenseMatrix QtI(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = i; j < M; ++j) QtI(j, i) = f.lu(i, j);  // U^T
  return QtI;
}

DenseMatrix build_QtE(const NodeSet& nodes, EulerConvention convention) {
  const int M = nodes.M;
  DenseMatrix QtE(M, M);
  for (int m = 1; m < M; ++m) {  // row m+1 has index m; columns 1..M map to 0..M-1
    if (convention == EulerConvention::literal) {
      QtE(m, m - 1) = nodes.dtau[m];
    } else {
      for (int j = 1; j <= m; ++j) QtE(m, j - 1) = nodes.dtau[j];
    }
  }
  return QtE;
}

QuadratureTables make_quadrature_tables(int M, EulerConvention convention) {
  QuadratureTables tb;
  tb.nodes = gauss_lobatto_nodes(M);
  tb.Q = build_Q(tb.nodes);
  tb.q.resize(M);
  tb.Qt = DenseMatrix(M, M);
  for (int m = 0; m < M; ++m) {
    tb.q[m] = tb.Q(m, 0);
    for (int j = 1; j <= M; ++j) tb.Qt(m, j - 1) = tb.Q(m, j);
  }
  tb.S = build_S(tb.nodes);
  tb.QtI = build_QtI(tb.Qt);
  tb.QtE = build_QtE(tb.nodes, convention);
  tb.euler_convention = convention;
  return tb;
}

}  // namespace cisdc
