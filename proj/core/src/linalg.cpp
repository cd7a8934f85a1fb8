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

#include "cisdc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cisdc {

LuFactors lu_factor_dense(const DenseMatrix& A, bool pivoting) {
  if (A.rows() != A.cols()) throw std::invalid_argument("lu_factor_dense: matrix not square");
  const int n = A.rows();
  LuFactors f;
  f.lu = A;
  f.pivoting = pivoting;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  DenseMatrix& lu = f.lu;

  for (int k = 0; k < n; ++k) {
    if (pivoting) {
      int p = k;
      double best = std::abs(lu(k, k));
      for (int i = k + 1; i < n; ++i) {
        if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); p = i; }
      }
      if (p != k) {
        for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
        std::swap(f.perm[k], f.perm[p]);
      }
    }
    const double pivot = lu(k, k);
    if (pivot == 0.0) {
      throw FactorizationError("lu_factor_dense: zero pivot at index " + std::to_string(k));
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = lu(i, k) / pivot;
      lu(i, k) = m;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return f;
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) {
  const int n = f.lu.rows();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("lu_solve: size mismatch");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 0; i < n; ++i) {        // L y = P b
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {   // U x = y
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

BandedMatrix::BandedMatrix(int n, int lower_bw, int upper_bw)
    : n_(n), lower_(lower_bw), upper_(upper_bw),
      a_(static_cast<std::size_t>(lower_bw + upper_bw + 1) * n, 0.0) {
  if (n <= 0) throw std::invalid_argument("BandedMatrix: size must be positive");
  if (lower_bw >= n || upper_bw >= n || lower_bw < 0 || upper_bw < 0)
    throw std::invalid_argument("BandedMatrix: bandwidths must be in [0, n)");
}

double& BandedMatrix::at(int i, int j) {
  if (!in_band(i, j)) throw std::out_of_range("BandedMatrix::at outside band");
  return a_[static_cast<std::size_t>(j - i + lower_) * n_ + i];
}

double BandedMatrix::at(int i, int j) const {
  if (!in_band(i, j)) throw std::out_of_range("BandedMatrix::at outside band");
  return a_[static_cast<std::size_t>(j - i + lower_) * n_ + i];
}

void BandedMatrix::apply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const int j0 = std::max(0, i - lower_);
    const int j1 = std::min(n_ - 1, i + upper_);
    for (int j = j0; j <= j1; ++j) s += a_[static_cast<std::size_t>(j - i + lower_) * n_ + i] * x[j];
    y[i] = s;
  }
}

std::vector<double> banded_solve(const BandedMatrix& A, std::span<const double> b) {
  const int n = A.size();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("banded_solve: size mismatch");
  const int kl = A.lower_bw();
  const int ku = A.upper_bw();
  // Working band with kl extra superdiagonals for pivoting fill-in.
  // Row-major working array W[i][c], c = j - i + kl, 0 <= c < kl + (ku+kl) + 1.
  const int width = 2 * kl + ku + 1;
  std::vector<double> w(static_cast<std::size_t>(n) * width, 0.0);
  auto W = [&](int i, int j) -> double& {
    return w[static_cast<std::size_t>(i) * width + (j - i + kl)];
  };
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - kl);
    const int j1 = std::min(n - 1, i + ku);
    for (int j = j0; j <= j1; ++j) W(i, j) = A.at(i, j);
  }
  std::vector<double> x(b.begin(), b.end());
  std::vector<int> piv(n);

  for (int k = 0; k < n; ++k) {
    const int last = std::min(n - 1, k + kl);
    int p = k;
    double best = std::abs(W(k, k));
    for (int i = k + 1; i <= last; ++i) {
      if (std::abs(W(i, k)) > best) { best = std::abs(W(i, k)); p = i; }
    }
    if (best == 0.0) throw SolveError("banded_solve: singular band at column " + std::to_string(k));
    piv[k] = p;
    const int jmax = std::min(n - 1, k + kl + ku);
    if (p != k) {
      for (int j = k; j <= jmax; ++j) std::swap(W(k, j), W(p, j));
      std::swap(x[k], x[p]);
    }
    const double pivot = W(k, k);
    for (int i = k + 1; i <= last; ++i) {
      const double m = W(i, k) / pivot;
      if (m != 0.0) {
        for (int j = k + 1; j <= jmax; ++j) W(i, j) -= m * W(k, j);
        x[i] -= m * x[k];
      }
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    const int jmax = std::min(n - 1, i + kl + ku);
    for (int j = i + 1; j <= jmax; ++j) s -= W(i, j) * x[j];
    x[i] = s / W(i, i);
  }
  return x;
}

namespace {

// Householder reduction of a square matrix to upper Hessenberg form, in place.
void hessenberg_reduce(DenseMatrix& h) {
  const int n = h.rows();
  std::vector<double> v(n);
  for (int k = 1; k < n - 1; ++k) {
    double scale = 0.0;
    for (int i = k; i < n; ++i) scale += std::abs(h(i, k - 1));
    if (scale == 0.0) continue;
    double ssq = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = h(i, k - 1) / scale;
      ssq += v[i] * v[i];
    }
    double alpha = std::sqrt(ssq);
    if (v[k] > 0.0) alpha = -alpha;
    const double beta = ssq - v[k] * alpha;
    if (beta == 0.0) continue;
    v[k] -= alpha;
    // Apply P = I - v v^T / beta from both sides.
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[i] * h(i, j);
      s /= beta;
      for (int i = k; i < n; ++i) h(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += h(i, j) * v[j];
      s /= beta;
      for (int j = k; j < n; ++j) h(i, j) -= s * v[j];
    }
    h(k, k - 1) = scale * alpha;
    for (int i = k + 1; i < n; ++i) h(i, k - 1) = 0.0;
  }
}

}  // namespace

double spectral_radius(const DenseMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
  const int n = A.rows();
  if (n == 0) throw std::invalid_argument("spectral_radius: empty matrix");
  for (double v : A.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("spectral_radius: non-finite entry");
  }
  if (n == 1) return std::abs(A(0, 0));

  DenseMatrix h = A;
  hessenberg_reduce(h);

  // Francis double-shift QR on the Hessenberg matrix, eigenvalues only
  // (hqr lineage).
  const double eps = std::numeric_limits<double>::epsilon();
  const long cap = 10000L * n;
  long iters = 0;
  double rho = 0.0;
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j < n; ++j) anorm += std::abs(h(i, j));
  if (anorm == 0.0) return 0.0;

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        const double thr = (s == 0.0 ? anorm : s) * eps;
        if (std::abs(h(l, l - 1)) <= thr) { h(l, l - 1) = 0.0; break; }
      }
      double x = h(nn, nn);
      if (l == nn) {  // one real eigenvalue
        rho = std::max(rho, std::abs(x + t));
        --nn;
        break;
      }
      double y = h(nn - 1, nn - 1);
      double w = h(nn, nn - 1) * h(nn - 1, nn);
      if (l == nn - 1) {  // a 2x2 block: real pair or complex conjugates
        const double p2 = 0.5 * (y - x);
        const double q2 = p2 * p2 + w;
        const double z2 = std::sqrt(std::abs(q2));
        x += t;
        if (q2 >= 0.0) {
          const double zz = p2 + (p2 >= 0.0 ? z2 : -z2);
          rho = std::max(rho, std::abs(x + zz));
          if (zz != 0.0) rho = std::max(rho, std::abs(x - w / zz));
        } else {
          rho = std::max(rho, std::hypot(x + p2, z2));
        }
        nn -= 2;
        break;
      }
      if (iters++ >= cap) {
        throw NumericError("spectral_radius: QR iteration cap reached, residual " +
                           std::to_string(std::abs(h(nn, nn - 1))));
      }
      if (its == 10 || its == 20) {  // exceptional shift
        t += x;
        for (int i = 0; i <= nn; ++i) h(i, i) -= x;
        const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      // Two consecutive small subdiagonals let the step start at row m.
      int m;
      double p = 0.0, q = 0.0, r = 0.0;
      for (m = nn - 2; m >= l; --m) {
        const double z = h(m, m);
        const double rr = x - z;
        const double ss = y - z;
        p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - rr - ss;
        r = h(m + 2, m + 1);
        const double scl = std::abs(p) + std::abs(q) + std::abs(r);
        p /= scl; q /= scl; r /= scl;
        if (m == l) break;
        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m + 2; i <= nn; ++i) h(i, i - 2) = 0.0;
      for (int i = m + 3; i <= nn; ++i) h(i, i - 3) = 0.0;
      for (int k = m; k <= nn - 1; ++k) {  // double QR step on rows l..nn
        double scl = 0.0;
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
          scl = std::abs(p) + std::abs(q) + std::abs(r);
          if (scl != 0.0) { p /= scl; q /= scl; r /= scl; }
        }
        double s = std::sqrt(p * p + q * q + r * r);
        if (p < 0.0) s = -s;
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) h(k, k - 1) = -h(k, k - 1);
        } else {
          h(k, k - 1) = -s * scl;
        }
        p += s;
        const double xh = p / s;
        const double yh = q / s;
        const double zh = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {  // row modification
          double pp = h(k, j) + q * h(k + 1, j);
          if (k != nn - 1) {
            pp += r * h(k + 2, j);
            h(k + 2, j) -= pp * zh;
          }
          h(k + 1, j) -= pp * yh;
          h(k, j) -= pp * xh;
        }
        const int mmin = std::min(nn, k + 3);
        for (int i = l; i <= mmin; ++i) {  // column modification
          double pp = xh * h(i, k) + yh * h(i, k + 1);
          if (k != nn - 1) {
            pp += zh * h(i, k + 2);
            h(i, k + 2) -= pp * r;
          }
          h(i, k + 1) -= pp * q;
          h(i, k) -= pp;
        }
      }
    } while (l < nn - 1);
  }
  return rho;
}

double newton_scalar(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double guess, const NewtonOptions& opt) {
  double x = guess;
  for (int it = 0; it < opt.max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= opt.tol) return x;
    const double d = df(x);
    if (std::abs(d) < 1e-300) {
      throw SolveError("newton_scalar: singular jacobian at x = " + std::to_string(x));
    }
    const double step = fx / d;
    x -= step;
    if (std::abs(step) <= opt.tol * (1.0 + std::abs(x))) return x;
  }
  throw NumericError("newton_scalar: no convergence in " + std::to_string(opt.max_iter) + " iterations");
}

}  // namespace cisdc
