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

#ifndef CISDC_LINALG_HPP_
#define CISDC_LINALG_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cisdc/errors.hpp"

namespace cisdc {

//! Small dense row-major matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int n_rows, int n_cols, double fill = 0.0)
      : rows_(n_rows), cols_(n_cols), a_(static_cast<std::size_t>(n_rows) * n_cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::span<const double> row(int i) const { return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

//! LU factors of a square matrix, Doolittle form (unit-diagonal L).
//! With pivoting, perm holds the row permutation: P A = L U.
struct LuFactors {
  DenseMatrix lu;          // L below the diagonal, U on and above
  std::vector<int> perm;   // identity when pivoting was off
  bool pivoting = false;
};

//! Doolittle LU factorization. With pivoting off, a zero pivot throws
//! FactorizationError naming the pivot index.
LuFactors lu_factor_dense(const DenseMatrix& A, bool pivoting);

//! Back/forward substitution with precomputed factors.
std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b);

//! Banded square matrix in diagonal storage: element (i,j) with
//! -lower_bw <= j-i <= upper_bw lives at band(j-i+lower_bw, i).
class BandedMatrix {
 public:
  BandedMatrix(int n, int lower_bw, int upper_bw);

  int size() const { return n_; }
  int lower_bw() const { return lower_; }
  int upper_bw() const { return upper_; }
  //! Access element (i,j); (i,j) must lie inside the band.
  double& at(int i, int j);
  double at(int i, int j) const;
  bool in_band(int i, int j) const {
    int k = j - i;
    return k >= -lower_ && k <= upper_;
  }
  //! y = A x
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  int n_, lower_, upper_;
  std::vector<double> a_;  // (lower+upper+1) x n
};

//! Direct banded solve (LU with partial pivoting inside the band).
//! Throws SolveError on a singular band.
std::vector<double> banded_solve(const BandedMatrix& A, std::span<const double> b);

//! Spectral radius of a small dense matrix via Householder reduction to
//! Hessenberg form followed by the Francis double-shift QR iteration.
//! Throws NumericError when the QR iteration exceeds 10000*n steps,
//! reporting the residual subdiagonal magnitude.
double spectral_radius(const DenseMatrix& A);

struct NewtonOptions {
  double tol = 1e-14;
  int max_iter = 50;
};

//! Scalar Newton iteration. Converged when |f(x)| <= tol or the step
//! magnitude is <= tol*(1+|x|). Throws SolveError when the derivative
//! magnitude falls below 1e-300, NumericError when the cap is reached.
double newton_scalar(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double guess, const NewtonOptions& opt = {});

}  // namespace cisdc

#endif  // CISDC_LINALG_HPP_
