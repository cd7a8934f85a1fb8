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

#ifndef CISDC_QUADRATURE_HPP_
#define CISDC_QUADRATURE_HPP_

#include <vector>

#include "cisdc/linalg.hpp"

namespace cisdc {

//! Gauss-Lobatto node set on the normalized step [0,1].
//!
//! M is the number of subintervals; tau holds the M+1 node positions with
//! tau[0]=0 and tau[M]=1, and dtau[m] = tau[m+1]-tau[m].
struct NodeSet {
  int M = 0;
  std::vector<double> tau;
  std::vector<double> dtau;
};

//! Choice of the explicit (forward-Euler) correction matrix.
//!
//! `literal`: only entry (m+1, m) of each row is nonzero, equal to dtau[m].
//! `cumulative`: row m+1 carries dtau[j] for every column j <= m, the
//! composite forward-Euler rule written in zero-to-node form.
enum class EulerConvention { literal, cumulative };

//! Integration matrices of the SDC sweeps for one node set.
//!
//! Q (M x M+1) integrates from node 0 to node m+1; q is its first column and
//! Qt the trailing M x M block. S (M x M+1) integrates node-to-node. QtI is
//! the lower-triangular implicit matrix U^T from the unpivoted LU of Qt^T,
//! and QtE the explicit matrix under `convention`.
struct QuadratureTables {
  NodeSet nodes;
  DenseMatrix Q;   // M x (M+1)
  std::vector<double> q;
  DenseMatrix Qt;  // M x M
  DenseMatrix S;   // M x (M+1)
  DenseMatrix QtI; // M x M, lower triangular
  DenseMatrix QtE; // M x M, strictly lower triangular
  EulerConvention euler_convention = EulerConvention::literal;
};

//! Gauss-Lobatto nodes for M >= 1 subintervals; interior points are the
//! roots of the derivative of the degree-M Legendre polynomial.
//! Throws std::invalid_argument for M = 0.
NodeSet gauss_lobatto_nodes(int M);

//! Zero-to-node weights q_{m+1,j} = integral of the Lagrange basis L_j over
//! [0, tau[m+1]], by exact monomial integration.
DenseMatrix build_Q(const NodeSet& nodes);

//! Node-to-node weights s_{m+1,j}; equals the rowwise difference of Q.
DenseMatrix build_S(const NodeSet& nodes);

//! Implicit weights: U^T from the Doolittle factorization Qt^T = L U without
//! pivoting. Throws FactorizationError on a zero pivot.
DenseMatrix build_QtI(const DenseMatrix& Qt);

//! Explicit forward-Euler weights under the given convention.
DenseMatrix build_QtE(const NodeSet& nodes, EulerConvention convention);

//! Builds the complete table set for M subintervals.
QuadratureTables make_quadrature_tables(int M, EulerConvention convention = EulerConvention::literal);

}  // namespace cisdc

#endif  // CISDC_QUADRATURE_HPP_
