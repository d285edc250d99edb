// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_ARNOLDI_HPP
#define MDLAWSON_ARNOLDI_HPP

///
/// \file arnoldi.hpp
///
/// Vandermonde with Arnoldi: an orthonormal basis of the weighted Krylov space
///
///   span{ sqrt(w), X sqrt(w), ..., X^k sqrt(w) },   X = diag(x),
///
/// built by an Arnoldi recurrence so that the ill-conditioned monomial
/// Vandermonde matrix is never formed. The recurrence
///
///   X Q = Q H + gamma q_next e_{k+1}^T
///
/// carries everything needed to evaluate the same basis at new nodes: running
/// it with Y = diag(y) from the all-ones column gives L with Phi(y) = L R for
/// the (never materialized) triangular factor R.
///

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

struct ArnoldiBasis {
  CMatrix q_columns;        // m x (k+1), orthonormal; empty when restored from a document
  CMatrix hessenberg;       // (k+1) x (k+1), upper Hessenberg
  Complex breakout{0.0, 0.0};  // gamma_{k+1}
  CVector next_column;      // q_{k+2}; empty when restored from a document
  double weight_norm = 1.0;  // ||sqrt(w)||_2
  int degree = 0;
  std::vector<Complex> active_nodes;
};

namespace detail {

inline double node_scale(std::span<const Complex> nodes) {
  double scale = 1.0;
  for (const Complex& x : nodes) scale = std::max(scale, std::abs(x));
  return scale;
}

}  // namespace detail

/// Subdiagonal entries of H at or below this value count as rank deficiency.
inline double breakdown_tolerance(std::span<const Complex> nodes) {
  return 1e-14 * detail::node_scale(nodes);
}

///
/// Orthonormalizes the weighted Krylov columns of degree k. Modified
/// Gram-Schmidt with one full reorthogonalization pass; both passes
/// accumulate into H.
///
/// Throws Breakdown if a subdiagonal entry of H is at or below
/// breakdown_tolerance(nodes).
///
inline ArnoldiBasis orthogonalize(std::span<const Complex> nodes, std::span<const double> weights,
                                  int degree) {
  const Index m = static_cast<Index>(nodes.size());
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (static_cast<Index>(weights.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "nodes and weights differ in length");
  }
  if (m < degree + 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least degree+1 = " +
                                                std::to_string(degree + 1) + " nodes, got " +
                                                std::to_string(m));
  }
  for (Index l = 0; l < m; ++l) {
    if (!(weights[static_cast<std::size_t>(l)] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "weight " + std::to_string(l) + " is not positive");
    }
  }

  const Index k = degree;
  const double tol = breakdown_tolerance(nodes);

  ArnoldiBasis basis;
  basis.degree = degree;
  basis.active_nodes.assign(nodes.begin(), nodes.end());
  basis.q_columns.resize(m, k + 1);
  basis.hessenberg = CMatrix::Zero(k + 1, k + 1);

  CVector x(m);
  RVector sqrt_w(m);
  for (Index l = 0; l < m; ++l) {
    x(l) = nodes[static_cast<std::size_t>(l)];
    sqrt_w(l) = std::sqrt(weights[static_cast<std::size_t>(l)]);
  }
  basis.weight_norm = sqrt_w.norm();
  basis.q_columns.col(0) = (sqrt_w / basis.weight_norm).cast<Complex>();

  CMatrix& Q = basis.q_columns;
  CMatrix& H = basis.hessenberg;
  for (Index j = 0; j <= k; ++j) {
    CVector v = x.cwiseProduct(Q.col(j));
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i <= j; ++i) {
        const Complex c = Q.col(i).dot(v);
        H(i, j) += c;
        v -= c * Q.col(i);
      }
    }
    const double beta = v.norm();
    if (j < k) {
      if (beta <= tol) {
        throw Error(ErrorCode::Breakdown,
                    "weighted Krylov sequence lost rank at column " + std::to_string(j + 1) +
                        " (subdiagonal " + std::to_string(beta) + ")");
      }
      H(j + 1, j) = beta;
      Q.col(j + 1) = v / beta;
    } else if (beta > tol) {
      basis.breakout = beta;
      basis.next_column = v / beta;
    } else {
      // Square case (m = k+1): the Krylov space is exhausted.
      basis.breakout = 0.0;
      basis.next_column = CVector::Zero(m);
    }
  }
  return basis;
}

///
/// Runs the stored Hessenberg recurrence at new nodes. Column 0 is all ones;
/// column j+1 solves the recurrence for its subdiagonal term.
///
inline CMatrix evaluate_basis(const ArnoldiBasis& basis, std::span<const Complex> new_nodes) {
  const Index k = basis.degree;
  const Index n = static_cast<Index>(new_nodes.size());
  if (basis.hessenberg.rows() != k + 1 || basis.hessenberg.cols() != k + 1) {
    throw Error(ErrorCode::DimensionMismatch, "Hessenberg matrix does not match the degree");
  }
  const double tol = breakdown_tolerance(basis.active_nodes);
  const CMatrix& H = basis.hessenberg;

  CVector y(n);
  for (Index l = 0; l < n; ++l) y(l) = new_nodes[static_cast<std::size_t>(l)];

  CMatrix L(n, k + 1);
  L.col(0).setOnes();
  for (Index j = 0; j < k; ++j) {
    const Complex sub = H(j + 1, j);
    if (std::abs(sub) <= tol) {
      throw Error(ErrorCode::Breakdown,
                  "subdiagonal entry " + std::to_string(j + 1) + " of H is below tolerance");
    }
    CVector v = y.cwiseProduct(L.col(j));
    for (Index i = 0; i <= j; ++i) v -= H(i, j) * L.col(i);
    L.col(j + 1) = v / sub;
  }
  return L;
}

}  // namespace mdlawson

#endif  // MDLAWSON_ARNOLDI_HPP
