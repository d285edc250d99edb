// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_DUAL_HPP
#define MDLAWSON_DUAL_HPP

///
/// \file dual.hpp
///
/// The dual function
///
///   d(w) = min  sum_l w_l sum_ij |f_ij(x_l) q(x_l) - p_ij(x_l)|^2
///          s.t. sum_l w_l |q(x_l)|^2 = 1
///
/// evaluated through its smallest-singular-value characterization: with
/// orthonormal bases Q_q (denominator, degree d) and P_ij (leading n_ij+1
/// columns of one degree-nu basis), sqrt(d(w)) is the smallest singular
/// value of the stacked matrix of blocks (I - P_ij P_ij^H) F_ij Q_q, ordered
/// column-major over (i, j). The right singular vector gives the denominator
/// coefficients b_hat in Q_q coordinates and a_hat_ij = P_ij^H F_ij Q_q b_hat.
///

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "mdlawson/arnoldi.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

/// |q(x)| below this marks r(x) non-finite.
inline constexpr double kDenominatorGuard = 1e-300;

struct DualEvaluation {
  double dual_value = 0.0;
  CVector denom_coeffs;               // b_hat, unit 2-norm
  std::vector<CVector> numer_coeffs;  // a_hat_ij at index i + j*s
  CVector denom_at_nodes;             // q(x_l) over active nodes
  MatrixSeries rational_at_nodes;     // r_ij(x_l) at all m nodes
  ArnoldiBasis denom_basis;
  ArnoldiBasis numer_basis;
  std::vector<Index> active_indices;  // sample indices with w_l in the active set
  std::vector<Index> vanishing_nodes;  // sample indices where |q| < kDenominatorGuard
  bool multiplicity_warning = false;  // two smallest singular values (nearly) tie
};

/// Active set: w_l > 0 and not w_l < weight_floor.
inline std::vector<Index> active_set(const WeightVector& w, double weight_floor) {
  std::vector<Index> active;
  for (Index l = 0; l < w.size(); ++l) {
    if (w[l] > 0.0 && !(w[l] < weight_floor)) active.push_back(l);
  }
  return active;
}

///
/// Evaluates numerator/denominator polynomials given in basis coordinates
/// at arbitrary nodes (via the Hessenberg recurrences) and forms p_ij / q.
/// Values where |q| falls under the guard come back as NaN and their
/// positions (mapped through `node_ids` when given) are appended to `vanishing`.
///
inline MatrixSeries evaluate_rational(const ArnoldiBasis& denom_basis,
                                      const ArnoldiBasis& numer_basis,
                                      const CVector& denom_coeffs,
                                      const std::vector<CVector>& numer_coeffs, Index s, Index t,
                                      std::span<const Complex> nodes,
                                      std::vector<Index>* vanishing = nullptr,
                                      const std::vector<Index>* node_ids = nullptr) {
  const CMatrix Lq = evaluate_basis(denom_basis, nodes);
  const CMatrix Lp = evaluate_basis(numer_basis, nodes);
  const CVector q = (Lq * denom_coeffs) / denom_basis.weight_norm;
  const Complex nan(std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN());

  MatrixSeries out(nodes.size(), CMatrix(s, t));
  std::vector<CVector> p(static_cast<std::size_t>(s * t));
  for (Index j = 0; j < t; ++j) {
    for (Index i = 0; i < s; ++i) {
      const CVector& a = numer_coeffs[static_cast<std::size_t>(i + j * s)];
      p[static_cast<std::size_t>(i + j * s)] =
          (Lp.leftCols(a.size()) * a) / numer_basis.weight_norm;
    }
  }
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    const Index row = static_cast<Index>(l);
    const bool bad = !(std::abs(q(row)) >= kDenominatorGuard);
    if (bad && vanishing != nullptr) {
      vanishing->push_back(node_ids != nullptr ? (*node_ids)[l] : row);
    }
    for (Index j = 0; j < t; ++j) {
      for (Index i = 0; i < s; ++i) {
        out[l](i, j) = bad ? nan : p[static_cast<std::size_t>(i + j * s)](row) / q(row);
      }
    }
  }
  return out;
}

///
/// Computes d(w) and its minimizer. Nodes outside the active set are
/// excluded from the orthogonalization; their rational values are recovered
/// through the basis recurrences.
///
/// Throws InfeasibleAfterFiltering when fewer than max(n_ij + d + 2) nodes
/// are active, and propagates Breakdown from the Arnoldi process.
///
inline DualEvaluation evaluate_dual(const SampleSet& samples, const DegreeSpec& degrees,
                                    const WeightVector& w, double weight_floor = 0.0) {
  validate(samples, degrees);
  if (w.size() != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length " + std::to_string(w.size()) +
                                                  " differs from sample count " +
                                                  std::to_string(samples.size()));
  }
  const Index s = samples.rows();
  const Index t = samples.cols();
  const int d = degrees.denominator();
  const int nu = degrees.max_numerator();

  DualEvaluation ev;
  ev.active_indices = active_set(w, weight_floor);
  const Index ma = static_cast<Index>(ev.active_indices.size());
  if (ma < degrees.required_samples()) {
    throw Error(ErrorCode::InfeasibleAfterFiltering,
                std::to_string(ma) + " active nodes left, need at least " +
                    std::to_string(degrees.required_samples()));
  }

  std::vector<Complex> x_act(static_cast<std::size_t>(ma));
  std::vector<double> w_act(static_cast<std::size_t>(ma));
  RVector inv_sqrt_w(ma);
  for (Index a = 0; a < ma; ++a) {
    const Index l = ev.active_indices[static_cast<std::size_t>(a)];
    x_act[static_cast<std::size_t>(a)] = samples.node(l);
    w_act[static_cast<std::size_t>(a)] = w[l];
    inv_sqrt_w(a) = 1.0 / std::sqrt(w[l]);
  }

  ev.denom_basis = orthogonalize(x_act, w_act, d);
  ev.numer_basis = orthogonalize(x_act, w_act, nu);
  const CMatrix& Qq = ev.denom_basis.q_columns;
  const CMatrix& Pnu = ev.numer_basis.q_columns;

  // Stacked projected matrix, blocks column-major over (i, j).
  const Index g = s * t;
  CMatrix stacked(g * ma, d + 1);
  std::vector<CVector> f_act(static_cast<std::size_t>(g));
  for (Index j = 0; j < t; ++j) {
    for (Index i = 0; i < s; ++i) {
      const Index b = i + j * s;
      CVector f(ma);
      for (Index a = 0; a < ma; ++a) {
        f(a) = samples(ev.active_indices[static_cast<std::size_t>(a)], i, j);
      }
      const auto P = Pnu.leftCols(degrees.numerator(i, j) + 1);
      CMatrix block = f.asDiagonal() * Qq;
      // Projecting twice keeps the block orthogonal to P to working precision.
      block -= P * (P.adjoint() * block);
      block -= P * (P.adjoint() * block);
      stacked.middleRows(b * ma, ma) = block;
      f_act[static_cast<std::size_t>(b)] = std::move(f);
    }
  }

  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double sigma_min = sv(d);
  ev.dual_value = sigma_min * sigma_min;
  ev.denom_coeffs = svd.matrixV().col(d);
  ev.multiplicity_warning = d >= 1 && (sv(d - 1) - sv(d)) < 1e-12 * sv(0);

  const CVector qb = Qq * ev.denom_coeffs;
  ev.denom_at_nodes = qb.cwiseProduct(inv_sqrt_w.cast<Complex>());

  ev.numer_coeffs.resize(static_cast<std::size_t>(g));
  std::vector<CVector> p_act(static_cast<std::size_t>(g));
  for (Index j = 0; j < t; ++j) {
    for (Index i = 0; i < s; ++i) {
      const Index b = i + j * s;
      const auto P = Pnu.leftCols(degrees.numerator(i, j) + 1);
      CVector a_hat = P.adjoint() * f_act[static_cast<std::size_t>(b)].cwiseProduct(qb);
      p_act[static_cast<std::size_t>(b)] = (P * a_hat).cwiseProduct(inv_sqrt_w.cast<Complex>());
      ev.numer_coeffs[static_cast<std::size_t>(b)] = std::move(a_hat);
    }
  }

  const Index m = samples.size();
  ev.rational_at_nodes.assign(static_cast<std::size_t>(m), CMatrix(s, t));
  const Complex nan(std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN());
  for (Index a = 0; a < ma; ++a) {
    const Index l = ev.active_indices[static_cast<std::size_t>(a)];
    const Complex q = ev.denom_at_nodes(a);
    const bool bad = !(std::abs(q) >= kDenominatorGuard);
    if (bad) ev.vanishing_nodes.push_back(l);
    for (Index j = 0; j < t; ++j) {
      for (Index i = 0; i < s; ++i) {
        ev.rational_at_nodes[static_cast<std::size_t>(l)](i, j) =
            bad ? nan : p_act[static_cast<std::size_t>(i + j * s)](a) / q;
      }
    }
  }

  if (ma < m) {
    std::vector<Index> filtered;
    std::vector<Complex> y;
    std::size_t next = 0;
    for (Index l = 0; l < m; ++l) {
      if (next < ev.active_indices.size() && ev.active_indices[next] == l) {
        ++next;
        continue;
      }
      filtered.push_back(l);
      y.push_back(samples.node(l));
    }
    MatrixSeries r = evaluate_rational(ev.denom_basis, ev.numer_basis, ev.denom_coeffs,
                                       ev.numer_coeffs, s, t, y, &ev.vanishing_nodes, &filtered);
    for (std::size_t f = 0; f < filtered.size(); ++f) {
      ev.rational_at_nodes[static_cast<std::size_t>(filtered[f])] = std::move(r[f]);
    }
    std::sort(ev.vanishing_nodes.begin(), ev.vanishing_nodes.end());
  }
  return ev;
}

}  // namespace mdlawson

#endif  // MDLAWSON_DUAL_HPP
