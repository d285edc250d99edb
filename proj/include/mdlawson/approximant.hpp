// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_APPROXIMANT_HPP
#define MDLAWSON_APPROXIMANT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdlawson/arnoldi.hpp"
#include "mdlawson/dual.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

///
/// Matrix-valued rational function R = P / q in orthonormal-basis
/// coordinates. Only the Hessenberg recurrences of the two bases are needed
/// to evaluate it, so a restored approximant carries no Q columns.
///
struct RationalApproximant {
  DegreeSpec degrees;
  CVector denom_coeffs;               // b_hat
  std::vector<CVector> numer_coeffs;  // a_hat_ij at index i + j*s
  ArnoldiBasis denom_basis;           // degree d
  ArnoldiBasis numer_basis;           // degree nu
  std::optional<WeightVector> fit_weights;

  Index rows() const { return degrees.rows(); }
  Index cols() const { return degrees.cols(); }
  const CVector& numerator(Index i, Index j) const {
    return numer_coeffs[static_cast<std::size_t>(i + j * rows())];
  }
};

inline RationalApproximant make_approximant(const DegreeSpec& degrees, const DualEvaluation& ev,
                                            const WeightVector& weights) {
  RationalApproximant r;
  r.degrees = degrees;
  r.denom_coeffs = ev.denom_coeffs;
  r.numer_coeffs = ev.numer_coeffs;
  r.denom_basis = ev.denom_basis;
  r.numer_basis = ev.numer_basis;
  r.fit_weights = weights;
  return r;
}

/// q(y) in the same normalization the fit used (sum_l w_l |q(x_l)|^2 = 1).
inline CVector evaluate_denominator(const RationalApproximant& approx,
                                    std::span<const Complex> nodes) {
  return (evaluate_basis(approx.denom_basis, nodes) * approx.denom_coeffs) /
         approx.denom_basis.weight_norm;
}

///
/// R(y_l) for every node. Entries where the denominator vanishes are NaN and
/// the node positions are reported through `vanishing` when given.
///
inline MatrixSeries evaluate(const RationalApproximant& approx, std::span<const Complex> nodes,
                             std::vector<Index>* vanishing = nullptr) {
  if (approx.denom_coeffs.size() != approx.degrees.denominator() + 1 ||
      static_cast<Index>(approx.numer_coeffs.size()) != approx.degrees.entry_count()) {
    throw Error(ErrorCode::DimensionMismatch, "approximant coefficients do not match its degrees");
  }
  return evaluate_rational(approx.denom_basis, approx.numer_basis, approx.denom_coeffs,
                           approx.numer_coeffs, approx.rows(), approx.cols(), nodes, vanishing);
}

struct Diagnostics {
  double max_sq_error = 0.0;
  double relative_gap = 0.0;
  double slackness_residual = 0.0;  // NaN when the fit carries no weights
  std::vector<Index> extreme_points;
  double denominator_min_abs = 0.0;
};

inline constexpr double kDefaultExtremeTol = 1e-3;
inline constexpr double kDefaultGapFloor = 1e-15;

///
/// Optimality diagnostics of a fit against its data: relative duality gap,
/// complementary slackness max_l |w_l (e(R) - ||F - R||_F^2)|, the nodes
/// within a relative `extreme_tol` of the maximum error, and min |q(x_l)|.
/// When e(R) is below `gap_floor` the gap is reported as 0.
///
inline Diagnostics diagnose(const RationalApproximant& approx, const SampleSet& samples,
                            double dual_value, double extreme_tol = kDefaultExtremeTol,
                            double gap_floor = kDefaultGapFloor) {
  if (!(extreme_tol > 0.0 && extreme_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "extreme_tol must lie in (0, 1)");
  }
  if (samples.rows() != approx.rows() || samples.cols() != approx.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "sample shape differs from approximant shape");
  }
  if (approx.fit_weights && approx.fit_weights->size() != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "fit weights cover " + std::to_string(approx.fit_weights->size()) +
                    " nodes, samples have " + std::to_string(samples.size()));
  }

  const ErrorReport err = compute_errors(samples, evaluate(approx, samples.nodes()));
  Diagnostics diag;
  const double e = err.max_sq_error;
  diag.max_sq_error = e;
  diag.relative_gap = e < gap_floor ? 0.0 : relative_gap(e, dual_value);

  if (approx.fit_weights) {
    double slack = 0.0;
    for (Index l = 0; l < samples.size(); ++l) {
      const double fro = err.per_node_fro[static_cast<std::size_t>(l)];
      slack = std::max(slack, std::abs((*approx.fit_weights)[l] * (e - fro * fro)));
    }
    diag.slackness_residual = slack;
  } else {
    diag.slackness_residual = std::numeric_limits<double>::quiet_NaN();
  }

  const double threshold = (1.0 - extreme_tol) * e;
  for (Index l = 0; l < samples.size(); ++l) {
    const double fro = err.per_node_fro[static_cast<std::size_t>(l)];
    if (fro * fro >= threshold) diag.extreme_points.push_back(l);
  }

  const CVector q = evaluate_denominator(approx, samples.nodes());
  diag.denominator_min_abs = q.cwiseAbs().minCoeff();
  return diag;
}

}  // namespace mdlawson

#endif  // MDLAWSON_APPROXIMANT_HPP
