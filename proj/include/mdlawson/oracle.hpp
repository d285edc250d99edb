// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_ORACLE_HPP
#define MDLAWSON_ORACLE_HPP

///
/// \file oracle.hpp
///
/// Slow dense reference computations on explicit monomial Vandermonde
/// matrices. They share no code path with the Arnoldi based solver and are
/// only trustworthy on small, well-conditioned instances; the size guards
/// below are hard limits.
///

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

/// Generalized eigenproblem (A_w, B_w) over the stacked coefficients [a; b].
struct DensePencil {
  CMatrix a_matrix;
  CMatrix b_matrix;
};

namespace oracle {

inline constexpr Index kMaxDualSamples = 64;
inline constexpr int kMaxDualDegree = 8;
inline constexpr Index kMaxProjectorSamples = 16;
inline constexpr int kMaxProjectorDegree = 6;
inline constexpr double kMaxCondition = 1e12;

/// [1, x, ..., x^degree] evaluated row-wise.
inline CMatrix vandermonde(std::span<const Complex> nodes, int degree) {
  const Index m = static_cast<Index>(nodes.size());
  CMatrix V(m, degree + 1);
  for (Index l = 0; l < m; ++l) {
    Complex p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V(l, k) = p;
      p *= nodes[static_cast<std::size_t>(l)];
    }
  }
  return V;
}

inline double condition_number(const CMatrix& A) {
  Eigen::JacobiSVD<CMatrix> svd(A);
  const RVector& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

namespace detail {

inline void require_conditioned(const CMatrix& A, const char* what) {
  const double cond = condition_number(A);
  if (!(cond <= kMaxCondition)) {
    throw Error(ErrorCode::IllConditioned, std::string(what) + " has condition number " +
                                               std::to_string(cond));
  }
}

inline CMatrix thin_q(const CMatrix& A) {
  Eigen::HouseholderQR<CMatrix> qr(A);
  return qr.householderQ() * CMatrix::Identity(A.rows(), A.cols());
}

struct ActiveData {
  std::vector<Complex> nodes;
  RVector weights;
  std::vector<CVector> f;  // per entry, column-major (i + j*s)
};

inline ActiveData active_data(const SampleSet& samples, const DegreeSpec& degrees,
                              const WeightVector& w) {
  validate(samples, degrees);
  if (w.size() != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weights do not match sample count");
  }
  if (samples.size() > kMaxDualSamples || degrees.max_numerator() > kMaxDualDegree ||
      degrees.denominator() > kMaxDualDegree) {
    throw Error(ErrorCode::InvalidArgument, "instance exceeds the dense oracle size limits");
  }
  ActiveData data;
  std::vector<Index> idx;
  for (Index l = 0; l < w.size(); ++l) {
    if (w[l] > 0.0) idx.push_back(l);
  }
  if (static_cast<Index>(idx.size()) < degrees.required_samples()) {
    throw Error(ErrorCode::InfeasibleAfterFiltering, "too few positive weights");
  }
  const Index ma = static_cast<Index>(idx.size());
  data.weights.resize(ma);
  for (Index a = 0; a < ma; ++a) {
    data.nodes.push_back(samples.node(idx[static_cast<std::size_t>(a)]));
    data.weights(a) = w[idx[static_cast<std::size_t>(a)]];
  }
  for (Index j = 0; j < samples.cols(); ++j) {
    for (Index i = 0; i < samples.rows(); ++i) {
      CVector f(ma);
      for (Index a = 0; a < ma; ++a) f(a) = samples(idx[static_cast<std::size_t>(a)], i, j);
      data.f.push_back(std::move(f));
    }
  }
  return data;
}

}  // namespace detail

///
/// A_w = [-Theta, F Phi]^H W_g [-Theta, F Phi] and B_w = blkdiag(0, Phi^H W Phi)
/// with Theta = blkdiag(Psi_ij), assembled from explicit monomial matrices
/// over all m nodes.
///
inline DensePencil dense_pencil(const SampleSet& samples, const DegreeSpec& degrees,
                                const WeightVector& w) {
  validate(samples, degrees);
  const Index m = samples.size();
  const Index n = degrees.coefficient_count();
  const int d = degrees.denominator();
  const CMatrix Phi = vandermonde(samples.nodes(), d);
  RVector wv(m);
  for (Index l = 0; l < m; ++l) wv(l) = w[l];

  const Index g = degrees.entry_count();
  CMatrix M = CMatrix::Zero(g * m, n + d + 1);
  Index col = 0;
  for (Index j = 0; j < samples.cols(); ++j) {
    for (Index i = 0; i < samples.rows(); ++i) {
      const Index b = i + j * samples.rows();
      const int nij = degrees.numerator(i, j);
      M.block(b * m, col, m, nij + 1) = -vandermonde(samples.nodes(), nij);
      M.block(b * m, n, m, d + 1) = samples.entry(i, j).asDiagonal() * Phi;
      col += nij + 1;
    }
  }
  RVector wg(g * m);
  for (Index b = 0; b < g; ++b) wg.segment(b * m, m) = wv;

  DensePencil pencil;
  pencil.a_matrix = M.adjoint() * wg.asDiagonal() * M;
  pencil.b_matrix = CMatrix::Zero(n + d + 1, n + d + 1);
  pencil.b_matrix.bottomRightCorner(d + 1, d + 1) = Phi.adjoint() * wv.asDiagonal() * Phi;
  return pencil;
}

///
/// d(w) as the smallest eigenvalue of S(w) = S_F - S_qp S_qp^H, with Q_q and
/// P_ij from Householder QR of the explicit weighted Vandermonde matrices.
/// Clamped at zero.
///
inline double dense_dual(const SampleSet& samples, const DegreeSpec& degrees,
                         const WeightVector& w) {
  const detail::ActiveData data = detail::active_data(samples, degrees, w);
  const RVector sqrt_w = data.weights.cwiseSqrt();
  const int d = degrees.denominator();

  const CMatrix A = sqrt_w.asDiagonal() * vandermonde(data.nodes, d);
  detail::require_conditioned(A, "weighted denominator Vandermonde matrix");
  const CMatrix Qq = detail::thin_q(A);

  RVector abs_sq = RVector::Zero(static_cast<Index>(data.nodes.size()));
  CMatrix coupling = CMatrix::Zero(d + 1, d + 1);  // S_qp S_qp^H
  for (Index j = 0; j < samples.cols(); ++j) {
    for (Index i = 0; i < samples.rows(); ++i) {
      const CVector& f = data.f[static_cast<std::size_t>(i + j * samples.rows())];
      abs_sq += f.cwiseAbs2();
      const CMatrix B = sqrt_w.asDiagonal() * vandermonde(data.nodes, degrees.numerator(i, j));
      detail::require_conditioned(B, "weighted numerator Vandermonde matrix");
      const CMatrix P = detail::thin_q(B);
      const CMatrix block = Qq.adjoint() * f.conjugate().asDiagonal() * P;
      coupling += block * block.adjoint();
    }
  }
  const CMatrix SF = Qq.adjoint() * abs_sq.asDiagonal() * Qq;
  CMatrix S = SF - coupling;
  S = (0.5 * (S + S.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(S, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()(0));
}

///
/// d(w) from the pencil after eliminating the numerator coefficients:
/// the smallest eigenvalue of (Phi^H F^H W F Phi - C, Phi^H W Phi) where C is
/// the Schur complement correction sum_ij Phi^H F_ij^H W Psi_ij
/// (Psi_ij^H W Psi_ij)^{-1} Psi_ij^H W F_ij Phi. Needs well-conditioned
/// Gram matrices.
///
inline double pencil_dual(const SampleSet& samples, const DegreeSpec& degrees,
                          const WeightVector& w) {
  const detail::ActiveData data = detail::active_data(samples, degrees, w);
  const int d = degrees.denominator();
  const CMatrix Phi = vandermonde(data.nodes, d);
  const auto W = data.weights.asDiagonal();

  CMatrix top = CMatrix::Zero(d + 1, d + 1);
  for (Index j = 0; j < samples.cols(); ++j) {
    for (Index i = 0; i < samples.rows(); ++i) {
      const CVector& f = data.f[static_cast<std::size_t>(i + j * samples.rows())];
      const CMatrix FPhi = f.asDiagonal() * Phi;
      const CMatrix Psi = vandermonde(data.nodes, degrees.numerator(i, j));
      const CMatrix gram = Psi.adjoint() * W * Psi;
      const CMatrix cross = Psi.adjoint() * W * FPhi;
      top += FPhi.adjoint() * W * FPhi - cross.adjoint() * gram.llt().solve(cross);
    }
  }
  top = (0.5 * (top + top.adjoint())).eval();
  CMatrix mass = Phi.adjoint() * W * Phi;
  mass = (0.5 * (mass + mass.adjoint())).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> eig(top, mass, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()(0));
}

/// Q Q^H for the thin QR of the explicit weighted Vandermonde matrix.
inline CMatrix dense_qr_projector(std::span<const Complex> nodes, std::span<const double> weights,
                                  int degree) {
  const Index m = static_cast<Index>(nodes.size());
  if (static_cast<Index>(weights.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "nodes and weights differ in length");
  }
  if (m > kMaxProjectorSamples || degree > kMaxProjectorDegree || degree < 0 || m < degree + 1) {
    throw Error(ErrorCode::InvalidArgument, "instance exceeds the dense projector size limits");
  }
  RVector sqrt_w(m);
  for (Index l = 0; l < m; ++l) sqrt_w(l) = std::sqrt(weights[static_cast<std::size_t>(l)]);
  const CMatrix A = sqrt_w.asDiagonal() * vandermonde(nodes, degree);
  detail::require_conditioned(A, "weighted Vandermonde matrix");
  const CMatrix Q = detail::thin_q(A);
  return Q * Q.adjoint();
}

}  // namespace oracle
}  // namespace mdlawson

#endif  // MDLAWSON_ORACLE_HPP
