// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_MODEL_HPP
#define MDLAWSON_MODEL_HPP

///
/// \file model.hpp
///
/// Sampled matrix-valued data, prescribed degrees, dual weights and the error
/// metrics shared by every other part of the library.
///

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mdlawson/error.hpp"

namespace mdlawson {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// m x s x t complex array, stored as m matrices of shape s x t.
using MatrixSeries = std::vector<CMatrix>;

///
/// Nodes x_l together with the sampled matrices F(x_l).
///
/// Construction enforces m, s, t >= 1, consistent value shapes and pairwise
/// distinct nodes (exact comparison of both real components).
///
class SampleSet {
 public:
  SampleSet() = default;

  SampleSet(std::vector<Complex> nodes, MatrixSeries values)
      : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.empty()) {
      throw Error(ErrorCode::DimensionMismatch, "sample set needs at least one node");
    }
    if (values_.size() != nodes_.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "got " + std::to_string(nodes_.size()) + " nodes but " +
                      std::to_string(values_.size()) + " sampled matrices");
    }
    const Index s = values_.front().rows();
    const Index t = values_.front().cols();
    if (s < 1 || t < 1) {
      throw Error(ErrorCode::DimensionMismatch, "sampled matrices must be at least 1x1");
    }
    for (std::size_t l = 0; l < values_.size(); ++l) {
      if (values_[l].rows() != s || values_[l].cols() != t) {
        throw Error(ErrorCode::DimensionMismatch,
                    "sample " + std::to_string(l) + " has shape " +
                        std::to_string(values_[l].rows()) + "x" +
                        std::to_string(values_[l].cols()) + ", expected " + std::to_string(s) +
                        "x" + std::to_string(t));
      }
    }
    check_distinct();
  }

  Index size() const { return static_cast<Index>(nodes_.size()); }
  Index rows() const { return values_.empty() ? 0 : values_.front().rows(); }
  Index cols() const { return values_.empty() ? 0 : values_.front().cols(); }

  const std::vector<Complex>& nodes() const { return nodes_; }
  Complex node(Index l) const { return nodes_[static_cast<std::size_t>(l)]; }
  const MatrixSeries& values() const { return values_; }
  const CMatrix& value(Index l) const { return values_[static_cast<std::size_t>(l)]; }
  Complex operator()(Index l, Index i, Index j) const { return value(l)(i, j); }

  /// f_ij sampled over all nodes.
  CVector entry(Index i, Index j) const {
    CVector f(size());
    for (Index l = 0; l < size(); ++l) f(l) = value(l)(i, j);
    return f;
  }

 private:
  void check_distinct() const {
    std::vector<std::size_t> order(nodes_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [this](std::size_t k) {
      return std::pair{nodes_[k].real(), nodes_[k].imag()};
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (key(order[k - 1]) == key(order[k])) {
        throw Error(ErrorCode::DuplicateNodes,
                    "nodes " + std::to_string(std::min(order[k - 1], order[k])) + " and " +
                        std::to_string(std::max(order[k - 1], order[k])) + " coincide");
      }
    }
  }

  std::vector<Complex> nodes_;
  MatrixSeries values_;
};

///
/// Numerator degrees n_ij (one per matrix entry) and the common denominator
/// degree d.
///
class DegreeSpec {
 public:
  DegreeSpec() = default;

  DegreeSpec(Eigen::MatrixXi numerator_degrees, int denominator_degree)
      : numer_(std::move(numerator_degrees)), denom_(denominator_degree) {
    if (numer_.rows() < 1 || numer_.cols() < 1) {
      throw Error(ErrorCode::DimensionMismatch, "numerator degree table must be at least 1x1");
    }
    if (numer_.minCoeff() < 0 || denom_ < 0) {
      throw Error(ErrorCode::InvalidArgument, "degrees must be nonnegative");
    }
  }

  static DegreeSpec uniform(Index s, Index t, int numerator_degree, int denominator_degree) {
    return {Eigen::MatrixXi::Constant(s, t, numerator_degree), denominator_degree};
  }

  Index rows() const { return numer_.rows(); }
  Index cols() const { return numer_.cols(); }
  int numerator(Index i, Index j) const { return numer_(i, j); }
  int denominator() const { return denom_; }
  const Eigen::MatrixXi& numerator_degrees() const { return numer_; }

  /// nu = max n_ij
  int max_numerator() const { return numer_.maxCoeff(); }
  /// g = s t
  Index entry_count() const { return numer_.size(); }
  /// n = sum (n_ij + 1)
  Index coefficient_count() const { return numer_.sum() + numer_.size(); }
  /// max_ij (n_ij + d + 2)
  Index required_samples() const { return Index{max_numerator()} + denom_ + 2; }

  bool operator==(const DegreeSpec& other) const {
    return denom_ == other.denom_ && numer_.rows() == other.numer_.rows() &&
           numer_.cols() == other.numer_.cols() && numer_ == other.numer_;
  }

 private:
  Eigen::MatrixXi numer_;
  int denom_ = 0;
};

/// A point of the probability simplex: nonnegative entries summing to one.
class WeightVector {
 public:
  static constexpr double kSimplexTol = 1e-12;

  WeightVector() = default;

  explicit WeightVector(std::vector<double> entries) : w_(std::move(entries)) {
    if (w_.empty()) throw Error(ErrorCode::InvalidArgument, "weight vector is empty");
    double sum = 0.0;
    for (std::size_t l = 0; l < w_.size(); ++l) {
      if (!(w_[l] >= 0.0) || !std::isfinite(w_[l])) {
        throw Error(ErrorCode::InvalidArgument,
                    "weight " + std::to_string(l) + " is negative or not finite");
      }
      sum += w_[l];
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      throw Error(ErrorCode::InvalidArgument,
                  "weights sum to " + std::to_string(sum) + ", not 1");
    }
  }

  static WeightVector uniform(Index m) {
    return WeightVector(std::vector<double>(static_cast<std::size_t>(m), 1.0 / double(m)));
  }

  /// Rescales arbitrary nonnegative mass onto the simplex (exact division by the sum).
  static WeightVector normalized(std::vector<double> mass) {
    const double sum = std::accumulate(mass.begin(), mass.end(), 0.0);
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw Error(ErrorCode::AllMassVanished, "cannot normalize weights with total mass " +
                                                  std::to_string(sum));
    }
    for (double& v : mass) v /= sum;
    return WeightVector(std::move(mass));
  }

  Index size() const { return static_cast<Index>(w_.size()); }
  double operator[](Index l) const { return w_[static_cast<std::size_t>(l)]; }
  const std::vector<double>& entries() const { return w_; }

 private:
  std::vector<double> w_;
};

struct ErrorReport {
  std::vector<double> per_node_fro;  // ||F(x_l) - R(x_l)||_F
  std::vector<Eigen::MatrixXd> per_entry;  // |f_ij - r_ij|
  double rmse = 0.0;
  double max_sq_error = 0.0;  // e(R), squared
};

///
/// Checks the data against the prescribed degrees. Besides shape agreement
/// this requires m >= max_ij (n_ij + d + 2); below that the problem
/// degenerates to interpolation.
///
inline void validate(const SampleSet& samples, const DegreeSpec& degrees) {
  if (samples.size() < 1) throw Error(ErrorCode::DimensionMismatch, "empty sample set");
  if (degrees.rows() != samples.rows() || degrees.cols() != samples.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "degree table is " + std::to_string(degrees.rows()) + "x" +
                    std::to_string(degrees.cols()) + " but samples are " +
                    std::to_string(samples.rows()) + "x" + std::to_string(samples.cols()));
  }
  if (samples.size() < degrees.required_samples()) {
    throw Error(ErrorCode::TooFewSamples,
                "need m >= max(n_ij + d + 2) = " + std::to_string(degrees.required_samples()) +
                    " samples, got " + std::to_string(samples.size()));
  }
}

/// Entries that are not finite count as infinite error.
inline ErrorReport compute_errors(const SampleSet& samples, const MatrixSeries& approx) {
  if (static_cast<Index>(approx.size()) != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch, "approximant values cover " +
                                                  std::to_string(approx.size()) + " nodes, " +
                                                  "samples have " +
                                                  std::to_string(samples.size()));
  }
  const Index m = samples.size();
  ErrorReport report;
  report.per_node_fro.resize(static_cast<std::size_t>(m));
  report.per_entry.resize(static_cast<std::size_t>(m));
  double sum_sq = 0.0;
  double max_sq = 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (Index l = 0; l < m; ++l) {
    const CMatrix& r = approx[static_cast<std::size_t>(l)];
    if (r.rows() != samples.rows() || r.cols() != samples.cols()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "approximant value " + std::to_string(l) + " has the wrong shape");
    }
    Eigen::MatrixXd abs_err(r.rows(), r.cols());
    double node_sq = 0.0;
    for (Index j = 0; j < r.cols(); ++j) {
      for (Index i = 0; i < r.rows(); ++i) {
        const Complex diff = samples(l, i, j) - r(i, j);
        const double a = std::isfinite(diff.real()) && std::isfinite(diff.imag())
                             ? std::abs(diff)
                             : inf;
        abs_err(i, j) = a;
        node_sq += a * a;
      }
    }
    report.per_entry[static_cast<std::size_t>(l)] = std::move(abs_err);
    report.per_node_fro[static_cast<std::size_t>(l)] = std::sqrt(node_sq);
    sum_sq += node_sq;
    max_sq = std::max(max_sq, node_sq);
  }
  report.rmse = std::sqrt(sum_sq / double(m));
  report.max_sq_error = max_sq;
  return report;
}

/// |e - d| / e; non-finite e gives +inf, e = 0 gives 0 if d = 0 and +inf otherwise.
inline double relative_gap(double max_sq_error, double dual_value) {
  if (!std::isfinite(max_sq_error)) return std::numeric_limits<double>::infinity();
  if (max_sq_error == 0.0) {
    return dual_value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs((max_sq_error - dual_value) / max_sq_error);
}

}  // namespace mdlawson

#endif  // MDLAWSON_MODEL_HPP
