// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>

#include "test_support.hpp"

namespace mdlawson {
namespace {

SampleSet scalar_samples(Index m) {
  std::vector<Complex> nodes;
  MatrixSeries values;
  for (Index l = 0; l < m; ++l) {
    nodes.emplace_back(double(l), 0.0);
    values.push_back(CMatrix::Constant(2, 2, Complex(double(l), 1.0)));
  }
  return {nodes, values};
}

TEST(SampleSet, RejectsDuplicateNodes) {
  std::vector<Complex> nodes = {{0, 1}, {2, 0}, {0, 1}};
  MatrixSeries values(3, CMatrix::Zero(1, 1));
  try {
    SampleSet s(nodes, values);
    FAIL() << "duplicates accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateNodes);
    EXPECT_NE(std::string(e.what()).find("0 and 2"), std::string::npos);
  }
}

TEST(SampleSet, DistinctnessIsExact) {
  std::vector<Complex> nodes = {{1.0, 0.0}, {std::nextafter(1.0, 2.0), 0.0}};
  EXPECT_NO_THROW(SampleSet(nodes, MatrixSeries(2, CMatrix::Zero(1, 1))));
}

TEST(SampleSet, RejectsInconsistentShapes) {
  std::vector<Complex> nodes = {{0, 0}, {1, 0}};
  MatrixSeries values = {CMatrix::Zero(2, 2), CMatrix::Zero(2, 1)};
  try {
    SampleSet s(nodes, values);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(SampleSet({}, {}), Error);
  EXPECT_THROW(SampleSet(nodes, MatrixSeries(1, CMatrix::Zero(1, 1))), Error);
  EXPECT_THROW(SampleSet(nodes, MatrixSeries(2, CMatrix::Zero(0, 1))), Error);
}

TEST(SampleSet, Accessors) {
  const SampleSet s = scalar_samples(4);
  EXPECT_EQ(s.size(), 4);
  EXPECT_EQ(s.rows(), 2);
  EXPECT_EQ(s.cols(), 2);
  EXPECT_EQ(s(3, 1, 0), Complex(3.0, 1.0));
  EXPECT_EQ(s.entry(0, 1)(2), Complex(2.0, 1.0));
}

TEST(DegreeSpec, DerivedQuantities) {
  Eigen::MatrixXi n(2, 2);
  n << 1, 3, 0, 2;
  const DegreeSpec deg(n, 4);
  EXPECT_EQ(deg.max_numerator(), 3);
  EXPECT_EQ(deg.entry_count(), 4);
  EXPECT_EQ(deg.coefficient_count(), 1 + 3 + 0 + 2 + 4);
  EXPECT_EQ(deg.required_samples(), 3 + 4 + 2);
  EXPECT_THROW(DegreeSpec(Eigen::MatrixXi::Constant(1, 1, -1), 0), Error);
  EXPECT_THROW(DegreeSpec(Eigen::MatrixXi::Constant(1, 1, 1), -1), Error);
  EXPECT_TRUE(DegreeSpec::uniform(2, 2, 5, 6) == DegreeSpec::uniform(2, 2, 5, 6));
  EXPECT_FALSE(DegreeSpec::uniform(2, 2, 5, 6) == DegreeSpec::uniform(2, 2, 5, 5));
}

TEST(WeightVector, SimplexMembership) {
  EXPECT_NO_THROW(WeightVector({0.25, 0.75}));
  EXPECT_NO_THROW(WeightVector({0.5, 0.5 + 5e-13}));
  EXPECT_THROW(WeightVector({0.5, 0.6}), Error);
  EXPECT_THROW(WeightVector({-0.1, 1.1}), Error);
  EXPECT_THROW(WeightVector({std::nan(""), 1.0}), Error);
  EXPECT_THROW(WeightVector(std::vector<double>{}), Error);
  const WeightVector u = WeightVector::uniform(7);
  EXPECT_NEAR(std::accumulate(u.entries().begin(), u.entries().end(), 0.0), 1.0, 1e-15);
  try {
    WeightVector::normalized({0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllMassVanished);
  }
}

TEST(Validate, SampleCountBoundary) {
  const DegreeSpec deg = DegreeSpec::uniform(2, 2, 5, 6);
  try {
    validate(scalar_samples(10), deg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
    EXPECT_NE(std::string(e.what()).find("13"), std::string::npos);
  }
  EXPECT_NO_THROW(validate(scalar_samples(13), deg));
  EXPECT_NO_THROW(validate(scalar_samples(1000), deg));
}

TEST(Validate, ShapeMismatch) {
  try {
    validate(scalar_samples(20), DegreeSpec::uniform(3, 1, 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ComputeErrors, IdentityCase) {
  const SampleSet s = scalar_samples(5);
  const ErrorReport r = compute_errors(s, s.values());
  EXPECT_EQ(r.rmse, 0.0);
  EXPECT_EQ(r.max_sq_error, 0.0);
}

TEST(ComputeErrors, HandEvaluatedResiduals) {
  const SampleSet s({{0, 0}, {1, 0}}, {CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 3.0)});
  const MatrixSeries zero(2, CMatrix::Zero(1, 1));
  const ErrorReport r = compute_errors(s, zero);
  EXPECT_NEAR(r.rmse, std::sqrt(5.0), 1e-15);
  EXPECT_DOUBLE_EQ(r.max_sq_error, 9.0);
  EXPECT_DOUBLE_EQ(r.per_node_fro[1], 3.0);
  EXPECT_DOUBLE_EQ(r.per_entry[0](0, 0), 1.0);
}

TEST(ComputeErrors, NonFiniteCountsAsInfinite) {
  const SampleSet s = scalar_samples(3);
  MatrixSeries approx = s.values();
  approx[1](0, 0) = Complex(std::nan(""), 0.0);
  const ErrorReport r = compute_errors(s, approx);
  EXPECT_TRUE(std::isinf(r.max_sq_error));
  EXPECT_TRUE(std::isinf(r.per_node_fro[1]));
  EXPECT_THROW(compute_errors(s, MatrixSeries(2, CMatrix::Zero(2, 2))), Error);
}

TEST(ComputeErrors, InvariantsAndPermutationEquivariance) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 3 + trial;
    const SampleSet s(testing::random_nodes(rng, m, 1e-3), testing::random_values(rng, m, 2, 3));
    const MatrixSeries approx = testing::random_values(rng, m, 2, 3);
    const ErrorReport r = compute_errors(s, approx);
    double sum = 0.0;
    double mx = 0.0;
    for (double f : r.per_node_fro) {
      sum += f * f;
      mx = std::max(mx, f * f);
    }
    EXPECT_NEAR(r.rmse * r.rmse * double(m), sum, 1e-12 * sum);
    EXPECT_DOUBLE_EQ(r.max_sq_error, mx);
    EXPECT_GE(r.max_sq_error, r.rmse * r.rmse * (1 - 1e-15));

    std::vector<std::size_t> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Complex> pn;
    MatrixSeries pv;
    MatrixSeries pa;
    for (std::size_t k : perm) {
      pn.push_back(s.nodes()[k]);
      pv.push_back(s.values()[k]);
      pa.push_back(approx[k]);
    }
    const ErrorReport rp = compute_errors(SampleSet(pn, pv), pa);
    EXPECT_DOUBLE_EQ(rp.max_sq_error, r.max_sq_error);
    EXPECT_NEAR(rp.rmse, r.rmse, 1e-15 * r.rmse);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      EXPECT_EQ(rp.per_node_fro[k], r.per_node_fro[perm[k]]);
    }
  }
}

TEST(RelativeGap, Definition) {
  EXPECT_DOUBLE_EQ(relative_gap(4.0, 3.0), 0.25);
  EXPECT_DOUBLE_EQ(relative_gap(4.0, 5.0), 0.25);
  EXPECT_EQ(relative_gap(0.0, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(relative_gap(0.0, 1e-30)));
  EXPECT_TRUE(std::isinf(relative_gap(std::numeric_limits<double>::infinity(), 1.0)));
}

}  // namespace
}  // namespace mdlawson
