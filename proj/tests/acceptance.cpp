// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace {

using namespace mdlawson;
using testing::Rng;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SolverOptions fixed_iterations(int n) {
  SolverOptions o;
  o.max_iterations = n;
  o.duality_gap_tol = 0.0;
  o.absolute_gap_floor = 0.0;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome example1_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Example1));
  const SolveResult r = solve(s, DegreeSpec::uniform(2, 2, 5, 6), fixed_iterations(10));
  const double dt = seconds_since(t0);
  const double rmse = r.report.final_errors.rmse;
  const double sq = std::sqrt(r.report.final_errors.max_sq_error);
  return {rmse <= 1e-10 && sq <= 1e-9 && dt <= 10.0 && r.report.iterations.size() == 11,
          "rmse " + fmt("%.4e", rmse) + " (<= 1e-10), sqrt(e) " + fmt("%.4e", sq) +
              " (<= 1e-9), " + fmt("%.3f", dt) + " s"};
}

Outcome example1_noise() {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    demo::DemoSpec spec = demo::default_spec(demo::Problem::Example1);
    spec.noise_level = 1e-6;
    spec.seed = seed;
    total += solve(demo::synthesize(spec), DegreeSpec::uniform(2, 2, 5, 6), fixed_iterations(10))
                 .report.final_errors.rmse;
  }
  const double mean = total / 10.0;
  return {mean <= 5e-5, "mean rmse over seeds 1..10 " + fmt("%.4e", mean) + " (<= 5e-5)"};
}

Outcome example2_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Example2));
  const SolveResult r = solve(s, DegreeSpec::uniform(2, 2, 10, 10), fixed_iterations(10));
  const double dt = seconds_since(t0);
  const double rmse = r.report.final_errors.rmse;
  return {rmse <= 1e-8 && dt <= 10.0,
          "rmse " + fmt("%.4e", rmse) + " (<= 1e-8), " + fmt("%.3f", dt) + " s"};
}

Outcome complementary_slackness() {
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Example2));
  const SolveResult r = solve(s, DegreeSpec::uniform(2, 2, 6, 6), fixed_iterations(20));
  const Diagnostics d = diagnose(r.approximant, s, r.report.final_dual_value(), 1e-3);
  const std::size_t count = d.extreme_points.size();
  std::string note = "extreme points at tol 1e-3: " + std::to_string(count);
  if (count != 11) note += " (differs from the reference count 11; report only)";
  return {d.slackness_residual <= 1e-10,
          "slackness " + fmt("%.4e", d.slackness_residual) + " (<= 1e-10); " + note};
}

Outcome polynomial_duality() {
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Example2));
  const SolveResult r = solve(s, DegreeSpec::uniform(2, 2, 12, 0), fixed_iterations(20));
  const Diagnostics d = diagnose(r.approximant, s, r.report.final_dual_value(), 1e-3);
  return {d.relative_gap < 1e-3 && d.slackness_residual <= 1e-8,
          "relative gap " + fmt("%.4e", d.relative_gap) + " (< 1e-3), slackness " +
              fmt("%.4e", d.slackness_residual) + " (<= 1e-8)"};
}

Outcome oracle_equivalence() {
  Rng rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index s = 1 + static_cast<Index>(rng() % 2);
    const Index t = 1 + static_cast<Index>(rng() % 2);
    const Index m = 6 + static_cast<Index>(rng() % 7);
    DegreeSpec deg;
    do {
      Eigen::MatrixXi n(s, t);
      for (Index k = 0; k < n.size(); ++k) n(k) = static_cast<int>(rng() % 4);
      deg = DegreeSpec(n, static_cast<int>(rng() % 4));
    } while (deg.required_samples() > m);
    const SampleSet samples(testing::random_nodes(rng, m, 0.15), testing::random_values(rng, m, s, t));
    const WeightVector w = testing::random_weights(rng, m);
    const double dense = oracle::dense_dual(samples, deg, w);
    const double fast = evaluate_dual(samples, deg, w).dual_value;
    worst = std::max(worst, std::abs(fast - dense) / std::max(1.0, dense));
  }
  return {worst <= 1e-10, "max scaled difference over 50 instances " + fmt("%.3e", worst) + " (<= 1e-10)"};
}

Outcome weak_duality() {
  Rng rng(7);
  int violations = 0;
  int off_simplex = 0;
  std::size_t records = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index s = 1 + static_cast<Index>(rng() % 2);
    const Index t = 1 + static_cast<Index>(rng() % 2);
    const Index m = 20 + static_cast<Index>(rng() % 60);
    DegreeSpec deg;
    do {
      Eigen::MatrixXi n(s, t);
      for (Index k = 0; k < n.size(); ++k) n(k) = static_cast<int>(rng() % 6);
      deg = DegreeSpec(n, static_cast<int>(rng() % 6));
    } while (deg.required_samples() > m);
    const auto nodes = testing::random_nodes(rng, m, 0.01);
    const SampleSet samples(nodes, testing::smooth_values(rng, nodes, s, t));
    SolverOptions o;
    o.max_iterations = 1 + static_cast<int>(rng() % 15);
    const SolveResult r = solve(samples, deg, o,
                                [&](const IterationRecord& rec, const WeightVector& w, const DualEvaluation&) {
                                  double sum = 0.0;
                                  for (double v : w.entries()) {
                                    if (v < 0.0) ++off_simplex;
                                    sum += v;
                                  }
                                  if (std::abs(sum - 1.0) > 1e-12) ++off_simplex;
                                  if (!(rec.dual_value <= rec.max_sq_error * (1 + 1e-10))) ++violations;
                                });
    records += r.report.iterations.size();
  }
  return {violations == 0 && off_simplex == 0,
          std::to_string(records) + " records, " + std::to_string(violations) +
              " weak duality violations, " + std::to_string(off_simplex) + " weight vectors off the simplex"};
}

Outcome degenerate_path() {
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Example1));
  const SolveResult r = solve(s, DegreeSpec::uniform(2, 2, 5, 6), SolverOptions{});
  const double e = r.report.final_errors.max_sq_error;
  const double d0 = r.report.iterations.front().dual_value;
  return {r.report.termination == Termination::Degenerate && e <= 1e-18 && d0 <= 1e-18,
          std::string("termination ") + std::string(to_string(r.report.termination)) + ", e(R) " +
              fmt("%.3e", e) + " (<= 1e-18), d(w0) " + fmt("%.3e", d0) + " (<= 1e-18)"};
}

Outcome monotone_dual() {
  double worst = 0.0;
  for (auto p : {demo::Problem::Example1, demo::Problem::Example2}) {
    const SolveResult r = solve(demo::synthesize(demo::default_spec(p)), demo::default_degrees(p),
                                fixed_iterations(10));
    const auto& its = r.report.iterations;
    for (std::size_t k = 1; k < its.size(); ++k) {
      worst = std::max(worst, its[k - 1].dual_value - its[k].dual_value);
    }
  }
  return {worst <= 1e-12, "largest decrease of d(w) " + fmt("%.3e", worst) + " (<= 1e-12)"};
}

Outcome duplexer() {
  const SampleSet s = demo::synthesize(demo::default_spec(demo::Problem::Duplexer));
  const SolveResult r = solve(s, parse_degrees("20;12;12/20", 3, 1), fixed_iterations(10));
  const auto fresh = demo::segment({0.0, -2.0}, {0.0, -1.0}, 801);
  const MatrixSeries v = evaluate(r.approximant, fresh);
  double sq = 0.0;
  for (std::size_t l = 0; l < fresh.size(); ++l) {
    sq += (v[l] - demo::target(demo::Problem::Duplexer, fresh[l])).squaredNorm();
  }
  const double fresh_rmse = std::sqrt(sq / double(fresh.size()));
  const double rmse = r.report.final_errors.rmse;
  return {rmse <= 1e-6 && fresh_rmse <= 1e-5,
          "rmse " + fmt("%.4e", rmse) + " at 401 nodes (<= 1e-6), " + fmt("%.4e", fresh_rmse) +
              " at 801 fresh nodes (<= 1e-5)"};
}

Outcome round_trip() {
  int mismatches = 0;
  int fixtures = 0;
  for (auto p : {demo::Problem::Example1, demo::Problem::Example2, demo::Problem::Duplexer}) {
    for (double noise : {0.0, 1e-6}) {
      demo::DemoSpec spec = demo::default_spec(p);
      spec.noise_level = noise;
      spec.seed = 2024;
      const SampleSet a = demo::synthesize(spec);
      const SampleSet b = demo::synthesize(spec);
      if (!testing::bit_identical(a.values(), b.values())) ++mismatches;
      const SolveResult ra = solve(a, demo::default_degrees(p), fixed_iterations(10));
      const SolveResult rb = solve(b, demo::default_degrees(p), fixed_iterations(10));
      for (std::size_t k = 0; k < ra.report.iterations.size(); ++k) {
        if (ra.report.iterations[k].dual_value != rb.report.iterations[k].dual_value ||
            ra.report.iterations[k].max_sq_error != rb.report.iterations[k].max_sq_error) {
          ++mismatches;
        }
      }
      const RationalApproximant back = deserialize(json::parse(serialize(ra.approximant).dump())).approximant;
      const std::vector<Complex> fresh = demo::nodes(p, 333);
      if (!testing::bit_identical(evaluate(ra.approximant, a.nodes()), evaluate(back, a.nodes()))) ++mismatches;
      if (!testing::bit_identical(evaluate(ra.approximant, fresh), evaluate(back, fresh))) ++mismatches;
      ++fixtures;
    }
  }
  return {mismatches == 0,
          std::to_string(fixtures) + " fixtures, " + std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Example 1 reproduction", example1_reproduction},
      {"Example 1 noise robustness", example1_noise},
      {"Example 2 reproduction", example2_reproduction},
      {"Complementary slackness", complementary_slackness},
      {"Polynomial strong duality", polynomial_duality},
      {"Oracle equivalence", oracle_equivalence},
      {"Weak duality property", weak_duality},
      {"Interpolation/degenerate path", degenerate_path},
      {"Monotone dual trend", monotone_dual},
      {"Duplexer self-consistency", duplexer},
      {"Round-trip fidelity", round_trip},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
