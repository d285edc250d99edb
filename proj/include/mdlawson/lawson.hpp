// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_LAWSON_HPP
#define MDLAWSON_LAWSON_HPP

///
/// \file lawson.hpp
///
/// Dual Lawson iteration for matrix-valued rational minimax fitting. Each
/// step evaluates the dual function at the current weights, measures the
/// Frobenius error of the resulting approximant at every node, and moves
/// weight multiplicatively toward the nodes with the largest error:
///
///   w_l <- w_l ||F(x_l) - R(x_l)||_F^beta / sum_i w_i ||F(x_i) - R(x_i)||_F^beta
///
/// The iteration stops once the relative duality gap |e(R) - d(w)| / e(R)
/// falls under the tolerance or the iteration budget is spent.
///

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdlawson/approximant.hpp"
#include "mdlawson/dual.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

struct SolverOptions {
  double lawson_exponent = 1.0;  // beta in (0, 1]
  int max_iterations = 10;
  double duality_gap_tol = 1e-3;  // 0 runs exactly max_iterations steps
  double weight_floor = 0.0;
  std::optional<WeightVector> initial_weights;
  double absolute_gap_floor = 1e-15;

  void check() const {
    if (!(lawson_exponent > 0.0 && lawson_exponent <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "Lawson exponent must lie in (0, 1]");
    }
    if (max_iterations < 1) {
      throw Error(ErrorCode::InvalidArgument, "iteration limit must be positive");
    }
    if (!(duality_gap_tol >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "duality gap tolerance must be nonnegative");
    }
    if (!(weight_floor >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "weight floor must be nonnegative");
    }
    if (!(absolute_gap_floor >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "absolute gap floor must be nonnegative");
    }
  }
};

enum class Termination {
  GapConverged,
  MaxIterations,
  Degenerate,
  DenominatorVanished,
};

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::GapConverged: return "GapConverged";
    case Termination::MaxIterations: return "MaxIterations";
    case Termination::Degenerate: return "Degenerate";
    case Termination::DenominatorVanished: return "DenominatorVanished";
  }
  return "Unknown";
}

struct IterationRecord {
  int iteration = 0;
  double dual_value = 0.0;
  double max_sq_error = 0.0;
  double relative_gap = 0.0;
  double rmse = 0.0;
  Index active_node_count = 0;
  bool multiplicity_warning = false;
};

struct SolveReport {
  std::vector<IterationRecord> iterations;
  WeightVector final_weights;  // weights of the last dual evaluation
  Termination termination = Termination::MaxIterations;
  ErrorReport final_errors;
  std::vector<Index> vanishing_nodes;

  const IterationRecord& last() const { return iterations.back(); }
  double final_dual_value() const { return iterations.back().dual_value; }
};

struct SolveResult {
  RationalApproximant approximant;
  SolveReport report;
};

/// Called once per iteration after the record is appended.
using IterationObserver =
    std::function<void(const IterationRecord&, const WeightVector&, const DualEvaluation&)>;

///
/// Multiplicative Lawson update, renormalized onto the simplex by the exact
/// sum. Zero weights stay zero.
///
inline WeightVector update_weights(const WeightVector& w, std::span<const double> per_node_fro,
                                   double beta) {
  if (static_cast<Index>(per_node_fro.size()) != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "error and weight vectors differ in length");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "Lawson exponent must lie in (0, 1]");
  }
  std::vector<double> mass(per_node_fro.size());
  double total = 0.0;
  for (std::size_t l = 0; l < mass.size(); ++l) {
    const double err = per_node_fro[l];
    if (!(err >= 0.0) || !std::isfinite(err)) {
      throw Error(ErrorCode::InvalidArgument,
                  "error at node " + std::to_string(l) + " is negative or not finite");
    }
    mass[l] = w[static_cast<Index>(l)] * (beta == 1.0 ? err : std::pow(err, beta));
    total += mass[l];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::AllMassVanished, "all weighted errors are zero");
  }
  for (double& v : mass) v /= total;
  return WeightVector(std::move(mass));
}

namespace detail {

/// Zeroes weights below the floor and renormalizes what is left.
inline WeightVector apply_weight_floor(const WeightVector& w, double floor) {
  if (floor <= 0.0) return w;
  std::vector<double> mass = w.entries();
  bool changed = false;
  for (double& v : mass) {
    if (v > 0.0 && v < floor) {
      v = 0.0;
      changed = true;
    }
  }
  if (!changed) return w;
  return WeightVector::normalized(std::move(mass));
}

}  // namespace detail

///
/// Runs the dual Lawson iteration from uniform (or supplied) weights.
///
/// Iteration k evaluates d(w^(k)), the approximant R^(k) and its errors at
/// all nodes, then stops with
///   - Degenerate when e(R^(k)) < absolute_gap_floor or all weighted errors
///     vanish (the data is reproduced exactly);
///   - DenominatorVanished when q^(k) is numerically zero at some node;
///   - GapConverged when the relative gap is below duality_gap_tol;
///   - MaxIterations when k reaches max_iterations.
/// Otherwise the weights are updated and k advances.
///
inline SolveResult solve(const SampleSet& samples, const DegreeSpec& degrees,
                         const SolverOptions& options, const IterationObserver& observer = {}) {
  validate(samples, degrees);
  options.check();

  WeightVector w = options.initial_weights ? *options.initial_weights
                                           : WeightVector::uniform(samples.size());
  if (w.size() != samples.size()) {
    throw Error(ErrorCode::DimensionMismatch, "initial weights do not match the sample count");
  }

  SolveReport report;
  for (int k = 0;; ++k) {
    w = detail::apply_weight_floor(w, options.weight_floor);
    DualEvaluation ev = evaluate_dual(samples, degrees, w);
    ErrorReport err = compute_errors(samples, ev.rational_at_nodes);

    IterationRecord rec;
    rec.iteration = k;
    rec.dual_value = ev.dual_value;
    rec.max_sq_error = err.max_sq_error;
    rec.relative_gap = relative_gap(err.max_sq_error, ev.dual_value);
    rec.rmse = err.rmse;
    rec.active_node_count = static_cast<Index>(ev.active_indices.size());
    rec.multiplicity_warning = ev.multiplicity_warning;
    report.iterations.push_back(rec);
    if (observer) observer(rec, w, ev);

    std::optional<Termination> stop;
    std::optional<WeightVector> next;
    if (err.max_sq_error < options.absolute_gap_floor) {
      stop = Termination::Degenerate;
    } else if (!ev.vanishing_nodes.empty()) {
      stop = Termination::DenominatorVanished;
    } else if (rec.relative_gap < options.duality_gap_tol) {
      stop = Termination::GapConverged;
    } else if (k >= options.max_iterations) {
      stop = Termination::MaxIterations;
    } else {
      try {
        next = update_weights(w, err.per_node_fro, options.lawson_exponent);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AllMassVanished) throw;
        stop = Termination::Degenerate;
      }
    }

    if (stop) {
      report.termination = *stop;
      report.final_errors = std::move(err);
      report.vanishing_nodes = ev.vanishing_nodes;
      report.final_weights = w;
      return {make_approximant(degrees, ev, w), std::move(report)};
    }
    w = std::move(*next);
  }
}

}  // namespace mdlawson

#endif  // MDLAWSON_LAWSON_HPP
