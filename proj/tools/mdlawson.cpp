// SPDX-License-Identifier: Apache-2.0
//
// mdlawson: fit, demo, eval and diagnose front end.
//
// Exit status: 0 when the solver stops on the gap test or on an exactly
// representable target, 2 when it runs out of iterations (the fit is still
// written), 1 on any error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef MDLAWSON_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif
#include "mdlawson/mdlawson.hpp"

namespace {

using namespace mdlawson;

struct FitArgs {
  std::string degrees;
  double beta = 1.0;
  int maxit = 10;
  double gap_tol = 1e-3;
  double weight_floor = 0.0;
  double extreme_tol = kDefaultExtremeTol;
  std::string out_fit;
  std::string out_report;
  std::string out_plotdata;
};

void add_fit_options(CLI::App* cmd, FitArgs& a) {
  cmd->add_option("--degrees", a.degrees,
                  "numerator/denominator degrees: \"n/d\" or a table such as \"20;12;12/20\"");
  cmd->add_option("--beta", a.beta, "Lawson exponent in (0, 1]")->capture_default_str();
  cmd->add_option("--maxit", a.maxit, "iteration limit")->capture_default_str();
  cmd->add_option("--gap-tol", a.gap_tol, "relative duality gap tolerance (0: run all iterations)")
      ->capture_default_str();
  cmd->add_option("--weight-floor", a.weight_floor, "drop nodes whose weight falls below this")
      ->capture_default_str();
  cmd->add_option("--extreme-tol", a.extreme_tol, "relative tolerance for extreme points")
      ->capture_default_str();
  cmd->add_option("--out-fit", a.out_fit, "approximant document to write");
  cmd->add_option("--out-report", a.out_report, "report document to write");
  cmd->add_option("--out-plotdata", a.out_plotdata, "plain column plot data to write");
}

SolverOptions solver_options(const FitArgs& a) {
  SolverOptions o;
  o.lawson_exponent = a.beta;
  o.max_iterations = a.maxit;
  o.duality_gap_tol = a.gap_tol;
  o.weight_floor = a.weight_floor;
  o.check();
  return o;
}

int exit_status(Termination t) {
  switch (t) {
    case Termination::GapConverged:
    case Termination::Degenerate: return 0;
    case Termination::MaxIterations:
    case Termination::DenominatorVanished: return 2;
  }
  return 1;
}

int run_fit(const SampleSet& samples, const DegreeSpec& degrees, const FitArgs& a,
            const json& extra) {
  const SolverOptions options = solver_options(a);
  json info = extra;
  info["degrees"] = format_degrees(degrees);
  const SolveResult result = solve(samples, degrees, options);
  const SolveReport& report = result.report;
  const Diagnostics diag =
      diagnose(result.approximant, samples, report.final_dual_value(), a.extreme_tol,
               options.absolute_gap_floor);

  if (!a.out_fit.empty()) io::write_json(a.out_fit, serialize(result.approximant));
  if (!a.out_report.empty()) {
    io::write_json(a.out_report, report_to_json(report, diag, options, info));
  }
  if (!a.out_plotdata.empty()) {
    std::ofstream out(a.out_plotdata);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + a.out_plotdata + "'");
    write_plot_data(out, samples, report);
  }

  std::printf("termination %s after %zu evaluations\n",
              std::string(to_string(report.termination)).c_str(), report.iterations.size());
  std::printf("rmse %.6e  sqrt(e) %.6e  sqrt(d) %.6e  gap %.6e  slackness %.6e  extreme %zu\n",
              report.final_errors.rmse, std::sqrt(report.final_errors.max_sq_error),
              std::sqrt(report.final_dual_value()), diag.relative_gap, diag.slackness_residual,
              diag.extreme_points.size());
  for (Index l : report.vanishing_nodes) {
    std::fprintf(stderr, "warning: denominator vanishes at node %lld\n",
                 static_cast<long long>(l));
  }
  return exit_status(report.termination);
}

DegreeSpec degrees_for(const std::string& text, const SampleSet& samples) {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "--degrees is required");
  return parse_degrees(text, samples.rows(), samples.cols());
}

// "re0,im0,re1,im1,count": count equispaced nodes from re0+im0 i to re1+im1 i.
std::vector<Complex> parse_range(const std::string& text) {
  double v[4];
  long long count = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf,%lld%c", &v[0], &v[1], &v[2], &v[3], &count,
                  &tail) != 5 ||
      count < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "bad range '" + text + "', expected re0,im0,re1,im1,count");
  }
  return demo::segment({v[0], v[1]}, {v[2], v[3]}, count);
}

LoadedApproximant load_fit(const std::string& path) {
  LoadedApproximant loaded = deserialize(io::read_json(path));
  for (const std::string& w : loaded.warnings) {
    std::fprintf(stderr, "warning: %s: %s\n", path.c_str(), w.c_str());
  }
  return loaded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax rational fitting of sampled matrix data"};
  app.require_subcommand(1);

  FitArgs fit_args;
  std::string input;
  auto* fit = app.add_subcommand("fit", "fit a problem document");
  fit->add_option("--input", input, "problem document")->required();
  add_fit_options(fit, fit_args);

  FitArgs demo_args;
  std::string demo_name;
  Index demo_samples = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  bool per_entry = false;
  std::string out_data;
  auto* demo_cmd = app.add_subcommand("demo", "synthesize a benchmark problem and fit it");
  demo_cmd->add_option("name", demo_name, "example1 | example2 | duplexer")->required();
  demo_cmd->add_option("--samples", demo_samples, "number of nodes (default per problem)");
  demo_cmd->add_option("--noise", noise, "standard deviation of the real and imaginary noise")
      ->capture_default_str();
  demo_cmd->add_option("--seed", seed, "64-bit noise seed")->capture_default_str();
  demo_cmd->add_flag("--per-entry-noise", per_entry, "draw noise per entry instead of per node");
  demo_cmd->add_option("--out-data", out_data, "write the synthesized problem document");
  add_fit_options(demo_cmd, demo_args);

  std::string eval_fit;
  std::string eval_nodes;
  std::string eval_range;
  std::string eval_out;
  auto* eval = app.add_subcommand("eval", "evaluate a fitted approximant");
  eval->add_option("--fit", eval_fit, "approximant document")->required();
  auto* nodes_opt = eval->add_option("--nodes", eval_nodes, "document holding the nodes");
  auto* range_opt =
      eval->add_option("--range", eval_range, "equispaced nodes: re0,im0,re1,im1,count");
  nodes_opt->excludes(range_opt);
  eval->add_option("--out", eval_out, "value document to write (default: stdout)");

  std::string diag_fit;
  std::string diag_input;
  std::optional<double> diag_dual;
  double diag_extreme = kDefaultExtremeTol;
  std::string diag_out;
  auto* diag_cmd = app.add_subcommand("diagnose", "optimality diagnostics of a fit");
  diag_cmd->add_option("--fit", diag_fit, "approximant document")->required();
  diag_cmd->add_option("--input", diag_input, "problem document")->required();
  diag_cmd->add_option("--dual-value", diag_dual,
                       "d(w) of the fit (default: recomputed from the stored weights)");
  diag_cmd->add_option("--extreme-tol", diag_extreme)->capture_default_str();
  diag_cmd->add_option("--out", diag_out, "diagnostics document to write (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit) {
      const ProblemDocument doc = read_problem(input);
      json extra;
      extra["input"] = input;
      return run_fit(doc.samples, degrees_for(fit_args.degrees, doc.samples), fit_args, extra);
    }

    if (*demo_cmd) {
      const auto problem = demo::parse_problem(demo_name);
      if (!problem) {
        throw Error(ErrorCode::InvalidArgument,
                    "unknown demo '" + demo_name + "' (expected example1, example2 or duplexer)");
      }
      demo::DemoSpec spec = demo::default_spec(*problem);
      if (demo_samples > 0) spec.sample_count = demo_samples;
      spec.noise_level = noise;
      spec.seed = seed;
      spec.per_entry_noise = per_entry;
      const SampleSet samples = demo::synthesize(spec);

      json info;
      info["name"] = demo_name;
      info["sample_count"] = spec.sample_count;
      info["noise_level"] = spec.noise_level;
      info["seed"] = spec.seed;
      info["per_entry_noise"] = spec.per_entry_noise;
      info["noise_generator"] = demo::kNoiseGenerator;
      if (!out_data.empty()) {
        json meta;
        meta["demo"] = info;
        io::write_json(out_data, problem_to_json(samples, meta));
      }
      const DegreeSpec degrees = demo_args.degrees.empty()
                                     ? demo::default_degrees(*problem)
                                     : degrees_for(demo_args.degrees, samples);
      json extra;
      extra["demo"] = info;
      return run_fit(samples, degrees, demo_args, extra);
    }

    if (*eval) {
      const LoadedApproximant loaded = load_fit(eval_fit);
      std::vector<Complex> nodes;
      if (!eval_nodes.empty()) {
        nodes = nodes_from_json(io::read_json(eval_nodes));
      } else if (!eval_range.empty()) {
        nodes = parse_range(eval_range);
      } else {
        throw Error(ErrorCode::InvalidArgument, "eval needs --nodes or --range");
      }
      std::vector<Index> vanishing;
      const MatrixSeries values = evaluate(loaded.approximant, nodes, &vanishing);
      for (Index l : vanishing) {
        std::fprintf(stderr, "warning: denominator vanishes at node %lld\n",
                     static_cast<long long>(l));
      }
      const json doc = values_document(nodes, values);
      if (eval_out.empty()) {
        std::cout << doc.dump(2) << '\n';
      } else {
        io::write_json(eval_out, doc);
      }
      return 0;
    }

    if (*diag_cmd) {
      const LoadedApproximant loaded = load_fit(diag_fit);
      const ProblemDocument doc = read_problem(diag_input);
      double dual = 0.0;
      if (diag_dual) {
        dual = *diag_dual;
      } else if (loaded.approximant.fit_weights) {
        dual = evaluate_dual(doc.samples, loaded.approximant.degrees,
                             *loaded.approximant.fit_weights)
                   .dual_value;
      } else {
        throw Error(ErrorCode::InvalidArgument,
                    "fit carries no weights; pass --dual-value explicitly");
      }
      const Diagnostics diag = diagnose(loaded.approximant, doc.samples, dual, diag_extreme);
      json out = diagnostics_to_json(diag);
      out["dual_value"] = dual;
      if (diag_out.empty()) {
        std::cout << out.dump(2) << '\n';
      } else {
        io::write_json(diag_out, out);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mdlawson: error: %s\n", e.what());
    return 1;
  }
  return 1;
}
