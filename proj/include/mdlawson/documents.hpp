// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_DOCUMENTS_HPP
#define MDLAWSON_DOCUMENTS_HPP

///
/// \file documents.hpp
///
/// Problem, value and report documents (JSON), and the plain-column plot data
/// file written by the command line tool.
///
/// Problem document:
///
///   { "format": "mdlawson-problem", "version": "1.0",
///     "nodes":  [[re, im], ...],                  // m pairs
///     "values": [[[[re, im], ...], ...], ...],    // m x s x t
///     "metadata": { ... } }                       // optional, free form
///
/// Value documents use the same layout with "format": "mdlawson-values";
/// non-finite entries are written as null.
///

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdlawson/approximant.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/lawson.hpp"
#include "mdlawson/model.hpp"
#include "mdlawson/serialize.hpp"

namespace mdlawson {

inline constexpr const char* kProblemFormat = "mdlawson-problem";
inline constexpr const char* kValuesFormat = "mdlawson-values";
inline constexpr const char* kReportFormat = "mdlawson-report";
inline constexpr const char* kDocumentVersion = "1.0";

struct ProblemDocument {
  SampleSet samples;
  json metadata = json::object();
};

namespace io {

/// Reads a whole file; the message names the path on failure.
inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

/// Parses JSON text, reporting syntax errors with line and column.
inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::MalformedDocument, source + ":" + std::to_string(line) + ":" +
                                                  std::to_string(column) + ": " + e.what());
  }
}

inline json read_json(const std::string& path) { return parse_json(read_text(path), path); }

inline void write_json(const std::string& path, const json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

inline void require_format(const json& doc, const char* format) {
  const json& f = require(doc, "format", "/");
  if (!f.is_string() || f.get<std::string>() != format) {
    malformed("/format", std::string("expected \"") + format + "\"");
  }
  const json& v = require(doc, "version", "/");
  int major = 0;
  int minor = 0;
  if (!v.is_string() || std::sscanf(v.get<std::string>().c_str(), "%d.%d", &major, &minor) != 2) {
    malformed("/version", "expected \"major.minor\"");
  }
  if (major != 1) malformed("/version", "unsupported major version " + std::to_string(major));
}

inline json values_to_json(const MatrixSeries& values) {
  json out = json::array();
  for (const CMatrix& F : values) {
    json rows = json::array();
    for (Index i = 0; i < F.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < F.cols(); ++j) row.push_back(complex_to_json(F(i, j)));
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

inline MatrixSeries values_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) malformed(where, "expected an m x s x t array");
  MatrixSeries out;
  out.reserve(j.size());
  for (std::size_t l = 0; l < j.size(); ++l) {
    const std::string at = where + "/" + std::to_string(l);
    const json& rows = j[l];
    if (!rows.is_array() || rows.empty()) malformed(at, "expected a nonempty s x t array");
    const std::size_t t = rows[0].is_array() ? rows[0].size() : 0;
    if (t == 0) malformed(at + "/0", "expected a nonempty row");
    CMatrix F(static_cast<Index>(rows.size()), static_cast<Index>(t));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != t) {
        malformed(at + "/" + std::to_string(i), "expected a row of length " + std::to_string(t));
      }
      for (std::size_t c = 0; c < t; ++c) {
        F(static_cast<Index>(i), static_cast<Index>(c)) = complex_from_json(
            rows[i][c], at + "/" + std::to_string(i) + "/" + std::to_string(c));
      }
    }
    out.push_back(std::move(F));
  }
  return out;
}

}  // namespace io

inline json problem_to_json(const SampleSet& samples, const json& metadata = json::object()) {
  json doc;
  doc["format"] = kProblemFormat;
  doc["version"] = kDocumentVersion;
  doc["nodes"] = io::complex_list(std::span<const Complex>(samples.nodes()));
  doc["values"] = io::values_to_json(samples.values());
  if (!metadata.empty()) doc["metadata"] = metadata;
  return doc;
}

/// Data errors (duplicate nodes, ragged shapes) keep their own error codes.
inline ProblemDocument problem_from_json(const json& doc) {
  io::require_format(doc, kProblemFormat);
  std::vector<Complex> nodes = io::complex_list_from_json(io::require(doc, "nodes", "/"), "/nodes");
  MatrixSeries values = io::values_from_json(io::require(doc, "values", "/"), "/values");
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    if (!std::isfinite(nodes[l].real()) || !std::isfinite(nodes[l].imag())) {
      io::malformed("/nodes/" + std::to_string(l), "node is not finite");
    }
  }
  for (std::size_t l = 0; l < values.size(); ++l) {
    if (!values[l].allFinite()) {
      io::malformed("/values/" + std::to_string(l), "sampled values must be finite");
    }
  }
  ProblemDocument out{SampleSet(std::move(nodes), std::move(values)), json::object()};
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) io::malformed("/metadata", "expected an object");
    out.metadata = *it;
  }
  return out;
}

inline ProblemDocument read_problem(const std::string& path) {
  return problem_from_json(io::read_json(path));
}

inline json values_document(std::span<const Complex> nodes, const MatrixSeries& values) {
  json doc;
  doc["format"] = kValuesFormat;
  doc["version"] = kDocumentVersion;
  doc["nodes"] = io::complex_list(nodes);
  doc["values"] = io::values_to_json(values);
  return doc;
}

/// Nodes from a problem or value document, or a bare array of [re, im] pairs.
inline std::vector<Complex> nodes_from_json(const json& doc) {
  if (doc.is_array()) return io::complex_list_from_json(doc, "");
  return io::complex_list_from_json(io::require(doc, "nodes", "/"), "/nodes");
}

///
/// Degree text: "n/d" gives n_ij = n for an s x t problem; otherwise the
/// numerator table is written row by row, rows separated by ';' and entries
/// by ',', e.g. "20;12;12/20" or "5,4;4,5/6".
///
inline DegreeSpec parse_degrees(std::string_view text, Index s, Index t) {
  const auto fail = [&](const std::string& why) -> DegreeSpec {
    throw Error(ErrorCode::InvalidArgument,
                "bad degree string '" + std::string(text) + "': " + why);
  };
  const auto to_int = [&](std::string_view part) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(std::string(part), &used);
    } catch (const std::exception&) {
      fail("'" + std::string(part) + "' is not an integer");
    }
    if (used != part.size() || v < 0) fail("'" + std::string(part) + "' is not a nonnegative integer");
    return v;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos) {
    return fail("expected exactly one '/'");
  }
  const int d = to_int(text.substr(slash + 1));
  const std::string_view table = text.substr(0, slash);
  if (table.find_first_of(",;") == std::string_view::npos) {
    return DegreeSpec::uniform(s, t, to_int(table), d);
  }
  std::vector<std::vector<int>> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = table.find(';', start);
    const std::string_view row = table.substr(start, end == std::string_view::npos ? end : end - start);
    std::vector<int> entries;
    std::size_t a = 0;
    while (true) {
      const std::size_t b = row.find(',', a);
      entries.push_back(to_int(row.substr(a, b == std::string_view::npos ? b : b - a)));
      if (b == std::string_view::npos) break;
      a = b + 1;
    }
    rows.push_back(std::move(entries));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (static_cast<Index>(rows.size()) != s) {
    return fail("table has " + std::to_string(rows.size()) + " rows, data has " + std::to_string(s));
  }
  Eigen::MatrixXi n(s, t);
  for (Index i = 0; i < s; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != t) {
      return fail("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                  " entries, data has " + std::to_string(t) + " columns");
    }
    for (Index j = 0; j < t; ++j) n(i, j) = row[static_cast<std::size_t>(j)];
  }
  return {n, d};
}

/// Inverse of parse_degrees, always in table form.
inline std::string format_degrees(const DegreeSpec& degrees) {
  std::string out;
  for (Index i = 0; i < degrees.rows(); ++i) {
    if (i > 0) out += ';';
    for (Index j = 0; j < degrees.cols(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(degrees.numerator(i, j));
    }
  }
  return out + "/" + std::to_string(degrees.denominator());
}

inline json diagnostics_to_json(const Diagnostics& d) {
  json out;
  out["max_sq_error"] = d.max_sq_error;
  out["relative_gap"] = d.relative_gap;
  out["slackness_residual"] =
      std::isfinite(d.slackness_residual) ? json(d.slackness_residual) : json(nullptr);
  out["extreme_points"] = d.extreme_points;
  out["extreme_point_count"] = d.extreme_points.size();
  out["denominator_min_abs"] = d.denominator_min_abs;
  return out;
}

inline json errors_to_json(const ErrorReport& err) {
  json out;
  out["rmse"] = err.rmse;
  out["max_sq_error"] = err.max_sq_error;
  out["max_error"] = std::sqrt(err.max_sq_error);
  out["per_node_fro"] = err.per_node_fro;
  return out;
}

inline json report_to_json(const SolveReport& report, const Diagnostics& diag,
                           const SolverOptions& options, const json& extra = json::object()) {
  json doc;
  doc["format"] = kReportFormat;
  doc["version"] = kDocumentVersion;
  doc["termination"] = std::string(to_string(report.termination));
  json opts;
  opts["lawson_exponent"] = options.lawson_exponent;
  opts["max_iterations"] = options.max_iterations;
  opts["duality_gap_tol"] = options.duality_gap_tol;
  opts["weight_floor"] = options.weight_floor;
  opts["absolute_gap_floor"] = options.absolute_gap_floor;
  doc["options"] = opts;
  json trace = json::array();
  for (const IterationRecord& r : report.iterations) {
    json rec;
    rec["iteration"] = r.iteration;
    rec["dual_value"] = r.dual_value;
    rec["max_sq_error"] = r.max_sq_error;
    rec["relative_gap"] =
        std::isfinite(r.relative_gap) ? json(r.relative_gap) : json(nullptr);
    rec["rmse"] = r.rmse;
    rec["active_node_count"] = r.active_node_count;
    rec["multiplicity_warning"] = r.multiplicity_warning;
    trace.push_back(std::move(rec));
  }
  doc["iterations"] = std::move(trace);
  doc["errors"] = errors_to_json(report.final_errors);
  doc["diagnostics"] = diagnostics_to_json(diag);
  doc["final_weights"] = report.final_weights.entries();
  doc["vanishing_nodes"] = report.vanishing_nodes;
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  return doc;
}

///
/// Whitespace separated columns for external plotting. The first block has
/// one row per node (index, imaginary part of the node, Frobenius error),
/// the second one row per iteration (index, d(w), e(R)).
///
inline void write_plot_data(std::ostream& out, const SampleSet& samples, const SolveReport& report) {
  out << std::setprecision(17);
  out << "# node imag fro_error\n";
  for (Index l = 0; l < samples.size(); ++l) {
    out << l << ' ' << samples.node(l).imag() << ' '
        << report.final_errors.per_node_fro[static_cast<std::size_t>(l)] << '\n';
  }
  out << "\n\n# iteration dual_value max_sq_error\n";
  for (const IterationRecord& r : report.iterations) {
    out << r.iteration << ' ' << r.dual_value << ' ' << r.max_sq_error << '\n';
  }
}

}  // namespace mdlawson

#endif  // MDLAWSON_DOCUMENTS_HPP
