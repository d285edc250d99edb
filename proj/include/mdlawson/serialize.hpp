// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_SERIALIZE_HPP
#define MDLAWSON_SERIALIZE_HPP

///
/// \file serialize.hpp
///
/// JSON documents for fitted approximants. The document keeps the Hessenberg
/// recurrences, the active nodes and the coefficient vectors, which is all
/// evaluation needs; the Q columns are not stored. Complex numbers are
/// [re, im] pairs and doubles are written in shortest round-trip form, so a
/// restored approximant evaluates bit-identically to the original.
///
/// Versioning: major 1 is understood. Minor 0 predates `fit_weights`; such
/// documents load with a warning and without weights.
///

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdlawson/approximant.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson {

using json = nlohmann::json;

inline constexpr const char* kApproximantFormat = "mdlawson-approximant";
inline constexpr int kApproximantMajor = 1;
inline constexpr int kApproximantMinor = 1;

namespace io {

/// [re, im], or null when either part is not finite.
inline json complex_to_json(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return nullptr;
  return json::array({z.real(), z.imag()});
}

inline json complex_list(std::span<const Complex> values) {
  json out = json::array();
  for (const Complex& z : values) out.push_back(complex_to_json(z));
  return out;
}

inline json complex_list(const CVector& v) {
  return complex_list(std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())));
}

[[noreturn]] inline void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, "at " + where + ": " + what);
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) malformed(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where, std::string("missing field '") + key + "'");
  return *it;
}

inline double number_from_json(const json& j, const std::string& where) {
  if (!j.is_number()) malformed(where, "expected a number");
  return j.get<double>();
}

inline long long integer_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer()) malformed(where, "expected an integer");
  return j.get<long long>();
}

/// Null decodes to NaN + NaN i.
inline Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_null()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    malformed(where, "expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<Complex> complex_list_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) malformed(where, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(complex_from_json(j[k], where + "/" + std::to_string(k)));
  }
  return out;
}

inline CVector to_cvector(const std::vector<Complex>& v) {
  return Eigen::Map<const CVector>(v.data(), static_cast<Index>(v.size()));
}

inline json basis_to_json(const ArnoldiBasis& basis) {
  json h = json::array();
  for (Index i = 0; i < basis.hessenberg.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < basis.hessenberg.cols(); ++j) {
      row.push_back(complex_to_json(basis.hessenberg(i, j)));
    }
    h.push_back(std::move(row));
  }
  return {
      {"degree", basis.degree},
      {"weight_norm", basis.weight_norm},
      {"breakout", complex_to_json(basis.breakout)},
      {"hessenberg", std::move(h)},
      {"active_nodes", complex_list(basis.active_nodes)},
  };
}

inline ArnoldiBasis basis_from_json(const json& j, const std::string& where) {
  ArnoldiBasis basis;
  const long long degree = integer_from_json(require(j, "degree", where), where + "/degree");
  if (degree < 0) malformed(where + "/degree", "must be nonnegative");
  basis.degree = static_cast<int>(degree);
  basis.weight_norm = number_from_json(require(j, "weight_norm", where), where + "/weight_norm");
  if (!(basis.weight_norm > 0.0)) malformed(where + "/weight_norm", "must be positive");
  basis.breakout = complex_from_json(require(j, "breakout", where), where + "/breakout");
  basis.active_nodes =
      complex_list_from_json(require(j, "active_nodes", where), where + "/active_nodes");
  if (static_cast<long long>(basis.active_nodes.size()) < degree + 1) {
    malformed(where + "/active_nodes", "fewer than degree+1 nodes");
  }
  const json& h = require(j, "hessenberg", where);
  const Index k1 = basis.degree + 1;
  if (!h.is_array() || static_cast<Index>(h.size()) != k1) {
    malformed(where + "/hessenberg", "expected " + std::to_string(k1) + " rows");
  }
  basis.hessenberg.resize(k1, k1);
  for (Index r = 0; r < k1; ++r) {
    const std::string row_where = where + "/hessenberg/" + std::to_string(r);
    const std::vector<Complex> row = complex_list_from_json(h[static_cast<std::size_t>(r)], row_where);
    if (static_cast<Index>(row.size()) != k1) {
      malformed(row_where, "expected " + std::to_string(k1) + " entries");
    }
    for (Index c = 0; c < k1; ++c) basis.hessenberg(r, c) = row[static_cast<std::size_t>(c)];
  }
  return basis;
}

}  // namespace io

inline json serialize(const RationalApproximant& approx) {
  const Index s = approx.rows();
  const Index t = approx.cols();
  json degrees = json::array();
  json numerators = json::array();
  for (Index i = 0; i < s; ++i) {
    json drow = json::array();
    json nrow = json::array();
    for (Index j = 0; j < t; ++j) {
      drow.push_back(approx.degrees.numerator(i, j));
      nrow.push_back(io::complex_list(approx.numerator(i, j)));
    }
    degrees.push_back(std::move(drow));
    numerators.push_back(std::move(nrow));
  }
  json doc = {
      {"format", kApproximantFormat},
      {"version", std::to_string(kApproximantMajor) + "." + std::to_string(kApproximantMinor)},
      {"shape", {s, t}},
      {"numerator_degrees", std::move(degrees)},
      {"denominator_degree", approx.degrees.denominator()},
      {"denominator_coefficients", io::complex_list(approx.denom_coeffs)},
      {"numerator_coefficients", std::move(numerators)},
      {"denominator_basis", io::basis_to_json(approx.denom_basis)},
      {"numerator_basis", io::basis_to_json(approx.numer_basis)},
  };
  if (approx.fit_weights) doc["fit_weights"] = approx.fit_weights->entries();
  return doc;
}

struct LoadedApproximant {
  RationalApproximant approximant;
  std::vector<std::string> warnings;
};

inline LoadedApproximant deserialize(const json& doc) {
  using io::malformed;
  using io::require;
  LoadedApproximant out;
  RationalApproximant& a = out.approximant;

  if (!doc.is_object()) malformed("/", "expected an object");
  const json& format = require(doc, "format", "/");
  if (!format.is_string() || format.get<std::string>() != kApproximantFormat) {
    malformed("/format", std::string("expected \"") + kApproximantFormat + "\"");
  }
  const json& version = require(doc, "version", "/");
  int major = -1;
  int minor = -1;
  if (!version.is_string() ||
      std::sscanf(version.get<std::string>().c_str(), "%d.%d", &major, &minor) != 2) {
    malformed("/version", "expected \"major.minor\"");
  }
  if (major != kApproximantMajor) {
    malformed("/version", "unsupported major version " + std::to_string(major));
  }

  const json& shape = require(doc, "shape", "/");
  if (!shape.is_array() || shape.size() != 2 || !shape[0].is_number_integer() ||
      !shape[1].is_number_integer() || shape[0].get<long long>() < 1 ||
      shape[1].get<long long>() < 1) {
    malformed("/shape", "expected [s, t] with s, t >= 1");
  }
  const Index s = shape[0].get<Index>();
  const Index t = shape[1].get<Index>();

  const json& nd = require(doc, "numerator_degrees", "/");
  if (!nd.is_array() || static_cast<Index>(nd.size()) != s) {
    malformed("/numerator_degrees", "expected " + std::to_string(s) + " rows");
  }
  Eigen::MatrixXi numer(s, t);
  for (Index i = 0; i < s; ++i) {
    const json& row = nd[static_cast<std::size_t>(i)];
    const std::string where = "/numerator_degrees/" + std::to_string(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != t) {
      malformed(where, "expected " + std::to_string(t) + " entries");
    }
    for (Index j = 0; j < t; ++j) {
      const long long v =
          io::integer_from_json(row[static_cast<std::size_t>(j)], where + "/" + std::to_string(j));
      if (v < 0) malformed(where + "/" + std::to_string(j), "degree must be nonnegative");
      numer(i, j) = static_cast<int>(v);
    }
  }
  const long long d =
      io::integer_from_json(require(doc, "denominator_degree", "/"), "/denominator_degree");
  if (d < 0) malformed("/denominator_degree", "must be nonnegative");
  a.degrees = DegreeSpec(numer, static_cast<int>(d));

  a.denom_coeffs = io::to_cvector(io::complex_list_from_json(
      require(doc, "denominator_coefficients", "/"), "/denominator_coefficients"));
  if (a.denom_coeffs.size() != d + 1) {
    malformed("/denominator_coefficients", "expected " + std::to_string(d + 1) + " entries");
  }

  const json& nc = require(doc, "numerator_coefficients", "/");
  if (!nc.is_array() || static_cast<Index>(nc.size()) != s) {
    malformed("/numerator_coefficients", "expected " + std::to_string(s) + " rows");
  }
  a.numer_coeffs.resize(static_cast<std::size_t>(s * t));
  for (Index i = 0; i < s; ++i) {
    const json& row = nc[static_cast<std::size_t>(i)];
    const std::string rw = "/numerator_coefficients/" + std::to_string(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != t) {
      malformed(rw, "expected " + std::to_string(t) + " entries");
    }
    for (Index j = 0; j < t; ++j) {
      const std::string where = rw + "/" + std::to_string(j);
      CVector c = io::to_cvector(io::complex_list_from_json(row[static_cast<std::size_t>(j)], where));
      if (c.size() != numer(i, j) + 1) {
        malformed(where, "expected " + std::to_string(numer(i, j) + 1) +
                             " coefficients for numerator degree " + std::to_string(numer(i, j)));
      }
      a.numer_coeffs[static_cast<std::size_t>(i + j * s)] = std::move(c);
    }
  }

  a.denom_basis = io::basis_from_json(require(doc, "denominator_basis", "/"), "/denominator_basis");
  a.numer_basis = io::basis_from_json(require(doc, "numerator_basis", "/"), "/numerator_basis");
  if (a.denom_basis.degree != d) {
    malformed("/denominator_basis/degree", "does not match denominator_degree");
  }
  if (a.numer_basis.degree != a.degrees.max_numerator()) {
    malformed("/numerator_basis/degree", "does not match the largest numerator degree");
  }

  auto fw = doc.find("fit_weights");
  if (fw != doc.end()) {
    if (!fw->is_array()) malformed("/fit_weights", "expected an array of numbers");
    std::vector<double> w;
    for (std::size_t k = 0; k < fw->size(); ++k) {
      w.push_back(io::number_from_json((*fw)[k], "/fit_weights/" + std::to_string(k)));
    }
    try {
      a.fit_weights = WeightVector(std::move(w));
    } catch (const Error& e) {
      malformed("/fit_weights", e.what());
    }
  } else if (minor < 1) {
    out.warnings.push_back("document version " + version.get<std::string>() +
                           " carries no fit_weights; slackness diagnostics unavailable");
  } else {
    malformed("/", "missing field 'fit_weights'");
  }
  return out;
}

}  // namespace mdlawson

#endif  // MDLAWSON_SERIALIZE_HPP
