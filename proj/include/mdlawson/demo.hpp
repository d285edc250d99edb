// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_DEMO_HPP
#define MDLAWSON_DEMO_HPP

///
/// \file demo.hpp
///
/// Synthetic benchmark problems:
///
///   example1  2x2 symmetric rational target of type (5,6), nodes equispaced
///             on the imaginary segment [1i, 100i]
///   example2  2x2 buckling-plate submatrix (non-rational), nodes
///             logarithmically spaced on [1e-2 i, 10 i]
///   duplexer  3x1 scattering parameters [pN/pD, pT/pD, pR/pD] built monic
///             from tabulated roots, nodes equispaced on [-2i, -1i]
///
/// Noise: one complex sample sigma_l per node, real and imaginary parts
/// N(0, level^2), added to every entry at that node (optionally a fresh
/// sample per entry). The generator is fixed as "mt19937_64/box-muller-v1":
/// std::mt19937_64 seeded with the 64-bit seed; each normal pair takes two
/// draws u = (draw >> 11) * 2^-53 and returns
/// sqrt(-2 ln(1 - u1)) * (cos 2 pi u2, sin 2 pi u2).
///

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdlawson/error.hpp"
#include "mdlawson/model.hpp"

namespace mdlawson::demo {

inline constexpr const char* kNoiseGenerator = "mt19937_64/box-muller-v1";

enum class Problem { Example1, Example2, Duplexer };

inline std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::Example1: return "example1";
    case Problem::Example2: return "example2";
    case Problem::Duplexer: return "duplexer";
  }
  return "unknown";
}

inline std::optional<Problem> parse_problem(std::string_view name) {
  if (name == "example1") return Problem::Example1;
  if (name == "example2") return Problem::Example2;
  if (name == "duplexer") return Problem::Duplexer;
  return std::nullopt;
}

struct DemoSpec {
  Problem problem = Problem::Example1;
  Index sample_count = 1000;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  bool per_entry_noise = false;
};

inline Index default_sample_count(Problem p) {
  switch (p) {
    case Problem::Example1: return 1000;
    case Problem::Example2: return 500;
    case Problem::Duplexer: return 401;
  }
  return 0;
}

inline DemoSpec default_spec(Problem p) {
  DemoSpec spec;
  spec.problem = p;
  spec.sample_count = default_sample_count(p);
  return spec;
}

inline DegreeSpec default_degrees(Problem p) {
  switch (p) {
    case Problem::Example1: return DegreeSpec::uniform(2, 2, 5, 6);
    case Problem::Example2: return DegreeSpec::uniform(2, 2, 10, 10);
    case Problem::Duplexer: {
      Eigen::MatrixXi n(3, 1);
      n << 20, 12, 12;
      return {n, 20};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown demo problem");
}

/// Standard normal pairs from a portable, fully specified recipe.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  std::pair<double, double> next_pair() {
    const double u1 = unit();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
};

namespace detail {

using LComplex = std::complex<long double>;

inline LComplex lc(const char* re, const char* im) {
  return {std::stold(re), std::stold(im)};
}

// Roots of the duplexer polynomials.
inline const std::vector<LComplex>& roots_pd() {
  static const std::vector<LComplex> r = {
      lc("-0.0396", "-1.0564"), lc("-0.1099", "-0.9971"), lc("-0.1452", "-0.8985"),
      lc("-0.0349", "1.0418"),  lc("-0.0990", "0.9864"),  lc("-0.1481", "-0.7199"),
      lc("-0.1404", "0.8811"),  lc("-0.1637", "0.7315"),  lc("-0.1497", "-0.5206"),
      lc("-0.1668", "0.5697"),  lc("-0.1388", "-0.3422"), lc("-0.1484", "0.4140"),
      lc("-0.1170", "0.2846"),  lc("-0.0999", "-0.1895"), lc("-0.0767", "0.1975"),
      lc("-0.0386", "0.1414"),  lc("-0.0111", "0.1166"),  lc("-0.0636", "-0.0772"),
      lc("-0.0427", "0.0014"),  lc("-0.0200", "-0.0024")};
  return r;
}

inline const std::vector<LComplex>& roots_pn() {
  static const std::vector<LComplex> r = {
      lc("-0.0050", "-0.0173"), lc("0.0404", "0.0037"),   lc("-0.0221", "-0.0921"),
      lc("-0.0009", "0.1261"),  lc("-0.0151", "0.1542"),  lc("-0.0217", "-0.2031"),
      lc("0.0231", "0.2331"),   lc("-0.0223", "0.2925"),  lc("-0.0621", "-0.3582"),
      lc("0.0310", "0.4292"),   lc("-0.0142", "-0.5192"), lc("-0.0309", "0.5772"),
      lc("-0.0249", "-0.7174"), lc("0.0352", "0.7185"),   lc("-0.0281", "0.8746"),
      lc("0.0049", "-0.9350"),  lc("0.0957", "-0.9407"),  lc("0.0497", "0.9520"),
      lc("-0.0163", "1.0071"),  lc("-0.0299", "-1.0232")};
  return r;
}

inline const std::vector<LComplex>& roots_pt() {
  static const std::vector<LComplex> r = {
      lc("0.0130", "-0.0070"),  lc("-0.0048", "0.0181"),  lc("-0.0309", "-0.0016"),
      lc("-0.0098", "-0.0443"), lc("-0.0501", "-0.0915"), lc("-0.0647", "-0.2039"),
      lc("-0.0994", "-0.3527"), lc("-0.0890", "-0.5222"), lc("-0.0858", "-0.7178"),
      lc("-0.0650", "-0.9007"), lc("-0.0527", "-1.0230"), lc("-0.0072", "-1.1030")};
  return r;
}

inline const std::vector<LComplex>& roots_pr() {
  static const std::vector<LComplex> r = {
      lc("-0.0071", "0.1128"), lc("-0.0228", "0.1335"), lc("0.0063", "0.1481"),
      lc("-0.0461", "0.1752"), lc("-0.0068", "0.2229"), lc("-0.0740", "0.2899"),
      lc("-0.0735", "0.4291"), lc("-0.0954", "0.5850"), lc("-0.0809", "0.7525"),
      lc("-0.0765", "0.8988"), lc("-0.0430", "1.0096"), lc("-0.0053", "1.1038")};
  return r;
}

inline LComplex monic(const std::vector<LComplex>& roots, LComplex x) {
  LComplex p = 1.0L;
  for (const LComplex& r : roots) p *= (x - r);
  return p;
}

inline Complex narrow(LComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace detail

/// Roots of pD, pN, pT, pR in that order.
inline std::array<std::vector<Complex>, 4> duplexer_roots() {
  std::array<std::vector<Complex>, 4> out;
  const std::array<const std::vector<detail::LComplex>*, 4> src = {
      &detail::roots_pd(), &detail::roots_pn(), &detail::roots_pt(), &detail::roots_pr()};
  for (std::size_t k = 0; k < 4; ++k) {
    for (const auto& r : *src[k]) out[k].push_back(detail::narrow(r));
  }
  return out;
}

/// Closed-form target F(x), evaluated in extended precision.
inline CMatrix target(Problem p, Complex x_in) {
  using detail::LComplex;
  const LComplex x(x_in.real(), x_in.imag());
  switch (p) {
    case Problem::Example1: {
      const LComplex f11 = 2.0L / (x + 1.0L);
      const LComplex f12 = (3.0L - x) / (x * x + x - 5.0L);
      const LComplex f22 = (2.0L + x * x) / (x * x * x + 3.0L * x * x - 1.0L);
      CMatrix F(2, 2);
      F << detail::narrow(f11), detail::narrow(f12), detail::narrow(f12), detail::narrow(f22);
      return F;
    }
    case Problem::Example2: {
      const LComplex two_x = 2.0L * x;
      const LComplex tan_minus_x = std::tan(x) - x;
      const LComplex cot_2x = std::cos(two_x) / std::sin(two_x);
      const LComplex g = x * (1.0L - two_x * cot_2x) / tan_minus_x;
      const LComplex h = x * (two_x - std::sin(two_x)) / (std::sin(two_x) * tan_minus_x);
      CMatrix F(2, 2);
      F << detail::narrow(g + 10.0L), detail::narrow(h), detail::narrow(h),
          detail::narrow(g + 4.0L);
      return F;
    }
    case Problem::Duplexer: {
      const LComplex pd = detail::monic(detail::roots_pd(), x);
      CMatrix F(3, 1);
      F << detail::narrow(detail::monic(detail::roots_pn(), x) / pd),
          detail::narrow(detail::monic(detail::roots_pt(), x) / pd),
          detail::narrow(detail::monic(detail::roots_pr(), x) / pd);
      return F;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown demo problem");
}

/// Equispaced nodes on the segment [a, b], endpoints included.
inline std::vector<Complex> segment(Complex a, Complex b, Index count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "segment needs at least one node");
  std::vector<Complex> nodes(static_cast<std::size_t>(count));
  if (count == 1) {
    nodes[0] = a;
    return nodes;
  }
  for (Index l = 0; l < count; ++l) {
    const double s = double(l) / double(count - 1);
    nodes[static_cast<std::size_t>(l)] = a + s * (b - a);
  }
  return nodes;
}

inline std::vector<Complex> nodes(Problem p, Index count) {
  switch (p) {
    case Problem::Example1: return segment({0.0, 1.0}, {0.0, 100.0}, count);
    case Problem::Example2: {
      std::vector<Complex> out(static_cast<std::size_t>(count));
      for (Index l = 0; l < count; ++l) {
        const double e = count == 1 ? -2.0 : -2.0 + 3.0 * double(l) / double(count - 1);
        out[static_cast<std::size_t>(l)] = {0.0, std::pow(10.0, e)};
      }
      return out;
    }
    case Problem::Duplexer: return segment({0.0, -2.0}, {0.0, -1.0}, count);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown demo problem");
}

inline MatrixSeries targets(Problem p, std::span<const Complex> xs) {
  MatrixSeries out;
  out.reserve(xs.size());
  for (const Complex& x : xs) out.push_back(target(p, x));
  return out;
}

inline SampleSet synthesize(const DemoSpec& spec) {
  if (spec.sample_count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  if (!(spec.noise_level >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise level must be nonnegative");
  }
  std::vector<Complex> xs = nodes(spec.problem, spec.sample_count);
  MatrixSeries values = targets(spec.problem, xs);
  if (spec.noise_level > 0.0) {
    GaussianSource noise(spec.seed);
    for (CMatrix& F : values) {
      if (spec.per_entry_noise) {
        for (Index j = 0; j < F.cols(); ++j) {
          for (Index i = 0; i < F.rows(); ++i) {
            const auto [re, im] = noise.next_pair();
            F(i, j) += spec.noise_level * Complex(re, im);
          }
        }
      } else {
        const auto [re, im] = noise.next_pair();
        F.array() += spec.noise_level * Complex(re, im);
      }
    }
  }
  return {std::move(xs), std::move(values)};
}

}  // namespace mdlawson::demo

#endif  // MDLAWSON_DEMO_HPP
