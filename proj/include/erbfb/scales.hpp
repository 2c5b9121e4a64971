// Copyright 2026 The erbfb Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Equivalent-rectangular-bandwidth (ERB) models and the frequency-warping
// scales obtained by integrating 1/ERB(f). Three bandwidth families are
// supported:
//
//   polynomial   ERB(f) = a f^2 + b f + c
//   linear       ERB(f) = D + E f          (Glasberg-Moore: D=24.7, E=0.108)
//   logarithmic  ERB(f) = f / A            (A=7.7 fits published data)
//
// The linear family integrates to u(f) = ln(1 + (E/D) f) / E, equivalently
// E' lg(1 + D' f) with D' = E/D and E' = 1/(E lg e). The logarithmic family
// integrates to u(f) = A ln(f / f_m) above the inaudible floor f_m and is
// pinned to 0 on [0, f_m]. The polynomial family has no closed form here and
// is only reachable through the numeric integrator.

#ifndef ERBFB_SCALES_HPP_
#define ERBFB_SCALES_HPP_

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "erbfb/quadrature.hpp"

namespace erbfb {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

inline constexpr double kDefaultInaudibleHz = 20.0;  // f_m
inline constexpr double kGlasbergMooreD = 24.7;
inline constexpr double kGlasbergMooreE = 0.108;
inline constexpr double kLogErbSlope = 7.7;  // A

struct PolynomialErb {
  double a;
  double b;
  double c;
};

struct LinearErb {
  double d;
  double e;
};

struct LogarithmicErb {
  double a;
};

using ErbModel = std::variant<PolynomialErb, LinearErb, LogarithmicErb>;

/// Bandwidth of the model at f_hz. Each family declares its own domain:
/// f >= 0 for polynomial/linear, f > 0 for logarithmic; the polynomial is
/// additionally rejected wherever it evaluates non-positive.
inline double erb(const ErbModel& model, double f_hz) {
  if (!std::isfinite(f_hz)) {
    throw std::invalid_argument("erb: frequency must be finite");
  }
  return std::visit(
      overloaded{
          [&](const PolynomialErb& p) {
            if (f_hz < 0.0) {
              throw std::invalid_argument(
                  "erb: polynomial model requires f >= 0");
            }
            const double value = (p.a * f_hz + p.b) * f_hz + p.c;
            if (!(value > 0.0)) {
              throw std::invalid_argument(
                  "erb: polynomial model is non-positive at " +
                  std::to_string(f_hz) + " Hz");
            }
            return value;
          },
          [&](const LinearErb& l) {
            if (!(l.d >= 0.0) || !(l.e > 0.0)) {
              throw std::invalid_argument(
                  "erb: linear model requires D >= 0 and E > 0");
            }
            if (f_hz < 0.0) {
              throw std::invalid_argument("erb: linear model requires f >= 0");
            }
            return l.d + l.e * f_hz;
          },
          [&](const LogarithmicErb& g) {
            if (!(g.a > 0.0)) {
              throw std::invalid_argument(
                  "erb: logarithmic model requires A > 0");
            }
            if (!(f_hz > 0.0)) {
              throw std::invalid_argument(
                  "erb: logarithmic model requires f > 0");
            }
            return f_hz / g.a;
          },
      },
      model);
}

struct LinearScale {
  double d_prime;  // E / D
  double e_prime;  // 1 / (E lg e), the log10 prefactor
  double e;
};

struct LogScale {
  double a;
  double c;  // -A ln(f_m)
  double f_m;
};

/// A warping scale u = ERBS(f) with its inverse. Strictly increasing above
/// domain_floor_hz; the logarithmic form is identically 0 on [0, f_m].
struct ScaleFunction {
  ErbModel model;
  std::variant<LinearScale, LogScale> form;
  double domain_floor_hz;
};

inline ScaleFunction make_scale(const ErbModel& model,
                                double f_m_hz = kDefaultInaudibleHz) {
  return std::visit(
      overloaded{
          [&](const PolynomialErb&) -> ScaleFunction {
            throw std::invalid_argument(
                "make_scale: polynomial ERB has no closed-form scale; "
                "use erbs_numeric");
          },
          [&](const LinearErb& l) -> ScaleFunction {
            if (!(l.d > 0.0) || !(l.e > 0.0)) {
              throw std::invalid_argument(
                  "make_scale: linear scale requires D > 0 and E > 0");
            }
            const LinearScale s{l.e / l.d, 1.0 / (l.e * std::numbers::log10e),
                                l.e};
            return ScaleFunction{model, s, 0.0};
          },
          [&](const LogarithmicErb& g) -> ScaleFunction {
            if (!(g.a > 0.0)) {
              throw std::invalid_argument("make_scale: requires A > 0");
            }
            if (!std::isfinite(f_m_hz) || !(f_m_hz > 0.0)) {
              throw std::invalid_argument("make_scale: requires f_m > 0");
            }
            const LogScale s{g.a, -g.a * std::log(f_m_hz), f_m_hz};
            return ScaleFunction{model, s, f_m_hz};
          },
      },
      model);
}

/// Forward warp, in scale units (numbers of ERBs).
inline double erbs(const ScaleFunction& scale, double f_hz) {
  if (!std::isfinite(f_hz) || f_hz < 0.0) {
    throw std::invalid_argument("erbs: frequency must be finite and >= 0");
  }
  return std::visit(
      overloaded{
          [&](const LinearScale& s) {
            return std::log1p(s.d_prime * f_hz) / s.e;
          },
          [&](const LogScale& s) {
            return f_hz <= s.f_m ? 0.0 : s.a * std::log(f_hz / s.f_m);
          },
      },
      scale.form);
}

/// Inverse warp. Defined for u >= 0; the flat region of the logarithmic
/// scale makes the inverse at u = 0 the floor f_m by convention.
inline double erbs_inverse(const ScaleFunction& scale, double u) {
  if (!std::isfinite(u) || u < 0.0) {
    throw std::invalid_argument("erbs_inverse: scale value must be >= 0");
  }
  const double f_hz = std::visit(
      overloaded{
          [&](const LinearScale& s) { return std::expm1(u * s.e) / s.d_prime; },
          [&](const LogScale& s) { return s.f_m * std::exp(u / s.a); },
      },
      scale.form);
  if (!std::isfinite(f_hz)) {
    throw std::invalid_argument(
        "erbs_inverse: scale value exceeds the representable range");
  }
  return f_hz;
}

/// Numeric ERBS: integral of 1/ERB from f_ref to f by adaptive quadrature.
/// This is the oracle the closed forms are checked against, and the only
/// scale available for the polynomial family.
inline double erbs_numeric(const ErbModel& model, double f_hz,
                           double f_ref_hz) {
  erb(model, f_ref_hz);  // domain checks
  erb(model, f_hz);
  if (f_hz < f_ref_hz) {
    throw std::invalid_argument("erbs_numeric: requires f >= f_ref");
  }
  if (f_hz == f_ref_hz) return 0.0;
  return integrate_adaptive_simpson(
      [&](double x) { return 1.0 / erb(model, x); }, f_ref_hz, f_hz);
}

struct ErbPoint {
  double freq_hz;
  double erb_hz;
};

/// Least-squares slope of the logarithmic family through measured
/// (f, ERB) points: minimizes sum (erb_i - f_i/A)^2, giving
/// A = sum f_i^2 / sum f_i erb_i.
inline double fit_log_erb_slope(std::span<const ErbPoint> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("fit_log_erb_slope: need at least 2 points");
  }
  double sum_ff = 0.0;
  double sum_fe = 0.0;
  for (const ErbPoint& p : points) {
    if (!std::isfinite(p.freq_hz) || !std::isfinite(p.erb_hz) ||
        !(p.freq_hz > 0.0) || !(p.erb_hz > 0.0)) {
      throw std::invalid_argument(
          "fit_log_erb_slope: points must have positive frequency and ERB");
    }
    sum_ff += p.freq_hz * p.freq_hz;
    sum_fe += p.freq_hz * p.erb_hz;
  }
  return sum_ff / sum_fe;
}

inline double fit_residual_rms(std::span<const ErbPoint> points,
                               double slope_a) {
  if (points.empty() || !(slope_a > 0.0)) {
    throw std::invalid_argument("fit_residual_rms: invalid input");
  }
  double sum_sq = 0.0;
  for (const ErbPoint& p : points) {
    const double r = p.erb_hz - p.freq_hz / slope_a;
    sum_sq += r * r;
  }
  return std::sqrt(sum_sq / static_cast<double>(points.size()));
}

}  // namespace erbfb

#endif  // ERBFB_SCALES_HPP_
