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
// Filterbank design: center frequencies placed equidistantly on a warping
// scale, per-band bandwidths from a Q-factor or ERB-scaled rule, and the
// frequency-coverage metric
//
//   coverage(b) = (bw[b+1] + bw[b]) / 2 / (fc[b+1] - fc[b]) ,
//
// which is 1 for gap-free ideal rectangular filters. For centers equidistant
// on the matching scale the coverage is the same constant for every pair of
// neighboring bands; the closed forms below evaluate that constant directly.

#ifndef ERBFB_DESIGN_HPP_
#define ERBFB_DESIGN_HPP_

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "erbfb/format.hpp"
#include "erbfb/scales.hpp"

namespace erbfb {

inline constexpr int kMaxSolverBands = 4096;

// Bandwidth rules: bw = fc / eta_b (constant Q) or bw = K * ERB(fc).
struct ConstantQ {
  double eta_b;
};

struct ErbScaled {
  double k;
  ErbModel erb;
};

using BandwidthRule = std::variant<ConstantQ, ErbScaled>;

struct DesignRequest {
  double f_min_hz;
  double f_max_hz;
  int n_bands;
  ScaleFunction scale;
  BandwidthRule rule;
};

// Bands are 1-indexed in exports and messages; vectors are 0-based with
// centers.front() == f_min and centers.back() == f_max.
struct FilterbankDesign {
  std::vector<double> centers_hz;
  std::vector<double> bandwidths_hz;
  std::vector<double> q_factors;
  std::vector<double> coverages;  // n_bands - 1 consecutive pairs
};

inline void validate(const DesignRequest& req) {
  if (!std::isfinite(req.f_min_hz) || !std::isfinite(req.f_max_hz) ||
      !(req.f_min_hz > 0.0) || !(req.f_max_hz > req.f_min_hz)) {
    throw std::invalid_argument("design: requires f_max > f_min > 0");
  }
  if (req.n_bands < 2) {
    throw std::invalid_argument("design: n_bands must be >= 2");
  }
  if (const auto* log_form = std::get_if<LogScale>(&req.scale.form)) {
    if (!(req.f_min_hz > log_form->f_m)) {
      throw std::invalid_argument(
          "design: f_min must exceed the scale floor f_m");
    }
  }
  std::visit(overloaded{
                 [](const ConstantQ& r) {
                   if (!(r.eta_b > 0.0)) {
                     throw std::invalid_argument("design: eta_b must be > 0");
                   }
                 },
                 [](const ErbScaled& r) {
                   if (!(r.k > 0.0)) {
                     throw std::invalid_argument(
                         "design: bandwidth scale K must be > 0");
                   }
                 },
             },
             req.rule);
}

/// Centers such that erbs(fc[b]) is the arithmetic progression from
/// erbs(f_min) to erbs(f_max); endpoints are pinned exactly.
inline std::vector<double> center_frequencies(const DesignRequest& req) {
  validate(req);
  const int n = req.n_bands;
  const double u_min = erbs(req.scale, req.f_min_hz);
  const double u_max = erbs(req.scale, req.f_max_hz);
  std::vector<double> centers(static_cast<std::size_t>(n));
  centers.front() = req.f_min_hz;
  centers.back() = req.f_max_hz;
  for (int b = 2; b < n; ++b) {
    const double u = ((n - b) * u_min + (b - 1) * u_max) / (n - 1);
    centers[static_cast<std::size_t>(b - 1)] = erbs_inverse(req.scale, u);
  }
  return centers;
}

inline std::vector<double> bandwidths(const DesignRequest& req,
                                      const std::vector<double>& centers) {
  std::vector<double> out(centers.size());
  std::visit(overloaded{
                 [&](const ConstantQ& r) {
                   for (std::size_t i = 0; i < centers.size(); ++i) {
                     out[i] = centers[i] / r.eta_b;
                   }
                 },
                 [&](const ErbScaled& r) {
                   for (std::size_t i = 0; i < centers.size(); ++i) {
                     out[i] = r.k * erb(r.erb, centers[i]);
                   }
                 },
             },
             req.rule);
  return out;
}

/// Brute-force coverage of each pair of consecutive bands.
inline std::vector<double> coverage_per_band(
    const std::vector<double>& centers, const std::vector<double>& bandwidths) {
  if (centers.size() != bandwidths.size() || centers.size() < 2) {
    throw std::invalid_argument(
        "coverage_per_band: need matching lists of at least 2 bands");
  }
  std::vector<double> out(centers.size() - 1);
  for (std::size_t i = 0; i + 1 < centers.size(); ++i) {
    const double delta = centers[i + 1] - centers[i];
    if (!(delta > 0.0)) {
      throw std::invalid_argument(
          "coverage_per_band: centers must be strictly increasing");
    }
    out[i] = 0.5 * (bandwidths[i + 1] + bandwidths[i]) / delta;
  }
  return out;
}

// Exponentials below go through exp/log composition so that the closed forms
// and the per-band route agree to ~1e-15 instead of diverging through pow.

/// Constant coverage of a constant-Q design on the logarithmic scale:
/// (1/2 eta_b) (r + 1)/(r - 1) with r = (f_max/f_min)^(1/(n-1)).
inline double coverage_closed_form_log(double f_min_hz, double f_max_hz,
                                       int n_bands, double eta_b) {
  if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz)) {
    throw std::invalid_argument(
        "coverage_closed_form_log: requires f_max > f_min > 0");
  }
  if (n_bands < 2) {
    throw std::invalid_argument("coverage_closed_form_log: n_bands >= 2");
  }
  if (!(eta_b > 0.0)) {
    throw std::invalid_argument("coverage_closed_form_log: eta_b > 0");
  }
  const double r = std::exp(std::log(f_max_hz / f_min_hz) / (n_bands - 1));
  return (r + 1.0) / (r - 1.0) / (2.0 * eta_b);
}

/// Constant coverage of an ERB-scaled design on the linear-ERB scale:
/// (E K / 2) (r + 1)/(r - 1) with r = ((D + E f_max)/(D + E f_min))^(1/(n-1)).
inline double coverage_closed_form_linear_erb(double f_min_hz, double f_max_hz,
                                              int n_bands, double d, double e,
                                              double k) {
  if (!(f_min_hz >= 0.0) || !(f_max_hz > f_min_hz)) {
    throw std::invalid_argument(
        "coverage_closed_form_linear_erb: requires f_max > f_min >= 0");
  }
  if (n_bands < 2) {
    throw std::invalid_argument(
        "coverage_closed_form_linear_erb: n_bands >= 2");
  }
  if (!(d >= 0.0) || !(e > 0.0) || !(k > 0.0)) {
    throw std::invalid_argument(
        "coverage_closed_form_linear_erb: requires D >= 0, E > 0, K > 0");
  }
  const double r = std::exp(
      std::log((d + e * f_max_hz) / (d + e * f_min_hz)) / (n_bands - 1));
  return 0.5 * e * k * (r + 1.0) / (r - 1.0);
}

namespace detail {

inline double closed_form_coverage(double f_min_hz, double f_max_hz,
                                   int n_bands, const BandwidthRule& rule) {
  return std::visit(
      overloaded{
          [&](const ConstantQ& r) {
            return coverage_closed_form_log(f_min_hz, f_max_hz, n_bands,
                                            r.eta_b);
          },
          [&](const ErbScaled& r) {
            return std::visit(
                overloaded{
                    [&](const LinearErb& l) {
                      return coverage_closed_form_linear_erb(
                          f_min_hz, f_max_hz, n_bands, l.d, l.e, r.k);
                    },
                    [&](const LogarithmicErb& g) {
                      // bw = K f/A is the constant-Q rule with eta_b = A/K.
                      return coverage_closed_form_log(f_min_hz, f_max_hz,
                                                      n_bands, g.a / r.k);
                    },
                    [&](const PolynomialErb&) -> double {
                      throw std::invalid_argument(
                          "solve_n_bands: polynomial ERB has no closed-form "
                          "coverage");
                    },
                },
                r.erb);
          },
      },
      rule);
}

}  // namespace detail

/// Smallest n_bands >= 2 whose closed-form coverage reaches the target.
/// Coverage grows monotonically with n_bands, so a forward scan suffices;
/// n_bands = 2 is the achievable floor and targets at or below it are
/// rejected with the floor value in the message.
inline int solve_n_bands(double f_min_hz, double f_max_hz,
                         double target_coverage, const BandwidthRule& rule) {
  if (!std::isfinite(target_coverage) || !(target_coverage > 0.0)) {
    throw std::invalid_argument("solve_n_bands: target coverage must be > 0");
  }
  const double floor = detail::closed_form_coverage(f_min_hz, f_max_hz, 2, rule);
  if (!(target_coverage > floor)) {
    throw std::invalid_argument(
        "solve_n_bands: target coverage " + format_sig9(target_coverage) +
        " is not above the achievable floor " + format_sig9(floor) +
        " at n_bands=2");
  }
  for (int n = 3; n <= kMaxSolverBands; ++n) {
    if (detail::closed_form_coverage(f_min_hz, f_max_hz, n, rule) >=
        target_coverage) {
      return n;
    }
  }
  throw NumericalError("solve_n_bands: target coverage not reachable within " +
                       std::to_string(kMaxSolverBands) + " bands");
}

/// Full design: centers, bandwidths, Q-factors, pairwise coverage.
inline FilterbankDesign make_design(const DesignRequest& req) {
  FilterbankDesign design;
  design.centers_hz = center_frequencies(req);
  for (std::size_t i = 0; i + 1 < design.centers_hz.size(); ++i) {
    if (!(design.centers_hz[i + 1] > design.centers_hz[i])) {
      throw NumericalError(
          "make_design: center frequencies collapsed at the requested "
          "resolution (band " +
          std::to_string(i + 1) + ")");
    }
  }
  design.bandwidths_hz = bandwidths(req, design.centers_hz);
  design.q_factors.resize(design.centers_hz.size());
  std::visit(overloaded{
                 [&](const ConstantQ& r) {
                   for (double& q : design.q_factors) q = r.eta_b;
                 },
                 [&](const ErbScaled&) {
                   for (std::size_t i = 0; i < design.q_factors.size(); ++i) {
                     design.q_factors[i] =
                         design.centers_hz[i] / design.bandwidths_hz[i];
                   }
                 },
             },
             req.rule);
  design.coverages =
      coverage_per_band(design.centers_hz, design.bandwidths_hz);
  return design;
}

}  // namespace erbfb

#endif  // ERBFB_DESIGN_HPP_
