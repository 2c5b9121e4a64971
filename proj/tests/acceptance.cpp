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
// Acceptance suite: every published number and structural invariant this
// toolkit is built around, one pass/fail line each. The process exit code is
// the number of failed checks.

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "erbfb/design.hpp"
#include "erbfb/format.hpp"
#include "erbfb/gammatone.hpp"
#include "erbfb/harmonic.hpp"
#include "erbfb/scales.hpp"
#include "erbfb/signal.hpp"

namespace {

using namespace erbfb;

const ErbModel kLinear{LinearErb{kGlasbergMooreD, kGlasbergMooreE}};
const ErbModel kLog{LogarithmicErb{kLogErbSlope}};

struct Check {
  bool pass;
  std::string detail;
};

Check check_k4() {
  const double k4 = k_of_n(4);
  return {std::abs(k4 - 0.8865) <= 5e-4,
          "k(4) = " + format_sig9(k4) + ", expected 0.8865 +/- 5e-4"};
}

Check check_gammatone_q() {
  const double q = gammatone_q_factor(4, 7.7);
  return {std::abs(q - 8.69) <= 0.01,
          "Q(4, 7.7) = " + format_sig9(q) + ", expected 8.69 +/- 0.01"};
}

Check per_band_agreement(const FilterbankDesign& design, double closed_form) {
  for (double c : design.coverages) {
    if (!(std::abs(c - closed_form) < 1e-9 * std::abs(closed_form))) {
      return {false, "per-band coverage " + format_sig9(c) +
                         " disagrees with closed form " +
                         format_sig9(closed_form)};
    }
  }
  return {true, ""};
}

Check check_log_coverage() {
  const double cov = coverage_closed_form_log(200.0, 3600.0, 16, 8.69);
  if (std::abs(cov - 0.6) > 0.01) {
    return {false, "closed form " + format_sig9(cov) +
                       " outside 0.6 +/- 0.01"};
  }
  const DesignRequest req{200.0, 3600.0, 16, make_scale(kLog),
                          ConstantQ{8.69}};
  const Check bands = per_band_agreement(make_design(req), cov);
  if (!bands.pass) return bands;
  return {true, "closed form " + format_sig9(cov) +
                    "; 15 per-band values agree to 1e-9"};
}

Check check_linear_coverage() {
  const double cov = coverage_closed_form_linear_erb(200.0, 3600.0, 16, 24.7,
                                                     0.108, 0.8865);
  if (std::abs(cov - 0.66) > 0.01) {
    return {false, "closed form " + format_sig9(cov) +
                       " outside 0.66 +/- 0.01"};
  }
  const DesignRequest req{200.0, 3600.0, 16, make_scale(kLinear),
                          ErbScaled{0.8865, kLinear}};
  const Check bands = per_band_agreement(make_design(req), cov);
  if (!bands.pass) return bands;
  return {true, "closed form " + format_sig9(cov) +
                    "; 15 per-band values agree to 1e-9"};
}

Check check_nb24() {
  const double log_cov =
      coverage_closed_form_log(200.0, 3600.0, 24, gammatone_q_factor(4, 7.7));
  const double lin_cov = coverage_closed_form_linear_erb(
      200.0, 3600.0, 24, 24.7, 0.108, k_of_n(4));
  const bool log_ok = log_cov >= 0.95 && log_cov <= 1.05;
  const bool lin_ok = lin_cov >= 0.95 && lin_cov <= 1.05;
  std::string detail = "at n_bands=24: log " + format_sig9(log_cov) +
                       (log_ok ? " inside" : " OUTSIDE") +
                       " [0.95, 1.05], linear-erb " + format_sig9(lin_cov) +
                       (lin_ok ? " inside" : " OUTSIDE") + " [0.95, 1.05]";
  if (!log_ok) {
    detail += "; the log closed form first reaches 1.0 at n_bands=" +
              std::to_string(solve_n_bands(200.0, 3600.0, 1.0,
                                           ConstantQ{gammatone_q_factor(4, 7.7)}));
  }
  return {log_ok && lin_ok, detail};
}

Check check_scale_constants() {
  const ScaleFunction scale = make_scale(kLinear);
  const auto& form = std::get<LinearScale>(scale.form);
  const double e_err = std::abs(form.e_prime - 21.4) / 21.4;
  const double d_err = std::abs(form.d_prime - 0.00437) / 0.00437;
  return {e_err < 0.005 && d_err < 0.005,
          "E' = " + format_sig9(form.e_prime) + " (" + format_sig9(e_err * 100) +
              "% from 21.4), D' = " + format_sig9(form.d_prime) + " (" +
              format_sig9(d_err * 100) + "% from 0.00437)"};
}

Check check_oracle_equivalence() {
  const ScaleFunction linear = make_scale(kLinear);
  const ScaleFunction logarithmic = make_scale(kLog);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double f = 25.0 * std::exp(std::log(20000.0 / 25.0) * i / 49.0);
    const double u_lin = erbs(linear, f);
    const double u_log = erbs(logarithmic, f);
    const double err_lin = std::abs(u_lin - erbs_numeric(kLinear, f, 0.0)) /
                           std::max(1.0, std::abs(u_lin));
    const double err_log =
        std::abs(u_log - erbs_numeric(kLog, f, kDefaultInaudibleHz)) /
        std::max(1.0, std::abs(u_log));
    worst = std::max({worst, err_lin, err_log});
  }
  return {worst < 1e-6, "worst closed-form vs quadrature error " +
                            format_sig9(worst) + " over 50 points x 2 scales"};
}

Check check_equidistance() {
  const ScaleFunction logarithmic = make_scale(kLog);
  const ScaleFunction linear = make_scale(kLinear);
  double log_lo = std::numeric_limits<double>::infinity(), log_hi = -log_lo;
  double lin_lo = log_lo, lin_hi = -log_lo;
  for (int h = 1; h <= 10; ++h) {
    const double dl = erbs(logarithmic, h * 110.0) - erbs(logarithmic, h * 150.0);
    const double dn = erbs(linear, h * 110.0) - erbs(linear, h * 150.0);
    log_lo = std::min(log_lo, dl);
    log_hi = std::max(log_hi, dl);
    lin_lo = std::min(lin_lo, dn);
    lin_hi = std::max(lin_hi, dn);
  }
  const double log_spread = log_hi - log_lo;
  const double lin_spread = lin_hi - lin_lo;
  return {log_spread < 1e-9 && lin_spread > 0.05,
          "harmonic-difference spread: log " + format_sig9(log_spread) +
              " (< 1e-9), linear-erb " + format_sig9(lin_spread) +
              " (> 0.05)"};
}

Check check_spectral_oracle() {
  const GammatoneFilter filter = make_filter(4, 2000.0, kLinear, 32000.0);
  const BandwidthMeasurement m = measure_bandwidth(filter);
  const double model_erb = erb(kLinear, 2000.0);
  const double erb_err = std::abs(m.erb_hz - model_erb) / model_erb;
  const double k_err =
      std::abs(m.bw3db_hz / m.erb_hz - k_of_n(4)) / k_of_n(4);
  return {erb_err < 0.02 && k_err < 0.02,
          "measured ERB " + format_sig9(m.erb_hz) + " vs model " +
              format_sig9(model_erb) + " (" + format_sig9(erb_err * 100) +
              "%), bw3dB/ERB " + format_sig9(m.bw3db_hz / m.erb_hz) +
              " vs k(4) (" + format_sig9(k_err * 100) + "%)"};
}

Check check_qfactor_behavior() {
  const double kn = k_of_n(4);
  double q_log_min = std::numeric_limits<double>::infinity();
  double q_log_max = -q_log_min;
  double prev_lin = 0.0;
  bool increasing = true;
  const int points = 256;
  double first_lin = 0.0, last_lin = 0.0;
  for (int i = 0; i < points; ++i) {
    const double f =
        200.0 * std::exp(std::log(3600.0 / 200.0) * i / (points - 1));
    const double q_log = f / (kn * erb(kLog, f));
    const double q_lin = f / (kn * erb(kLinear, f));
    q_log_min = std::min(q_log_min, q_log);
    q_log_max = std::max(q_log_max, q_log);
    if (i == 0) {
      first_lin = q_lin;
    } else if (q_lin <= prev_lin) {
      increasing = false;
    }
    prev_lin = q_lin;
    last_lin = q_lin;
  }
  const double log_spread = (q_log_max - q_log_min) / q_log_max;
  return {log_spread < 1e-12 && increasing && first_lin < last_lin,
          "log Q relative spread " + format_sig9(log_spread) +
              "; linear Q " + format_sig9(first_lin) + " -> " +
              format_sig9(last_lin) +
              (increasing ? ", strictly increasing" : ", NOT increasing")};
}

Check check_property_suites() {
  std::mt19937 rng(0xacce97ed);
  std::uniform_real_distribution<double> fmin_dist(25.0, 2000.0);
  std::uniform_real_distribution<double> ratio_dist(1.2, 50.0);
  std::uniform_int_distribution<int> n_dist(2, 64);
  std::uniform_real_distribution<double> eta_dist(0.5, 20.0);
  std::uniform_real_distribution<double> k_dist(0.3, 3.0);
  int draws = 0;

  // center selection invariants + closed-form coverage agreement
  for (int trial = 0; trial < 1000; ++trial, ++draws) {
    const double f_min = fmin_dist(rng);
    const double f_max = f_min * ratio_dist(rng);
    const int n = n_dist(rng);
    DesignRequest req =
        (trial % 2 == 0)
            ? DesignRequest{f_min, f_max, n, make_scale(kLog),
                            ConstantQ{eta_dist(rng)}}
            : DesignRequest{f_min, f_max, n, make_scale(kLinear),
                            ErbScaled{k_dist(rng), kLinear}};
    const FilterbankDesign design = make_design(req);
    if (design.centers_hz.front() != f_min ||
        design.centers_hz.back() != f_max) {
      return {false, "endpoint pinning failed at draw " +
                         std::to_string(trial)};
    }
    const double u_min = erbs(req.scale, f_min);
    const double u_max = erbs(req.scale, f_max);
    const double step = (u_max - u_min) / (n - 1);
    for (std::size_t i = 0; i + 1 < design.centers_hz.size(); ++i) {
      if (!(design.centers_hz[i + 1] > design.centers_hz[i])) {
        return {false, "monotonicity failed at draw " + std::to_string(trial)};
      }
      const double du = erbs(req.scale, design.centers_hz[i + 1]) -
                        erbs(req.scale, design.centers_hz[i]);
      if (!(std::abs(du - step) < 1e-9 * step)) {
        return {false, "equidistance failed at draw " + std::to_string(trial)};
      }
    }
    const double closed =
        detail::closed_form_coverage(f_min, f_max, n, req.rule);
    for (double c : design.coverages) {
      if (!(std::abs(c - closed) < 1e-9 * closed)) {
        return {false,
                "coverage agreement failed at draw " + std::to_string(trial)};
      }
    }
  }

  // coverage grows with the band count
  for (int trial = 0; trial < 1000; ++trial, ++draws) {
    const double f_min = fmin_dist(rng);
    const double f_max = f_min * ratio_dist(rng);
    const int n = n_dist(rng);
    const BandwidthRule rule =
        (trial % 2 == 0) ? BandwidthRule{ConstantQ{eta_dist(rng)}}
                         : BandwidthRule{ErbScaled{k_dist(rng), kLinear}};
    if (!(detail::closed_form_coverage(f_min, f_max, n + 1, rule) >
          detail::closed_form_coverage(f_min, f_max, n, rule))) {
      return {false, "coverage monotonicity failed at draw " +
                         std::to_string(trial)};
    }
  }

  // filterbank linearity
  {
    const DesignRequest req{300.0, 3000.0, 5, make_scale(kLog),
                            ConstantQ{gammatone_q_factor(4, 7.7)}};
    const FilterbankDesign design = make_design(req);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial, ++draws) {
      const std::size_t len = 2048;
      SampledSignal x{std::vector<double>(len), 16000.0};
      SampledSignal y{std::vector<double>(len), 16000.0};
      for (std::size_t k = 0; k < len; ++k) {
        x.samples[k] = amp(rng);
        y.samples[k] = amp(rng);
      }
      const double alpha = coef(rng);
      const double beta = coef(rng);
      SampledSignal combo{std::vector<double>(len), 16000.0};
      for (std::size_t k = 0; k < len; ++k) {
        combo.samples[k] = alpha * x.samples[k] + beta * y.samples[k];
      }
      const auto bx = apply_filterbank(design, 4, x);
      const auto by = apply_filterbank(design, 4, y);
      const auto bc = apply_filterbank(design, 4, combo);
      for (std::size_t b = 0; b < bc.size(); ++b) {
        double err_sq = 0.0, ref_sq = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
          const double expect =
              alpha * bx[b].samples[k] + beta * by[b].samples[k];
          err_sq += (bc[b].samples[k] - expect) * (bc[b].samples[k] - expect);
          ref_sq += expect * expect;
        }
        if (!(std::sqrt(err_sq) <= 1e-9 * std::max(1.0, std::sqrt(ref_sq)))) {
          return {false, "filterbank linearity failed at draw " +
                             std::to_string(trial)};
        }
      }
    }
  }

  // synthesis determinism
  {
    std::uniform_real_distribution<double> f0_dist(60.0, 400.0);
    std::uniform_int_distribution<int> h_dist(1, 12);
    std::uniform_real_distribution<double> a_dist(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial, ++draws) {
      HarmonicSpeaker speaker{f0_dist(rng), {}};
      const int num_h = h_dist(rng);
      for (int h = 0; h < num_h; ++h) {
        speaker.harmonics.push_back(
            {Envelope::constant(a_dist(rng)), a_dist(rng)});
      }
      const SampledSignal one = synthesize(speaker, 0.05, 16000.0);
      const SampledSignal two = synthesize(speaker, 0.05, 16000.0);
      if (one.samples != two.samples) {
        return {false,
                "synthesis determinism failed at draw " + std::to_string(trial)};
      }
    }
  }

  return {true, "all property suites passed over " + std::to_string(draws) +
                    " randomized draws"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Check (*run)();
  };
  const std::vector<Criterion> criteria{
      {"k(4) = 0.8865 +/- 5e-4", check_k4},
      {"gammatone Q(4, 7.7) = 8.69 +/- 0.01", check_gammatone_q},
      {"log-scale coverage 0.6 +/- 0.01 with per-band agreement",
       check_log_coverage},
      {"linear-ERB coverage 0.66 +/- 0.01 with per-band agreement",
       check_linear_coverage},
      {"both coverages in [0.95, 1.05] at n_bands = 24", check_nb24},
      {"scale constants E' ~ 21.4 and D' ~ 0.00437 within 0.5%",
       check_scale_constants},
      {"closed-form scales match quadrature to 1e-6", check_oracle_equivalence},
      {"harmonic equidistance on log scale only", check_equidistance},
      {"spectral oracle: ERB and k(4) within 2% at 2 kHz / 32 kHz",
       check_spectral_oracle},
      {"Q-factor: constant on log scale, rising on linear-ERB",
       check_qfactor_behavior},
      {"randomized property suites (>= 1000 draws)", check_property_suites},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result{false, ""};
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (!result.pass) ++failures;
    std::printf("[%s] %2zu. %s — %s\n", result.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, result.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures;
}
