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
// Gammatone filters with impulse response
//
//   g(t) = t^(n-1) exp(-2 pi b t) cos(2 pi fc t) ,
//
// synthesized directly in the time domain. For this form the ERB is a_n * b
// with a_n = pi (2n-2)! 2^-(2n-2) / ((n-1)!)^2, and the 3-dB bandwidth is
// 2 sqrt(2^(1/n) - 1) * b, so their ratio k(n) depends on the order alone.
// The decay b is always chosen so the filter's ERB matches a prescribed
// bandwidth model. measure_bandwidth() recovers both bandwidths from the
// zero-padded FFT of the impulse response and serves as the numeric check
// on those relations.

#ifndef ERBFB_GAMMATONE_HPP_
#define ERBFB_GAMMATONE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "erbfb/design.hpp"
#include "erbfb/fft.hpp"
#include "erbfb/scales.hpp"
#include "erbfb/signal.hpp"

namespace erbfb {

inline constexpr int kMaxGammatoneOrder = 12;
inline constexpr double kEnvelopeTruncation = 1e-6;
inline constexpr std::size_t kMaxFftLength = std::size_t{1} << 22;

/// a_n: ratio of the filter ERB to the decay parameter b.
inline double gammatone_erb_const(int n) {
  if (n < 1 || n > kMaxGammatoneOrder) {
    throw std::invalid_argument("gammatone: order must be in [1, " +
                                std::to_string(kMaxGammatoneOrder) + "]");
  }
  double fact_2n2 = 1.0;  // (2n-2)!
  for (int i = 2; i <= 2 * n - 2; ++i) fact_2n2 *= i;
  double fact_n1 = 1.0;  // (n-1)!
  for (int i = 2; i <= n - 1; ++i) fact_n1 *= i;
  return std::numbers::pi * fact_2n2 * std::exp2(-(2.0 * n - 2.0)) /
         (fact_n1 * fact_n1);
}

/// k(n) = 2 sqrt(2^(1/n) - 1) / a_n: 3-dB bandwidth per unit ERB.
inline double k_of_n(int n) {
  return 2.0 * std::sqrt(std::exp2(1.0 / n) - 1.0) / gammatone_erb_const(n);
}

/// Q-factor of a gammatone bank on the logarithmic ERB f/A: constant A/k(n).
inline double gammatone_q_factor(int n, double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("gammatone_q_factor: requires A > 0");
  }
  return a / k_of_n(n);
}

struct GammatoneFilter {
  int order;
  double center_hz;
  double erb_hz;
  double decay_hz;     // b, per second
  double duration_s;   // envelope truncated at kEnvelopeTruncation of peak
  double sample_rate_hz;
};

namespace detail {

// Time at which the envelope t^(n-1) exp(-2 pi b t) has fallen to
// kEnvelopeTruncation of its peak.
inline double envelope_duration(int n, double decay_hz) {
  const double rate = 2.0 * std::numbers::pi * decay_hz;
  const double log_cut = -std::log(kEnvelopeTruncation);
  if (n == 1) return log_cut / rate;
  const double t_peak = (n - 1) / rate;
  const auto log_rel = [&](double t) {
    return (n - 1) * std::log(t / t_peak) - rate * (t - t_peak);
  };
  double hi = t_peak + (log_cut + 16.0 * n) / rate;
  while (log_rel(hi) > -log_cut) hi *= 2.0;
  double lo = t_peak;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_rel(mid) > -log_cut) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace detail

/// Filter whose analytic ERB equals erb_hz at the given center.
inline GammatoneFilter make_filter_for_erb(int n, double center_hz,
                                           double erb_hz,
                                           double sample_rate_hz) {
  const double a_n = gammatone_erb_const(n);  // also validates the order
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("gammatone: sample rate must be > 0");
  }
  if (!(center_hz > 0.0) || !(center_hz < sample_rate_hz / 2.0)) {
    throw std::invalid_argument(
        "gammatone: center " + format_sig9(center_hz) +
        " Hz must lie in (0, Nyquist) at sample rate " +
        format_sig9(sample_rate_hz) + " Hz");
  }
  if (!(erb_hz > 0.0)) {
    throw std::invalid_argument("gammatone: ERB must be > 0");
  }
  if (center_hz / erb_hz < 2.0) {
    std::cerr << "erbfb: warning: gammatone center " << format_sig9(center_hz)
              << " Hz is below twice its ERB " << format_sig9(erb_hz)
              << " Hz; bandwidth relations degrade\n";
  }
  const double decay_hz = erb_hz / a_n;
  return GammatoneFilter{n,        center_hz,
                         erb_hz,   decay_hz,
                         detail::envelope_duration(n, decay_hz),
                         sample_rate_hz};
}

/// Filter whose ERB follows the bandwidth model at the center frequency.
inline GammatoneFilter make_filter(int n, double center_hz,
                                   const ErbModel& model,
                                   double sample_rate_hz) {
  return make_filter_for_erb(n, center_hz, erb(model, center_hz),
                             sample_rate_hz);
}

/// Sampled impulse response, normalized to unit magnitude response at the
/// center frequency.
inline SampledSignal impulse_response(const GammatoneFilter& filter) {
  const double fs = filter.sample_rate_hz;
  const std::size_t len =
      static_cast<std::size_t>(std::ceil(filter.duration_s * fs)) + 1;
  std::vector<double> h(len);
  const double w_c = 2.0 * std::numbers::pi * filter.center_hz;
  const double rate = 2.0 * std::numbers::pi * filter.decay_hz;
  for (std::size_t k = 0; k < len; ++k) {
    const double t = static_cast<double>(k) / fs;
    h[k] = std::pow(t, filter.order - 1) * std::exp(-rate * t) *
           std::cos(w_c * t);
  }
  std::complex<double> gain{0.0, 0.0};
  const double dphi = -w_c / fs;
  for (std::size_t k = 0; k < len; ++k) {
    gain += h[k] * std::polar(1.0, dphi * static_cast<double>(k));
  }
  const double g = std::abs(gain);
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw NumericalError("gammatone: degenerate response at the center");
  }
  for (double& v : h) v /= g;
  return SampledSignal{std::move(h), fs};
}

struct BandwidthMeasurement {
  double erb_hz;
  double bw3db_hz;
};

struct SpectrumPoint {
  double freq_hz;
  double magnitude_db;
};

/// Magnitude response over the positive-frequency FFT grid (8x zero-padded
/// impulse response), floored at -200 dB.
inline std::vector<SpectrumPoint> magnitude_spectrum(
    const GammatoneFilter& filter) {
  const SampledSignal ir = impulse_response(filter);
  const std::size_t n_fft = next_pow2(8 * ir.samples.size());
  const std::vector<std::complex<double>> spectrum =
      fft_real(ir.samples, n_fft);
  const double df = filter.sample_rate_hz / static_cast<double>(n_fft);
  std::vector<SpectrumPoint> points(n_fft / 2 + 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double mag = std::abs(spectrum[k]);
    points[k] = {static_cast<double>(k) * df,
                 mag > 1e-10 ? 20.0 * std::log10(mag) : -200.0};
  }
  return points;
}

/// Numeric bandwidths from the power spectrum of the impulse response:
/// ERB as integral of |H|^2 over the peak power, 3-dB width from the
/// half-power crossings (linearly interpolated between bins).
inline BandwidthMeasurement measure_bandwidth(const GammatoneFilter& filter) {
  const SampledSignal ir = impulse_response(filter);
  const double fs = filter.sample_rate_hz;
  const double bw_estimate =
      2.0 * std::sqrt(std::exp2(1.0 / filter.order) - 1.0) * filter.decay_hz;
  const double want_bins = std::ceil(64.0 * fs / bw_estimate);
  std::size_t n_fft = next_pow2(8 * ir.samples.size());
  if (want_bins > static_cast<double>(kMaxFftLength)) {
    throw NumericalError(
        "measure_bandwidth: bandwidth too narrow to resolve at this sample "
        "rate");
  }
  n_fft = std::max(n_fft, next_pow2(static_cast<std::size_t>(want_bins)));
  if (n_fft > kMaxFftLength) {
    throw NumericalError(
        "measure_bandwidth: required FFT length exceeds the limit");
  }
  const std::vector<std::complex<double>> spectrum =
      fft_real(ir.samples, n_fft);
  const std::size_t half = n_fft / 2;
  std::vector<double> power(half + 1);
  double p_max = 0.0;
  std::size_t k_max = 0;
  for (std::size_t k = 0; k <= half; ++k) {
    power[k] = std::norm(spectrum[k]);
    if (power[k] > p_max) {
      p_max = power[k];
      k_max = k;
    }
  }
  const double df = fs / static_cast<double>(n_fft);
  double sum_power = 0.0;
  for (std::size_t k = 0; k <= half; ++k) sum_power += power[k];
  const double erb_measured = sum_power * df / p_max;

  const double half_power = 0.5 * p_max;
  if (power.front() >= half_power || power.back() >= half_power) {
    throw NumericalError(
        "measure_bandwidth: 3-dB region not contained in the spectrum");
  }
  std::size_t lo = k_max;
  while (power[lo] >= half_power) --lo;
  std::size_t hi = k_max;
  while (power[hi] >= half_power) ++hi;
  const double edge_lo = static_cast<double>(lo) +
                         (half_power - power[lo]) / (power[lo + 1] - power[lo]);
  const double edge_hi = static_cast<double>(hi) -
                         (half_power - power[hi]) / (power[hi - 1] - power[hi]);
  const double bins_across = edge_hi - edge_lo;
  if (bins_across < 32.0) {
    throw NumericalError(
        "measure_bandwidth: under-resolved spectrum (fewer than 32 bins "
        "across the 3-dB width)");
  }
  return BandwidthMeasurement{erb_measured, bins_across * df};
}

/// One subband per design band: the input convolved with that band's
/// gammatone impulse response, truncated to the input length. Each band's
/// 3-dB bandwidth is the design bandwidth, so the target ERB is
/// bandwidth / k(n). Band order and content are independent of evaluation
/// order.
inline std::vector<SampledSignal> apply_filterbank(
    const FilterbankDesign& design, int order, const SampledSignal& input) {
  validate(input);
  if (design.centers_hz.empty() ||
      design.centers_hz.size() != design.bandwidths_hz.size()) {
    throw std::invalid_argument(
        "apply_filterbank: design must carry matching centers and "
        "bandwidths");
  }
  const double nyquist = input.sample_rate_hz / 2.0;
  std::string offenders;
  for (std::size_t b = 0; b < design.centers_hz.size(); ++b) {
    if (design.centers_hz[b] >= nyquist) {
      if (!offenders.empty()) offenders += ", ";
      offenders += std::to_string(b + 1);
    }
  }
  if (!offenders.empty()) {
    throw std::invalid_argument(
        "apply_filterbank: band centers at or above Nyquist: bands " +
        offenders);
  }
  const double kn = k_of_n(order);
  std::vector<SampledSignal> subbands;
  subbands.reserve(design.centers_hz.size());
  for (std::size_t b = 0; b < design.centers_hz.size(); ++b) {
    const GammatoneFilter filter =
        make_filter_for_erb(order, design.centers_hz[b],
                            design.bandwidths_hz[b] / kn, input.sample_rate_hz);
    const SampledSignal ir = impulse_response(filter);
    std::vector<double> y = convolve_fft(input.samples, ir.samples);
    y.resize(input.samples.size());
    subbands.push_back(SampledSignal{std::move(y), input.sample_rate_hz});
  }
  return subbands;
}

}  // namespace erbfb

#endif  // ERBFB_GAMMATONE_HPP_
