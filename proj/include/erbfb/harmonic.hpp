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
// Harmonic speaker model: a voice is a sum of amplitude-modulated cosines at
// integer multiples of a fundamental, s(t) = sum_h A_h(t) cos(2 pi h f0 t +
// phi_h). Envelopes are constants or piecewise-linear breakpoint tracks;
// phases are constant per harmonic.

#ifndef ERBFB_HARMONIC_HPP_
#define ERBFB_HARMONIC_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "erbfb/signal.hpp"

namespace erbfb {

struct EnvelopeBreakpoint {
  double time_s;
  double amplitude;
};

/// Non-negative piecewise-linear amplitude track, clamped beyond its ends.
struct Envelope {
  std::vector<EnvelopeBreakpoint> points;

  static Envelope constant(double amplitude) {
    return Envelope{{{0.0, amplitude}}};
  }

  double value(double t) const {
    if (t <= points.front().time_s) return points.front().amplitude;
    if (t >= points.back().time_s) return points.back().amplitude;
    const auto it = std::upper_bound(
        points.begin(), points.end(), t,
        [](double time, const EnvelopeBreakpoint& p) { return time < p.time_s; });
    const EnvelopeBreakpoint& rhs = *it;
    const EnvelopeBreakpoint& lhs = *(it - 1);
    const double dt = rhs.time_s - lhs.time_s;
    if (!(dt > 0.0)) return rhs.amplitude;
    return lhs.amplitude + (rhs.amplitude - lhs.amplitude) * (t - lhs.time_s) / dt;
  }
};

inline void validate(const Envelope& envelope) {
  if (envelope.points.empty()) {
    throw std::invalid_argument("envelope: needs at least one breakpoint");
  }
  double prev_t = -std::numeric_limits<double>::infinity();
  for (const EnvelopeBreakpoint& p : envelope.points) {
    if (!std::isfinite(p.time_s) || !std::isfinite(p.amplitude)) {
      throw std::invalid_argument("envelope: breakpoints must be finite");
    }
    if (p.amplitude < 0.0) {
      throw std::invalid_argument("envelope: amplitudes must be >= 0");
    }
    if (p.time_s < prev_t) {
      throw std::invalid_argument("envelope: breakpoint times must be sorted");
    }
    prev_t = p.time_s;
  }
}

struct Harmonic {
  Envelope envelope = Envelope::constant(0.0);
  double phase_rad = 0.0;
};

/// harmonics[i] carries order i+1; the highest order must stay below
/// Nyquist at synthesis time.
struct HarmonicSpeaker {
  double f0_hz = 0.0;
  std::vector<Harmonic> harmonics;
};

inline SampledSignal synthesize(const HarmonicSpeaker& speaker,
                                double duration_s, double sample_rate_hz) {
  if (!std::isfinite(speaker.f0_hz) || !(speaker.f0_hz > 0.0)) {
    throw std::invalid_argument("synthesize: f0 must be > 0");
  }
  if (speaker.harmonics.empty()) {
    throw std::invalid_argument("synthesize: at least one harmonic required");
  }
  if (!(duration_s > 0.0) || !(sample_rate_hz > 0.0)) {
    throw std::invalid_argument(
        "synthesize: duration and sample rate must be > 0");
  }
  for (std::size_t i = 0; i < speaker.harmonics.size(); ++i) {
    validate(speaker.harmonics[i].envelope);
    const double f = static_cast<double>(i + 1) * speaker.f0_hz;
    if (f >= sample_rate_hz / 2.0) {
      throw std::invalid_argument(
          "synthesize: harmonic " + std::to_string(i + 1) + " at " +
          std::to_string(f) + " Hz aliases at sample rate " +
          std::to_string(sample_rate_hz) + " Hz");
    }
  }
  const std::size_t len = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(duration_s * sample_rate_hz)));
  std::vector<double> x(len, 0.0);
  for (std::size_t i = 0; i < speaker.harmonics.size(); ++i) {
    const Harmonic& h = speaker.harmonics[i];
    const double w = 2.0 * std::numbers::pi * static_cast<double>(i + 1) *
                     speaker.f0_hz;
    for (std::size_t k = 0; k < len; ++k) {
      const double t = static_cast<double>(k) / sample_rate_hz;
      x[k] += h.envelope.value(t) * std::cos(w * t + h.phase_rad);
    }
  }
  return SampledSignal{std::move(x), sample_rate_hz};
}

/// Sample-wise sum of the speakers' signals.
inline SampledSignal mix(std::span<const HarmonicSpeaker> speakers,
                         double duration_s, double sample_rate_hz) {
  if (speakers.empty()) {
    throw std::invalid_argument("mix: need at least one speaker");
  }
  SampledSignal acc = synthesize(speakers[0], duration_s, sample_rate_hz);
  for (std::size_t q = 1; q < speakers.size(); ++q) {
    const SampledSignal s = synthesize(speakers[q], duration_s, sample_rate_hz);
    for (std::size_t k = 0; k < acc.samples.size(); ++k) {
      acc.samples[k] += s.samples[k];
    }
  }
  return acc;
}

}  // namespace erbfb

#endif  // ERBFB_HARMONIC_HPP_
