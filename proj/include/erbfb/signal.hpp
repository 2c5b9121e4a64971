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

#ifndef ERBFB_SIGNAL_HPP_
#define ERBFB_SIGNAL_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace erbfb {

struct SampledSignal {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;
};

inline void validate(const SampledSignal& signal) {
  if (signal.samples.empty()) {
    throw std::invalid_argument("signal: must be non-empty");
  }
  if (!std::isfinite(signal.sample_rate_hz) || !(signal.sample_rate_hz > 0.0)) {
    throw std::invalid_argument("signal: sample rate must be > 0");
  }
  for (double v : signal.samples) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("signal: samples must be finite");
    }
  }
}

inline double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double sum_sq = 0.0;
  for (double v : x) sum_sq += v * v;
  return std::sqrt(sum_sq / static_cast<double>(x.size()));
}

inline double rms(const SampledSignal& signal) {
  return rms(std::span<const double>(signal.samples));
}

}  // namespace erbfb

#endif  // ERBFB_SIGNAL_HPP_
