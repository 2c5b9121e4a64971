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
// Speaker spec JSON:
//
//   { "f0_hz": 110,
//     "harmonics": [
//       { "order": 1, "amplitude": 1.0, "phase": 0.0 },
//       { "order": 3, "breakpoints": [[0.0, 0.0], [0.5, 1.0]] } ] }
//
// A file holds one speaker object or an array of them. Orders not listed get
// a zero envelope. Requires nlohmann/json on the include path.

#ifndef ERBFB_SPEAKER_JSON_HPP_
#define ERBFB_SPEAKER_JSON_HPP_

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "erbfb/harmonic.hpp"

namespace erbfb {

inline Envelope envelope_from_json(const nlohmann::json& j) {
  if (j.contains("amplitude") && j.contains("breakpoints")) {
    throw std::invalid_argument(
        "speaker spec: harmonic cannot have both amplitude and breakpoints");
  }
  Envelope envelope;
  if (j.contains("breakpoints")) {
    for (const auto& bp : j.at("breakpoints")) {
      if (!bp.is_array() || bp.size() != 2) {
        throw std::invalid_argument(
            "speaker spec: breakpoints must be [time_s, amplitude] pairs");
      }
      envelope.points.push_back(
          {bp[0].get<double>(), bp[1].get<double>()});
    }
  } else {
    envelope = Envelope::constant(j.value("amplitude", 0.0));
  }
  validate(envelope);
  return envelope;
}

inline HarmonicSpeaker speaker_from_json(const nlohmann::json& j) {
  HarmonicSpeaker speaker;
  speaker.f0_hz = j.at("f0_hz").get<double>();
  if (!(speaker.f0_hz > 0.0)) {
    throw std::invalid_argument("speaker spec: f0_hz must be > 0");
  }
  const auto& harmonics = j.at("harmonics");
  if (!harmonics.is_array() || harmonics.empty()) {
    throw std::invalid_argument(
        "speaker spec: harmonics must be a non-empty array");
  }
  int max_order = 0;
  for (const auto& h : harmonics) {
    const int order = h.at("order").get<int>();
    if (order < 1) {
      throw std::invalid_argument("speaker spec: harmonic order must be >= 1");
    }
    max_order = std::max(max_order, order);
  }
  speaker.harmonics.assign(static_cast<std::size_t>(max_order), Harmonic{});
  std::vector<bool> seen(static_cast<std::size_t>(max_order), false);
  for (const auto& h : harmonics) {
    const auto idx = static_cast<std::size_t>(h.at("order").get<int>() - 1);
    if (seen[idx]) {
      throw std::invalid_argument("speaker spec: duplicate harmonic order " +
                                  std::to_string(idx + 1));
    }
    seen[idx] = true;
    speaker.harmonics[idx].envelope = envelope_from_json(h);
    speaker.harmonics[idx].phase_rad = h.value("phase", 0.0);
  }
  return speaker;
}

/// Loads one speaker object or an array of speakers from a JSON file.
inline std::vector<HarmonicSpeaker> load_speakers(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("speaker spec: cannot open: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
    std::vector<HarmonicSpeaker> speakers;
    if (j.is_array()) {
      for (const auto& item : j) speakers.push_back(speaker_from_json(item));
    } else {
      speakers.push_back(speaker_from_json(j));
    }
    if (speakers.empty()) {
      throw std::invalid_argument("speaker spec: no speakers in " + path);
    }
    return speakers;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("speaker spec: " + path + ": " + e.what());
  }
}

}  // namespace erbfb

#endif  // ERBFB_SPEAKER_JSON_HPP_
