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
// Side-by-side 16-band designs on the logarithmic and linear-ERB scales for
// a 4th-order gammatone bank over 200-3600 Hz.

#include <cstdio>

#include "erbfb/design.hpp"
#include "erbfb/gammatone.hpp"
#include "erbfb/scales.hpp"

int main() {
  using namespace erbfb;
  const int order = 4;
  const double f_min = 200.0, f_max = 3600.0;
  const int n_bands = 16;

  const DesignRequest log_req{
      f_min, f_max, n_bands,
      make_scale(LogarithmicErb{kLogErbSlope}),
      ConstantQ{gammatone_q_factor(order, kLogErbSlope)}};
  const ErbModel linear{LinearErb{kGlasbergMooreD, kGlasbergMooreE}};
  const DesignRequest lin_req{f_min, f_max, n_bands, make_scale(linear),
                              ErbScaled{k_of_n(order), linear}};

  const FilterbankDesign log_design = make_design(log_req);
  const FilterbankDesign lin_design = make_design(lin_req);

  std::printf("%4s  %28s  %28s\n", "band", "log scale (fc / bw / Q)",
              "linear-ERB scale (fc / bw / Q)");
  for (int b = 0; b < n_bands; ++b) {
    std::printf("%4d  %9.2f %8.2f %8.3f  %9.2f %8.2f %8.3f\n", b + 1,
                log_design.centers_hz[b], log_design.bandwidths_hz[b],
                log_design.q_factors[b], lin_design.centers_hz[b],
                lin_design.bandwidths_hz[b], lin_design.q_factors[b]);
  }
  std::printf("\ncoverage: log %.4f, linear-ERB %.4f (every band pair)\n",
              log_design.coverages.front(), lin_design.coverages.front());
  std::printf("bands for full coverage (>= 1.0): log %d, linear-ERB %d\n",
              solve_n_bands(f_min, f_max, 1.0, log_req.rule),
              solve_n_bands(f_min, f_max, 1.0, lin_req.rule));
  return 0;
}
