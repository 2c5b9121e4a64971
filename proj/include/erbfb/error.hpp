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

#ifndef ERBFB_ERROR_HPP_
#define ERBFB_ERROR_HPP_

#include <limits>
#include <stdexcept>
#include <string>

namespace erbfb {

// Invalid inputs are reported with std::invalid_argument. NumericalError is
// for requests that are well-formed but cannot be computed to the required
// accuracy (non-convergent quadrature, under-resolved spectra, collapsed
// center grids).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(
      const std::string& what,
      double achieved_tolerance = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), achieved_tolerance(achieved_tolerance) {}

  double achieved_tolerance;
};

}  // namespace erbfb

#endif  // ERBFB_ERROR_HPP_
