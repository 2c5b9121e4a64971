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

#ifndef ERBFB_QUADRATURE_HPP_
#define ERBFB_QUADRATURE_HPP_

#include <cmath>
#include <stdexcept>

#include "erbfb/error.hpp"

namespace erbfb {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with Richardson correction. When the depth budget
// runs out the local error estimate is accumulated into `residual` so the
// caller can judge the achieved tolerance.
template <typename F>
double simpson_adapt(F& f, double a, double fa, double b, double fb, double m,
                     double fm, double whole, double tol, int depth,
                     double& residual) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (depth <= 0) residual += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1,
                       residual) +
         simpson_adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1,
                       residual);
}

}  // namespace detail

/// Integrates f over [a, b] to the given absolute tolerance. Throws
/// NumericalError (carrying the achieved tolerance) if the depth budget is
/// exhausted before the estimate converges.
template <typename F>
double integrate_adaptive_simpson(F&& f, double a, double b,
                                  double abs_tol = 1e-8, int max_depth = 60) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate: bounds must be finite");
  }
  if (b < a) {
    throw std::invalid_argument("integrate: upper bound below lower bound");
  }
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = detail::simpson(a, fa, b, fb, fm);
  double residual = 0.0;
  const double value = detail::simpson_adapt(f, a, fa, b, fb, m, fm, whole,
                                             abs_tol, max_depth, residual);
  if (residual > abs_tol) {
    throw NumericalError("integrate: quadrature did not converge to tolerance",
                         residual);
  }
  return value;
}

}  // namespace erbfb

#endif  // ERBFB_QUADRATURE_HPP_
