// Copyright 2026 The kss-spectra Authors
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

#ifndef KSS_QUADRATURE_HPP
#define KSS_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kss/common.hpp"

namespace kss {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Adaptive Gauss-Kronrod (15/31) quadrature of f over [a, b] with absolute
/// error at most `tol`. An infinite upper limit is truncated where the
/// integrand, assumed to decay exponentially, falls below tol * 1e-6.
template <class F>
double quadrature(F&& f, double a, double b, double tol = 1e-10, unsigned max_depth = 25) {
  require(std::isfinite(a), "quadrature: lower limit must be finite");
  require(b >= a, "quadrature: need a <= b");
  require(tol > 0.0, "quadrature: tolerance must be positive");
  if (a == b) return 0.0;
  if (std::isinf(b)) {
    double cut = a + 1.0;
    int doublings = 0;
    while (std::fabs(f(cut)) >= tol * 1e-6 || std::fabs(f(2.0 * cut)) >= tol * 1e-6) {
      if (++doublings > 60) throw std::runtime_error("quadrature: integrand tail does not decay");
      cut = a + 2.0 * (cut - a);
    }
    b = cut;
  }
  const double rel_tol = std::max(tol * 1e-3, 64 * std::numeric_limits<double>::epsilon());
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, max_depth, rel_tol, &error);
  if (!(error <= tol)) {
    throw std::runtime_error("quadrature: error estimate " + std::to_string(error) +
                             " exceeds tolerance after refinement cap");
  }
  return value;
}

}  // namespace kss

#endif  // KSS_QUADRATURE_HPP
