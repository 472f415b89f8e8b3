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

#ifndef KSS_SPECIAL_FUNCTIONS_HPP
#define KSS_SPECIAL_FUNCTIONS_HPP

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace kss::special {

inline double lgamma(double z) { return boost::math::lgamma(z); }

inline double digamma(double z) { return boost::math::digamma(z); }

namespace detail {

// lnGamma(z) - ((z - 1/2) ln z - z + ln(2 pi)/2), valid for z >= 16 to
// double precision with five terms.
inline double stirling_correction(double z) {
  const double r = 1.0 / z;
  const double r2 = r * r;
  return r * (1.0 / 12.0 -
              r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))));
}

inline constexpr double kStirlingThreshold = 16.0;

}  // namespace detail

/// lnGamma(z + h) - lnGamma(z) without forming the two large log-gammas when
/// both arguments are large. Requires z > 0 and z + h > 0.
inline double log_gamma_ratio(double z, double h) {
  const double zh = z + h;
  if (h == 0.0) return 0.0;
  if (std::min(z, zh) < detail::kStirlingThreshold) return lgamma(zh) - lgamma(z);
  return (z - 0.5) * std::log1p(h / z) + h * std::log(zh) - h +
         (detail::stirling_correction(zh) - detail::stirling_correction(z));
}

/// Compensated sum of terms taken in descending magnitude.
inline double sum_descending(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  double sum = 0.0, carry = 0.0;
  for (double t : terms) {
    const double y = t - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return sum;
}

/// ln(sum exp(x_i)); -inf for an empty input.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -INFINITY;
  const double top = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(top)) return top;
  std::vector<double> scaled;
  scaled.reserve(xs.size());
  for (double x : xs) scaled.push_back(std::exp(x - top));
  return top + std::log(sum_descending(std::move(scaled)));
}

}  // namespace kss::special

#endif  // KSS_SPECIAL_FUNCTIONS_HPP
