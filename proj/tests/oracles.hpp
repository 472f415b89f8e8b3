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

// Test-side reference implementations, written independently of the library
// formulas they check.

#ifndef KSS_TESTS_ORACLES_HPP
#define KSS_TESTS_ORACLES_HPP

#include <cmath>
#include <map>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace oracle {

using Int = boost::multiprecision::mpz_int;
using Q = boost::multiprecision::mpq_rational;

/// Pascal's triangle row by row.
inline Int choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::vector<Int> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<Int> next(static_cast<std::size_t>(i) + 1, 1);
    for (int r = 1; r < i; ++r) next[r] = row[r - 1] + row[r];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

/// dim H_j = dim P_j - dim P_{j-2} in m+1 variables.
inline Int dim_harmonic(int m, int j) { return choose(m + j, m) - choose(m + j - 2, m); }

/// 1/tau_j = 2^k k! prod_{i=1}^{j+k} (m + 2i - 1), k = (n - j)/2.
inline Q tau(int m, int n, int j) {
  const int k = (n - j) / 2;
  Int inv = 1;
  for (int i = 1; i <= k; ++i) inv *= 2 * i;
  for (int i = 1; i <= j + k; ++i) inv *= m + 2 * i - 1;
  return Q(Int(1), inv);
}

inline Int fact(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Q nu_tilde(int m, int n, int j) { return Q(fact(n)) * tau(m, n, j) * Q(dim_harmonic(m, j)); }

/// Average of x^e over the unit sphere in R^{e.size()} (normalized measure).
/// Zero unless all exponents are even; otherwise
/// prod (e_i - 1)!! / prod_{i=0}^{|e|/2 - 1} (d + 2i).
inline Q sphere_monomial_mean(const std::vector<int>& e) {
  Int num = 1, den = 1;
  int half = 0;
  for (int x : e) {
    if (x % 2 != 0) return 0;
    for (int t = x - 1; t > 0; t -= 2) num *= t;
    half += x / 2;
  }
  const int d = static_cast<int>(e.size());
  for (int i = 0; i < half; ++i) den *= d + 2 * i;
  return Q(num, den);
}

/// Sparse polynomial as exponent vector -> coefficient.
using Poly = std::map<std::vector<int>, Q>;

/// Mean of p^2 over the unit sphere.
inline Q sphere_mean_square(const Poly& p) {
  Q total = 0;
  for (const auto& [a, ca] : p) {
    for (const auto& [b, cb] : p) {
      std::vector<int> e(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
      total += ca * cb * sphere_monomial_mean(e);
    }
  }
  return total;
}

/// Laplacian of a sparse polynomial.
inline Poly laplace(const Poly& p) {
  Poly out;
  for (const auto& [a, c] : p) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 2) continue;
      auto b = a;
      b[i] -= 2;
      out[b] += c * a[i] * (a[i] - 1);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Fischer inner product <x^a, x^b> = a! delta_ab.
inline Q fischer(const Poly& p, const Poly& q) {
  Q s = 0;
  for (const auto& [a, c] : p) {
    auto it = q.find(a);
    if (it == q.end()) continue;
    Int w = 1;
    for (int x : a) w *= fact(x);
    s += c * it->second * Q(w);
  }
  return s;
}

/// lgamma-based ln tau(x) straight from the Gamma form.
inline double log_tau(int m, int n, double x) {
  return -n * std::log(2.0) + std::lgamma(0.5 * (m + 1)) - std::lgamma(0.5 * (n - x + 2)) -
         std::lgamma(0.5 * (m + n + x + 1));
}

/// (t^2 e^{1-t^2})^{(m-1)/2}.
inline double scaling_limit(int m, double t) {
  return std::pow(t * t * std::exp(1.0 - t * t), 0.5 * (m - 1));
}

}  // namespace oracle

#endif  // KSS_TESTS_ORACLES_HPP
