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

// Exact rational values of every per-component coefficient of the harmonic
// decomposition of P_n. These are the ground truth for the log-domain engine
// in spectra.hpp and for the property tests.

#ifndef KSS_EXACTCORE_HPP
#define KSS_EXACTCORE_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

#include "kss/common.hpp"

namespace kss {

using BigInt = boost::multiprecision::mpz_int;
/// GMP rationals are kept canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::mpq_rational;

inline constexpr int kDefaultExactNMax = 200;

inline Rational make_rational(long long num, long long den = 1) {
  require(den != 0, "zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    require(den != 0, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

inline BigInt factorial(int k) {
  require(k >= 0, "factorial of a negative integer");
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(int n, int k) {
  require(n >= 0, "binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// dim P_n = C(n+m, m): homogeneous polynomials of degree n in m+1 variables.
inline BigInt dim_P(int m, int n) {
  require(m >= 1 && n >= 0, "dim_P: need m >= 1, n >= 0");
  return binomial(n + m, m);
}

/// Dimension of the harmonic component H_j on S^m.
inline BigInt dim_H(int m, int j) {
  require(m >= 2 && j >= 0, "dim_H: need m >= 2, j >= 0");
  if (j == 0) return 1;
  if (j == 1) return m + 1;
  return factorial(m + j - 2) * (m + 2 * j - 1) / (factorial(m - 1) * factorial(j));
}

/// Gamma at a positive integer or half-integer, as coef * sqrt(pi)^sqrt_pi_power.
struct HalfIntegerGamma {
  Rational coef;
  int sqrt_pi_power = 0;
};

/// Gamma(twice_z / 2) for twice_z >= 1.
inline HalfIntegerGamma gamma_half_integer(int twice_z) {
  require(twice_z >= 1, "gamma_half_integer: argument must be positive");
  if (twice_z % 2 == 0) return {Rational(factorial(twice_z / 2 - 1)), 0};
  // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
  const int k = (twice_z - 1) / 2;
  BigInt four_k = 1;
  four_k <<= 2 * k;
  return {Rational(factorial(2 * k), four_k * factorial(k)), 1};
}

inline void require_in_index_set(int n, int j) {
  require(in_index_set(n, j), "j=" + std::to_string(j) + " is not in J_" + std::to_string(n) +
                                  " (need 0 <= j <= n and n - j even)");
}

/// tau_j = K_n / (Gamma((n-j+2)/2) Gamma((m+n+j+1)/2)), K_n = 2^-n Gamma((m+1)/2).
/// The sqrt(pi) factors cancel symbolically.
inline Rational tau_exact(int m, int n, int j) {
  require(m >= 2, "tau_exact: m must be at least 2");
  require_in_index_set(n, j);
  const HalfIntegerGamma k_gamma = gamma_half_integer(m + 1);
  const HalfIntegerGamma ga = gamma_half_integer(n - j + 2);
  const HalfIntegerGamma gb = gamma_half_integer(m + n + j + 1);
  if (k_gamma.sqrt_pi_power != ga.sqrt_pi_power + gb.sqrt_pi_power) {
    throw InternalError("tau_exact: sqrt(pi) factors do not cancel");
  }
  BigInt two_n = 1;
  two_n <<= n;
  return k_gamma.coef / (Rational(two_n) * ga.coef * gb.coef);
}

/// nu~_j = n! tau_j c_j^2.
inline Rational nu_tilde_exact(int m, int n, int j) {
  return Rational(factorial(n)) * tau_exact(m, n, j) * Rational(dim_H(m, j));
}

/// s_j^2 = j (m + j - 1) / m.
inline Rational s_j_sq_exact(int m, int j) {
  require(m >= 2 && j >= 0, "s_j_sq_exact: need m >= 2, j >= 0");
  return Rational(BigInt(j) * (m + j - 1), BigInt(m));
}

struct ExactCoefficientRow {
  int j = 0;
  BigInt dim_h;
  BigInt c_j_sq;
  Rational tau;
  Rational nu_tilde;
  Rational s_j_sq;
};

struct ExactCoefficientTable {
  int m = 0;
  int n = 0;
  std::vector<ExactCoefficientRow> rows;
  BigInt c_sq;            // dim P_n
  Rational s_sq_l2;       // sum_j (c_j^2 / c^2) s_j^2
  Rational s_sq_kss;      // sum_j nu~_j s_j^2
  Rational nu_tilde_sum;  // always exactly 1
};

/// Builds the exact table for 2 <= m < n <= n_max. Fails hard if any of the
/// exact identities sum nu~ = 1, sum nu~ s^2 = n, sum c_j^2 = dim P_n,
/// sum nu s^2 = n(m+n+1)/(m+2) is violated.
inline ExactCoefficientTable build_exact_table(int m, int n, int n_max = kDefaultExactNMax) {
  require_valid_mn(m, n);
  require(n <= n_max, "exact tables are capped at n <= " + std::to_string(n_max));

  ExactCoefficientTable table;
  table.m = m;
  table.n = n;
  table.c_sq = dim_P(m, n);

  const BigInt n_fact = factorial(n);
  BigInt c_sum = 0;
  Rational nu_sum = 0, s_kss = 0, weighted_s = 0;
  for (int j : index_set(n)) {
    ExactCoefficientRow row;
    row.j = j;
    row.dim_h = dim_H(m, j);
    row.c_j_sq = row.dim_h;
    row.tau = tau_exact(m, n, j);
    row.nu_tilde = Rational(n_fact) * row.tau * Rational(row.c_j_sq);
    row.s_j_sq = s_j_sq_exact(m, j);
    c_sum += row.c_j_sq;
    nu_sum += row.nu_tilde;
    s_kss += row.nu_tilde * row.s_j_sq;
    weighted_s += Rational(row.c_j_sq) * row.s_j_sq;
    table.rows.push_back(std::move(row));
  }
  table.nu_tilde_sum = nu_sum;
  table.s_sq_kss = s_kss;
  table.s_sq_l2 = weighted_s / Rational(table.c_sq);

  const std::string where = " for m=" + std::to_string(m) + ", n=" + std::to_string(n);
  if (nu_sum != 1) throw InternalError("sum of nu~_j is " + to_string(nu_sum) + where);
  if (s_kss != n) throw InternalError("sum of nu~_j s_j^2 is " + to_string(s_kss) + where);
  if (c_sum != table.c_sq) throw InternalError("sum of c_j^2 differs from dim P_n" + where);
  if (table.s_sq_l2 != Rational(BigInt(n) * (m + n + 1), BigInt(m + 2))) {
    throw InternalError("L2 s^2 is " + to_string(table.s_sq_l2) + where);
  }
  return table;
}

}  // namespace kss

#endif  // KSS_EXACTCORE_HPP
