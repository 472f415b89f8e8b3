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

// Log-domain coefficient engine.
//
// The continuous extensions tau(x), c^2(x) and nu~(x) = n! tau(x) c^2(x) are
// evaluated in the log domain so that n can go to 10^6 and beyond. Integer
// arguments x = j in J_n reproduce the exact values of exactcore.hpp.
//
// ln n! + ln K_n is never formed directly: both are O(n ln n) and cancel to
// O(ln n). The duplication formula removes the 2^n factors exactly and leaves
// two log-gamma ratios whose arguments differ by O(x), see log_nu_tilde().

#ifndef KSS_SPECTRA_HPP
#define KSS_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "kss/common.hpp"
#include "kss/special_functions.hpp"

namespace kss {

struct SpectrumContext {
  int m = 0;
  int n = 0;
  double log_k_n = 0.0;        // ln(2^-n Gamma((m+1)/2))
  double log_n_factorial = 0.0;

  SpectrumContext(int m_, int n_) : m(m_), n(n_) {
    require_valid_mn(m, n);
    log_k_n = -n * std::numbers::ln2 + special::lgamma(0.5 * (m + 1));
    log_n_factorial = special::lgamma(n + 1.0);
  }
};

namespace detail {

inline void require_domain(bool ok, const char* fn, double x, double lo, double hi) {
  if (!ok) {
    throw std::domain_error(std::string(fn) + ": x=" + std::to_string(x) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

inline void require_in_spectrum(const SpectrumContext& ctx, double x, const char* fn) {
  require_domain(x >= 0.0 && x <= ctx.n, fn, x, 0.0, ctx.n);
}

}  // namespace detail

/// ln tau(x) = ln K_n - lnGamma((n-x+2)/2) - lnGamma((m+n+x+1)/2), 0 <= x <= n.
inline double log_tau(const SpectrumContext& ctx, double x) {
  detail::require_in_spectrum(ctx, x, "log_tau");
  return ctx.log_k_n - special::lgamma(0.5 * (ctx.n - x + 2.0)) -
         special::lgamma(0.5 * (ctx.m + ctx.n + x + 1.0));
}

/// ln c^2(x), the degree m-1 polynomial extension of dim H_j.
inline double log_c_sq(int m, double x) {
  return special::log_gamma_ratio(x + 1.0, m - 2.0) - special::lgamma(m) +
         std::log(m + 2.0 * x - 1.0);
}

/// ln nu~(x) = ln n! + ln tau(x) + ln c^2(x), 0 <= x <= n.
inline double log_nu_tilde(const SpectrumContext& ctx, double x) {
  detail::require_in_spectrum(ctx, x, "log_nu_tilde");
  const double m = ctx.m, n = ctx.n;
  // n! = 2^n Gamma((n+1)/2) Gamma((n+2)/2) / sqrt(pi) cancels the 2^-n of K_n.
  return special::lgamma(0.5 * (m + 1.0)) - 0.5 * std::log(std::numbers::pi) -
         special::log_gamma_ratio(0.5 * (n + 2.0), -0.5 * x) -
         special::log_gamma_ratio(0.5 * (n + 1.0), 0.5 * (m + x)) + log_c_sq(ctx.m, x);
}

inline double nu_tilde(const SpectrumContext& ctx, double x) {
  return std::exp(log_nu_tilde(ctx, x));
}

/// d/dx ln nu~(x).
inline double log_nu_tilde_derivative(const SpectrumContext& ctx, double x) {
  const double m = ctx.m, n = ctx.n;
  double d = 0.5 * special::digamma(0.5 * (n - x + 2.0)) -
             0.5 * special::digamma(0.5 * (m + n + x + 1.0)) + 2.0 / (m + 2.0 * x - 1.0);
  if (ctx.m != 2) d += special::digamma(m + x - 1.0) - special::digamma(x + 1.0);
  return d;
}

/// rho_n(x) = nu~(x+2) / nu~(x) from its product form, 0 <= x <= n-2.
/// The x -> 0 value is m(m+3)n / (2(n+m+1)). The shorter 2mn/(m+n+1) is not
/// what the product gives (20/7 vs 16/7 at m=2, n=4); both exceed 1.
inline double rho(const SpectrumContext& ctx, double x) {
  detail::require_domain(x >= 0.0 && x <= ctx.n - 2.0, "rho", x, 0.0, ctx.n - 2.0);
  const double m = ctx.m, n = ctx.n;
  return (1.0 + (m - 2.0) / (x + 1.0)) * (1.0 + (m - 2.0) / (x + 2.0)) *
         (1.0 + 2.0 / (x + 0.5 * (m - 1.0))) * ((n - x) / (n + x + m + 1.0));
}

/// mu_n = sqrt((m-1) n).
inline double mu(int m, int n) { return std::sqrt(static_cast<double>(m - 1) * n); }

struct CriticalPointResult {
  double x_c = 0.0;
  double nu_bar = 0.0;
  double mu_n = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximizer of the strictly log-concave nu~ on (0, n), by bisection on the
/// derivative of ln nu~ down to an interval of width 1e-10 n.
inline CriticalPointResult critical_point(const SpectrumContext& ctx) {
  const double n = ctx.n;
  double lo = std::max(1e-6 * n, 0.1);
  double hi = n - 0.1;
  if (!(log_nu_tilde_derivative(ctx, lo) > 0.0) || !(log_nu_tilde_derivative(ctx, hi) < 0.0)) {
    throw InternalError("critical_point: derivative does not change sign on the bracket");
  }
  const double tol = 1e-10 * n;
  int iterations = 0;
  while (hi - lo > tol) {
    if (++iterations > 400) throw InternalError("critical_point: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (log_nu_tilde_derivative(ctx, mid) > 0.0 ? lo : hi) = mid;
  }
  CriticalPointResult r;
  r.lo = lo;
  r.hi = hi;
  r.x_c = 0.5 * (lo + hi);
  r.nu_bar = nu_tilde(ctx, r.x_c);
  r.mu_n = mu(ctx.m, ctx.n);
  return r;
}

/// (t^2 e^{1-t^2})^{(m-1)/2}, the limit profile of nu~(mu_n t) / nu_bar.
inline double scaling_limit(int m, double t) {
  require(t >= 0.0, "scaling_limit: t must be non-negative");
  if (t == 0.0) return 0.0;
  return std::exp(0.5 * (m - 1) * (2.0 * std::log(t) + 1.0 - t * t));
}

/// A_m = 2 sqrt(2) / Gamma(m/2) ((m-1)/(2e))^{(m-1)/2}; nu_bar ~ A_m / sqrt(n).
inline double A_const(int m) {
  require(m >= 2, "A_const: m must be at least 2");
  return 2.0 * std::numbers::sqrt2 *
         std::exp(0.5 * (m - 1) * std::log((m - 1) / (2.0 * std::numbers::e)) -
                  special::lgamma(0.5 * m));
}

/// argmax of nu~_j over J_n; the smallest j wins exact ties.
inline int discrete_peak(const SpectrumContext& ctx) {
  int best = -1;
  double best_value = -INFINITY;
  for (int j : index_set(ctx.n)) {
    const double v = log_nu_tilde(ctx, j);
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  return best;
}

/// sum of nu~_j over j in J_n with j > l.
inline double tail_mass(const SpectrumContext& ctx, int l) {
  require(l >= 0 && l <= ctx.n, "tail_mass: need 0 <= l <= n");
  std::vector<double> terms;
  for (int j : index_set(ctx.n)) {
    if (j > l) terms.push_back(nu_tilde(ctx, j));
  }
  return std::clamp(special::sum_descending(std::move(terms)), 0.0, 1.0);
}

/// sum of nu~_j over all of J_n.
inline double nu_tilde_sum(const SpectrumContext& ctx) {
  std::vector<double> terms;
  for (int j : index_set(ctx.n)) terms.push_back(nu_tilde(ctx, j));
  return special::sum_descending(std::move(terms));
}

struct NuUpperBound {
  double lhs = 0.0;  // nu~(j+2) / nu~(j_n+2)
  double rhs = 0.0;  // (j/j_n)^{m-1} exp((j_n^2 - j^2) / (2n))
  int j_n = 0;       // min { j in J_n : j > mu_n }
};

inline NuUpperBound nu_upper_bound_check(const SpectrumContext& ctx, int j) {
  if (!in_index_set(ctx.n, j)) {
    throw std::domain_error("nu_upper_bound_check: j=" + std::to_string(j) + " not in J_n");
  }
  const double mu_n = mu(ctx.m, ctx.n);
  int j_n = ctx.n % 2;
  while (j_n <= mu_n) j_n += 2;
  if (j <= j_n || j + 2 > ctx.n) {
    throw std::domain_error("nu_upper_bound_check: need j_n < j <= n-2 (j_n=" +
                            std::to_string(j_n) + ", j=" + std::to_string(j) + ")");
  }
  NuUpperBound r;
  r.j_n = j_n;
  r.lhs = std::exp(log_nu_tilde(ctx, j + 2.0) - log_nu_tilde(ctx, j_n + 2.0));
  const double jd = j, jn = j_n;
  r.rhs = std::exp((ctx.m - 1) * std::log(jd / jn) + (jn * jn - jd * jd) / (2.0 * ctx.n));
  return r;
}

/// ln(x^{2q} tau(x)).
inline double log_alpha_weight(const SpectrumContext& ctx, double q, double x) {
  require(q >= 0.0, "log_alpha_weight: q must be non-negative");
  const double lt = log_tau(ctx, x);
  if (q == 0.0) return lt;
  if (x == 0.0) return -INFINITY;
  return 2.0 * q * std::log(x) + lt;
}

/// x^{2q} tau(x); underflows for large n, see log_alpha_weight.
inline double alpha_weight(const SpectrumContext& ctx, double q, double x) {
  return std::exp(log_alpha_weight(ctx, q, x));
}

/// Squared coefficient of metric homothety: n(m+n+1)/(m+2) for L2, n for KSS.
inline double s_sq(int m, int n, NormKind norm) {
  require_valid_mn(m, n);
  require(norm != NormKind::Sobolev, "s_sq: only L2 and KSS norms are supported");
  if (norm == NormKind::KSS) return n;
  return static_cast<double>(n) * (m + n + 1) / (m + 2.0);
}

/// dim H_j in floating point (exact while it fits in 53 bits).
inline double dim_h_double(int m, int j) {
  require(m >= 2 && j >= 0, "dim_h_double: need m >= 2, j >= 0");
  if (j == 0) return 1.0;
  // C(m+j-2, m-1) (m+2j-1) / j
  double c = 1.0;
  for (int i = 1; i <= m - 1; ++i) c = c * (j - 1 + i) / i;
  return std::round(c * (m + 2.0 * j - 1.0) / j);
}

/// Sobolev weight j^{2q}, 1 at j = 0.
inline double sobolev_weight(int j, double q) {
  if (j == 0 || q == 0.0) return 1.0;
  return std::pow(static_cast<double>(j), 2.0 * q);
}

struct CoefficientRow {
  int j = 0;
  double dim_h = 0.0;
  double s_j_sq = 0.0;
  double log_tau = 0.0;
  double log_nu_tilde = 0.0;
  double nu_tilde = 0.0;
};

/// Per-j coefficients in floating point; tau_j itself underflows for large n,
/// so only its logarithm is stored.
struct CoefficientTable {
  int m = 0;
  int n = 0;
  std::vector<CoefficientRow> rows;

  const CoefficientRow& row(int j) const {
    require(in_index_set(n, j), "CoefficientTable: j not in J_n");
    return rows[static_cast<std::size_t>(j / 2)];
  }
};

inline CoefficientTable build_coefficient_table(const SpectrumContext& ctx) {
  CoefficientTable t;
  t.m = ctx.m;
  t.n = ctx.n;
  for (int j : index_set(ctx.n)) {
    CoefficientRow r;
    r.j = j;
    r.dim_h = dim_h_double(ctx.m, j);
    r.s_j_sq = static_cast<double>(j) * (ctx.m + j - 1) / ctx.m;
    r.log_tau = log_tau(ctx, j);
    r.log_nu_tilde = log_nu_tilde(ctx, j);
    r.nu_tilde = std::exp(r.log_nu_tilde);
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace kss

#endif  // KSS_SPECTRA_HPP
