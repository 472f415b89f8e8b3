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

// Tiered self-verification suite.
//   level 1: exact identities and fixtures
//   level 2: float/exact agreement, asymptotic bounds, grids, exact algebra
//   level 3: Monte Carlo

#ifndef KSS_VERIFICATION_HPP
#define KSS_VERIFICATION_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kss/exactcore.hpp"
#include "kss/experiments.hpp"
#include "kss/polyalg.hpp"
#include "kss/spectra.hpp"

namespace kss {

inline constexpr std::uint64_t kDefaultSeed = 20260415;

struct CheckResult {
  std::string id;  // "C1".."C12" for acceptance criteria, "G-..." for grids
  std::string name;
  int level = 1;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0: no budget
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  int streams = 8;
  bool enforce_budgets = true;
};

namespace verify_detail {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << what;
  }
};

inline McOptions mc(const VerifyOptions& vo, std::size_t samples, std::uint64_t salt) {
  McOptions o;
  o.samples = samples;
  o.streams = vo.streams;
  o.seed = vo.seed ^ (salt * 0x9e3779b97f4a7c15ull);
  o.threads = vo.threads;
  return o;
}

inline std::string rel(const ExperimentReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << r.name << " est=" << r.estimate << " target=" << r.target << " se=" << r.std_error;
  return os.str();
}

}  // namespace verify_detail

// --- level 1 --------------------------------------------------------------

inline void check_exact_identities(verify_detail::Outcome& out) {
  int tables = 0;
  for (int m = 2; m <= 6; ++m) {
    for (int n = m + 1; n <= 40; ++n) {
      const ExactCoefficientTable t = build_exact_table(m, n);
      Rational sum = 0, sum_s = 0, sum_nu_s = 0;
      BigInt c_sq = 0;
      for (const auto& row : t.rows) c_sq += row.c_j_sq;
      for (const auto& row : t.rows) {
        sum += row.nu_tilde;
        sum_s += row.nu_tilde * row.s_j_sq;
        sum_nu_s += Rational(row.c_j_sq, c_sq) * row.s_j_sq;
      }
      const Rational l2_target(BigInt(n) * (m + n + 1), BigInt(m + 2));
      if (sum != 1) out.fail("sum nu~ != 1 at m=" + std::to_string(m) + " n=" + std::to_string(n));
      if (sum_s != n) out.fail("sum nu~ s^2 != n at m=" + std::to_string(m) + " n=" + std::to_string(n));
      if (sum_nu_s != l2_target) {
        out.fail("sum nu s^2 != n(m+n+1)/(m+2) at m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
      ++tables;
    }
  }
  if (out.pass) out.detail << tables << " tables, all three identities exact";
}

inline void check_fixtures(verify_detail::Outcome& out) {
  const auto expect = [&](const Rational& got, const char* want, const std::string& what) {
    if (got != parse_rational(want)) out.fail(what + " = " + to_string(got) + ", expected " + want);
  };
  const ExactCoefficientTable t3 = build_exact_table(2, 3);
  expect(t3.rows.at(0).tau, "1/30", "tau_1(2,3)");
  expect(t3.rows.at(1).tau, "1/105", "tau_3(2,3)");
  expect(t3.rows.at(0).nu_tilde, "3/5", "nu~_1(2,3)");
  expect(t3.rows.at(1).nu_tilde, "2/5", "nu~_3(2,3)");
  const ExactCoefficientTable t4 = build_exact_table(2, 4);
  expect(t4.rows.at(0).nu_tilde, "1/5", "nu~_0(2,4)");
  expect(t4.rows.at(1).nu_tilde, "4/7", "nu~_2(2,4)");
  expect(t4.rows.at(2).nu_tilde, "8/35", "nu~_4(2,4)");
  if (out.pass) out.detail << "(2,3) tau=(1/30,1/105) nu~=(3/5,2/5); (2,4) nu~=(1/5,4/7,8/35)";
}

// --- level 2 --------------------------------------------------------------

inline void check_float_exact(verify_detail::Outcome& out) {
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m) {
    for (int n = m + 1; n <= 40; ++n) {
      const ExactCoefficientTable t = build_exact_table(m, n);
      const SpectrumContext ctx(m, n);
      for (const auto& row : t.rows) {
        const double exact = row.nu_tilde.convert_to<double>();
        const double got = std::exp(log_nu_tilde(ctx, row.j));
        worst = std::max(worst, std::fabs(got - exact) / exact);
      }
    }
  }
  if (!(worst <= 1e-12)) out.fail("max relative error " + std::to_string(worst));
  out.detail.precision(3);
  if (out.pass) out.detail << "max relative error " << worst;
}

inline void check_critical_bounds(verify_detail::Outcome& out) {
  double tightest = INFINITY;
  for (int m = 2; m <= 5; ++m) {
    for (int n : {10000, 100000, 1000000}) {
      const CriticalPointResult cp = critical_point(SpectrumContext(m, n));
      const double lo = cp.mu_n - 0.5 * (m + 1), hi = cp.mu_n + 2.0;
      if (!(lo < cp.x_c && cp.x_c < hi)) {
        out.fail("x_c=" + std::to_string(cp.x_c) + " outside bounds at m=" + std::to_string(m) +
                 " n=" + std::to_string(n));
      }
      tightest = std::min({tightest, cp.x_c - lo, hi - cp.x_c});
    }
  }
  out.detail.precision(4);
  if (out.pass) out.detail << "12 cases, smallest margin " << tightest;
}

inline void check_scaling(verify_detail::Outcome& out) {
  std::vector<double> grid;
  for (int i = 1; i <= 30; ++i) grid.push_back(i / 10.0);
  std::ostringstream os;
  os.precision(4);
  for (int m : {2, 3}) {
    const ExperimentReport r = scaling_convergence(m, {1000, 10000, 100000}, grid);
    os << "m=" << m << " sup-errors";
    for (int n : {1000, 10000, 100000}) os << ' ' << r.param("sup_error_n" + std::to_string(n));
    os << (m == 2 ? "; " : "");
    if (!r.pass()) out.fail("scaling check failed for m=" + std::to_string(m));
  }
  if (out.pass) out.detail << os.str();
  else out.detail << " (" << os.str() << ")";
}

inline void check_peak(verify_detail::Outcome& out) {
  double worst = 0.0;
  for (int m = 2; m <= 5; ++m) {
    const CriticalPointResult cp = critical_point(SpectrumContext(m, 1000000));
    const double a = A_const(m);
    worst = std::max(worst, std::fabs(cp.nu_bar * std::sqrt(1e6) - a) / a);
  }
  if (!(worst < 0.02)) out.fail("peak relative error " + std::to_string(worst));
  const double lower = 2.0 / std::sqrt(std::numbers::pi);
  const double upper = 2.0 / std::sqrt(std::numbers::e);
  for (int m = 2; m <= 50; ++m) {
    const double a = A_const(m);
    // the upper bound is attained at m = 2; allow rounding in the last bits
    if (!(a > lower && a <= upper * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))) {
      out.fail("A_" + std::to_string(m) + " outside (2/sqrt(pi), 2/sqrt(e)]");
    }
  }
  out.detail.precision(3);
  if (out.pass) out.detail << "max |nu_bar sqrt(n) - A_m|/A_m = " << worst << "; A_m bounds hold for m=2..50";
}

/// Random rational polynomial with coefficients p/q, |p| <= 9, 1 <= q <= 6.
inline HomPoly<Rational> random_rational_poly(RandomStream& rng, int m, int n, double density = 0.6) {
  HomPoly<Rational> p(m, n);
  for (const MultiIndex& a : all_multi_indices(m, n)) {
    if (rng.uniform() >= density) continue;
    const long num = static_cast<long>(rng.next_u64() % 19) - 9;
    const long den = static_cast<long>(rng.next_u64() % 6) + 1;
    p.add_term(a, Rational(num, den));
  }
  return p;
}

inline void check_polynomial_algebra(verify_detail::Outcome& out, std::uint64_t seed, int count = 200) {
  RandomStream rng(seed, 7);
  int components = 0;
  for (int i = 0; i < count && out.pass; ++i) {
    const int m = 2 + static_cast<int>(rng.next_u64() % 3);
    const int n = 1 + static_cast<int>(rng.next_u64() % 12);
    const HomPoly<Rational> p = random_rational_poly(rng, m, n);
    const std::string tag = " (poly " + std::to_string(i) + ", m=" + std::to_string(m) +
                            ", n=" + std::to_string(n) + ")";
    const HarmonicComponents<Rational> hc = harmonic_decompose(p);
    if (!(hc.reconstruct() == p)) out.fail("reconstruction mismatch" + tag);
    Rational kss_sum = 0;
    for (const auto& [j, h] : hc.parts) {
      if (!laplacian(h).is_zero()) out.fail("non-harmonic component j=" + std::to_string(j) + tag);
      const HomPoly<Rational> lifted = multiply_kappa(h, (n - j) / 2);
      const Rational kss = fischer_inner(lifted, lifted);
      kss_sum += kss;
      if (h.is_zero()) continue;
      ++components;
      const Rational ratio = kss / l2_norm_sq_harmonic(h);
      if (ratio != 1 / tau_exact(m, n, j)) {
        out.fail("KSS/L2 ratio != 1/tau_j at j=" + std::to_string(j) + tag);
      }
      const int k = (n - j) / 2;
      BigInt closed = factorial(k) * (BigInt(1) << k);
      for (int s = 1; s <= j + k; ++s) closed *= (m + 2 * s - 1);
      if (ratio != Rational(closed)) out.fail("KSS/L2 ratio != 2^k k! prod(m+2i-1) at j=" + std::to_string(j) + tag);
    }
    if (kss_sum != fischer_inner(p, p)) out.fail("Parseval mismatch" + tag);
  }
  if (out.pass) out.detail << count << " polynomials, " << components << " nonzero components, all exact";
}

// grids

inline void check_rho_grid(verify_detail::Outcome& out) {
  for (int m : {2, 3, 5}) {
    for (int n : {100, 10000, 1000000}) {
      const SpectrumContext ctx(m, n);
      const int steps = 400;
      const double h = (n - 2.0) / (steps + 1);
      double prev = rho(ctx, h);
      for (int i = 2; i <= steps; ++i) {
        const double x = i * h;
        const double cur = rho(ctx, x);
        if (!(cur < prev)) out.fail("rho not decreasing at m=" + std::to_string(m) + " n=" + std::to_string(n));
        if (i < steps) {
          const double next = rho(ctx, x + h);
          if (!(cur <= 0.5 * (prev + next) * (1.0 + 1e-14))) {
            out.fail("rho not convex at m=" + std::to_string(m) + " n=" + std::to_string(n));
          }
        }
        prev = cur;
      }
      if (n >= 10000) {
        const double r = rho(ctx, mu(m, n));
        if (!(r < 1.0)) out.fail("rho(mu_n) >= 1 at m=" + std::to_string(m) + " n=" + std::to_string(n));
        if (n == 1000000 && std::fabs(n * (1.0 - r) / (2.0 * (m + 1)) - 1.0) > 0.1) {
          out.fail("n(1-rho(mu_n)) not within 10% of 2(m+1) at m=" + std::to_string(m));
        }
      }
    }
  }
  if (out.pass) out.detail << "rho decreasing and convex, rho(mu_n) < 1, n(1-rho(mu_n)) ~ 2(m+1)";
}

inline void check_concavity_grid(verify_detail::Outcome& out) {
  for (int m : {2, 3, 6}) {
    for (int n : {20, 1000, 100000}) {
      const SpectrumContext ctx(m, n);
      const int steps = 500;
      const double h = static_cast<double>(n) / (steps + 2);
      for (int i = 2; i <= steps; ++i) {
        const double x = i * h;
        const double d2 = log_nu_tilde(ctx, x + h) - 2.0 * log_nu_tilde(ctx, x) + log_nu_tilde(ctx, x - h);
        if (d2 > 1e-9) {
          out.fail("ln nu~ not concave near x=" + std::to_string(x) + " (m=" + std::to_string(m) +
                   ", n=" + std::to_string(n) + ")");
          break;
        }
      }
    }
  }
  if (out.pass) out.detail << "second differences of ln nu~ <= 1e-9";
}

inline void check_mass_and_bounds(verify_detail::Outcome& out) {
  for (int m : {2, 3, 5}) {
    for (int n : {1000, 100000, 1000000}) {
      const SpectrumContext ctx(m, n);
      const double s = nu_tilde_sum(ctx);
      if (!(std::fabs(s - 1.0) <= 1e-10)) {
        out.fail("sum nu~ = " + std::to_string(s) + " at m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
      if (n > 100000) continue;
      const double mu_n = mu(m, n);
      int j_n = static_cast<int>(std::floor(mu_n)) + 1;
      if (!in_index_set(n, j_n)) ++j_n;
      for (int j = j_n + 2; j <= n - 2; j += std::max(2, 2 * ((n / 2000) / 2))) {
        const NuUpperBound b = nu_upper_bound_check(ctx, j);
        if (!(b.lhs < b.rhs) && b.rhs > 0.0) {
          out.fail("upper bound violated at j=" + std::to_string(j) + " m=" + std::to_string(m) +
                   " n=" + std::to_string(n));
          break;
        }
      }
    }
  }
  for (int m : {2, 4}) {
    const int n = 10000;
    const SpectrumContext ctx(m, n);
    const double q = 1.0;
    const double start = std::sqrt(2.0 * q * n) + 2.0;
    double prev = log_alpha_weight(ctx, q, start);
    for (double x = start + 1.0; x < n; x += 7.0) {
      const double cur = log_alpha_weight(ctx, q, x);
      if (!(cur < prev)) {
        out.fail("x^{2q} tau(x) not decreasing at x=" + std::to_string(x));
        break;
      }
      prev = cur;
    }
  }
  if (out.pass) out.detail << "sum nu~ = 1 to 1e-10 up to n=1e6; peak tail bound and weight monotonicity hold";
}

// --- level 3 --------------------------------------------------------------

inline void check_sphere_moments(verify_detail::Outcome& out, const VerifyOptions& vo) {
  struct Case {
    SphereMoment kind;
    int d1, d2, d3;
    double a;
  };
  const Case cases[] = {{SphereMoment::Power, 1, 1, 1, 2.0},
                        {SphereMoment::Power, 2, 3, 0, 1.5},
                        {SphereMoment::Power, 3, 2, 4, -1.0},
                        {SphereMoment::Ratio, 3, 5, 0, 0.0},
                        {SphereMoment::Ratio, 2, 6, 3, 0.0}};
  std::uint64_t salt = 80;
  for (const Case& c : cases) {
    const ExperimentReport r = verify_sphere_moment(c.kind, c.d1, c.d2, c.d3, c.a, verify_detail::mc(vo, 100000, salt++));
    if (!r.pass()) out.fail(verify_detail::rel(r));
  }
  if (out.pass) out.detail << "5 parameter sets within 3 SE (N=1e5)";
}

inline void check_truncation(verify_detail::Outcome& out, const VerifyOptions& vo) {
  const ExperimentReport r = expected_ratio_truncation(2, 30, index_block(30, 0, 10), index_block(30, 21, 30),
                                                       verify_detail::mc(vo, 10000, 90));
  if (!r.pass()) out.fail(verify_detail::rel(r));
  else out.detail << verify_detail::rel(r);
}

inline void check_projection_and_approx(verify_detail::Outcome& out, const VerifyOptions& vo) {
  std::uint64_t salt = 100;
  for (int n : {10, 100, 10000}) {
    const ExperimentReport r = projection_expectation(2, n, 0.5, 1.5, verify_detail::mc(vo, 10000, salt++));
    if (!r.pass()) out.fail(verify_detail::rel(r) + " n=" + std::to_string(n));
  }
  const ApproxSchedule s = build_schedule(2, 0.0, 10000, default_a_exponent(2));
  const ExperimentReport a = approx_experiment(s, verify_detail::mc(vo, 10000, salt++));
  const double failure = 1.0 - a.estimate;
  if (a.verdict == Verdict::PreAsymptotic) out.fail("approx run is pre-asymptotic (eps_n >= 1)");
  else if (!(failure <= s.eta_n)) out.fail("failure frequency " + std::to_string(failure) + " > eta_n");
  out.detail.precision(4);
  if (out.pass) {
    out.detail << "projection identity within 3 SE at n=10,100,1e4; approx failure frequency " << failure
               << " <= eta_n=" << s.eta_n << " (eps_n=" << s.eps_n << ")";
  }
}

inline void check_cross_validation(verify_detail::Outcome& out, const VerifyOptions& vo) {
  const auto reports = sampler_cross_validation(2, 10, verify_detail::mc(vo, 10000, 110));
  for (const auto& r : reports) {
    if (!r.pass()) out.fail(verify_detail::rel(r) + " j=" + std::to_string(static_cast<int>(r.param("j", -1))));
  }
  if (out.pass) out.detail << reports.size() << " comparisons within 3 combined SE";
}

inline void check_unit_sphere(verify_detail::Outcome& out, const VerifyOptions& vo) {
  std::uint64_t salt = 120;
  for (int n : {6, 10}) {
    const ExperimentReport r = unit_sphere_l2_expectation(2, n, verify_detail::mc(vo, 10000, salt++));
    if (!r.pass()) out.fail(verify_detail::rel(r) + " n=" + std::to_string(n));
  }
  if (out.pass) out.detail << "E|u|^2 = m!/(n+m)! within 3 SE at n=6,10";
}

// --- suite ----------------------------------------------------------------

struct CheckSpec {
  std::string id;
  std::string name;
  int level;
  double budget_seconds;
  std::function<void(verify_detail::Outcome&, const VerifyOptions&)> run;
};

inline std::vector<CheckSpec> verification_checks() {
  using O = verify_detail::Outcome;
  using V = VerifyOptions;
  return {
      {"C1", "exact identities", 1, 10, [](O& o, const V&) { check_exact_identities(o); }},
      {"C2", "hand-verifiable fixtures", 1, 0, [](O& o, const V&) { check_fixtures(o); }},
      {"C3", "float/exact agreement", 2, 10, [](O& o, const V&) { check_float_exact(o); }},
      {"C4", "critical-point localization", 2, 5, [](O& o, const V&) { check_critical_bounds(o); }},
      {"C5", "scaling limit", 2, 10, [](O& o, const V&) { check_scaling(o); }},
      {"C6", "peak asymptotics", 2, 5, [](O& o, const V&) { check_peak(o); }},
      {"C7", "polynomial algebra", 2, 60, [](O& o, const V& v) { check_polynomial_algebra(o, v.seed); }},
      {"G-rho", "rho monotone and convex", 2, 0, [](O& o, const V&) { check_rho_grid(o); }},
      {"G-concavity", "log nu~ concavity", 2, 0, [](O& o, const V&) { check_concavity_grid(o); }},
      {"G-mass", "mass and tail bounds", 2, 0, [](O& o, const V&) { check_mass_and_bounds(o); }},
      {"C8", "sphere moments", 3, 30, [](O& o, const V& v) { check_sphere_moments(o, v); }},
      {"C9", "truncation expectation", 3, 10, [](O& o, const V& v) { check_truncation(o, v); }},
      {"C10", "projection identity and approximation", 3, 300,
       [](O& o, const V& v) { check_projection_and_approx(o, v); }},
      {"C11", "sampler cross-validation", 3, 120, [](O& o, const V& v) { check_cross_validation(o, v); }},
      {"C12", "unit-sphere L2 expectation", 3, 30, [](O& o, const V& v) { check_unit_sphere(o, v); }},
  };
}

/// Runs one check, turning exceptions into failures and enforcing its budget.
inline CheckResult run_check(const CheckSpec& spec, const VerifyOptions& vo) {
  CheckResult r{spec.id, spec.name, spec.level, false, "", 0.0, spec.budget_seconds};
  verify_detail::Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.run(out, vo);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = out.pass;
  r.detail = out.detail.str();
  if (vo.enforce_budgets && r.budget_seconds > 0.0 && r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += "; over time budget";
  }
  return r;
}

/// All checks with level <= `level`, in order.
inline std::vector<CheckResult> run_verification(int level, const VerifyOptions& vo = {},
                                                 const std::function<void(const CheckResult&)>& on_result = {}) {
  require(level >= 1 && level <= 3, "run_verification: level must be 1, 2 or 3");
  std::vector<CheckResult> results;
  for (const CheckSpec& spec : verification_checks()) {
    if (spec.level > level) continue;
    results.push_back(run_check(spec, vo));
    if (on_result) on_result(results.back());
  }
  return results;
}

}  // namespace kss

#endif  // KSS_VERIFICATION_HPP
