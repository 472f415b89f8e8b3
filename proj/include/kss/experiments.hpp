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

// Monte Carlo experiments on the KSS ensemble and the uniform measure on its
// unit sphere. Every experiment returns an ExperimentReport; the default rule
// is |estimate - target| <= 3 standard errors.

#ifndef KSS_EXPERIMENTS_HPP
#define KSS_EXPERIMENTS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kss/common.hpp"
#include "kss/ensembles.hpp"
#include "kss/montecarlo.hpp"
#include "kss/polyalg.hpp"
#include "kss/quadrature.hpp"
#include "kss/spectra.hpp"

namespace kss {

enum class Verdict { Pass, Fail, PreAsymptotic };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "true";
    case Verdict::Fail: return "false";
    case Verdict::PreAsymptotic: return "pre-asymptotic";
  }
  return "false";
}

struct ExperimentReport {
  std::string name;
  std::map<std::string, double> parameters;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  std::string tolerance_rule;
  Verdict verdict = Verdict::Fail;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;

  bool pass() const { return verdict == Verdict::Pass; }

  double param(const std::string& key, double fallback = NAN) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  }
};

inline constexpr const char* kThreeSigmaRule = "|estimate - target| <= 3 * std_error";

inline Verdict three_sigma(double estimate, double target, double se) {
  return std::fabs(estimate - target) <= 3.0 * se ? Verdict::Pass : Verdict::Fail;
}

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void stamp(ExperimentReport& r, const McOptions& opt, const Stopwatch& clock) {
  r.seed = opt.seed;
  r.parameters["samples"] = static_cast<double>(opt.samples);
  r.parameters["streams"] = opt.streams;
  r.runtime_seconds = clock.seconds();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sphere integrals

enum class SphereMoment { Power, Ratio };

/// Uniform x on S^{d-1}, d = d1 + d2 + d3, split as x = x1 + x2 + x3.
///   Power:  E|x1|^a     = Gamma((d1+a)/2) Gamma(d/2) / (Gamma((d+a)/2) Gamma(d1/2)),  a > -d1
///   Ratio:  E|x1|^2/|x2|^2 = d1 / (d2 - 2),  d2 > 2
inline ExperimentReport verify_sphere_moment(SphereMoment kind, int d1, int d2, int d3, double a,
                                             const McOptions& opt) {
  require(d1 >= 1 && d2 >= 0 && d3 >= 0, "verify_sphere_moment: need d1 >= 1, d2, d3 >= 0");
  const int d = d1 + d2 + d3;
  require(d >= 2, "verify_sphere_moment: need d1 + d2 + d3 >= 2");
  if (kind == SphereMoment::Power) {
    require(a > -d1, "verify_sphere_moment: need a > -d1");
  } else {
    require(d2 > 2, "verify_sphere_moment: the ratio moment needs d2 > 2");
  }
  detail::Stopwatch clock;

  const RunningStats st = run_mean(opt, [&](RandomStream& rng) {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int i = 0; i < d1; ++i) s1 += std::pow(rng.normal(), 2);
    for (int i = 0; i < d2; ++i) s2 += std::pow(rng.normal(), 2);
    for (int i = 0; i < d3; ++i) s3 += std::pow(rng.normal(), 2);
    if (kind == SphereMoment::Ratio) return s1 / s2;
    return std::pow(s1 / (s1 + s2 + s3), 0.5 * a);
  });

  ExperimentReport r;
  r.name = kind == SphereMoment::Power ? "sphere-moment-power" : "sphere-moment-ratio";
  r.parameters = {{"d1", d1}, {"d2", d2}, {"d3", d3}};
  if (kind == SphereMoment::Power) {
    r.parameters["a"] = a;
    r.target = std::exp(special::lgamma(0.5 * (d1 + a)) + special::lgamma(0.5 * d) -
                        special::lgamma(0.5 * (d + a)) - special::lgamma(0.5 * d1));
  } else {
    r.target = static_cast<double>(d1) / (d2 - 2);
  }
  r.estimate = st.mean();
  r.std_error = st.std_error();
  r.tolerance_rule = kThreeSigmaRule;
  r.verdict = three_sigma(r.estimate, r.target, r.std_error);
  detail::stamp(r, opt, clock);
  return r;
}

// ---------------------------------------------------------------------------
// Truncation ratio E(|v|^2 / |u|^2) in the Fischer norm

/// j in J_n with lo <= j <= hi.
inline std::vector<int> index_block(int n, int lo, int hi) {
  std::vector<int> out;
  for (int j : index_set(n)) {
    if (j >= lo && j <= hi) out.push_back(j);
  }
  return out;
}

/// u and v collect the components with j in `u_block` and `v_block`
/// (disjoint subsets of J_n); the target is dim V / (dim U - 2).
inline ExperimentReport expected_ratio_truncation(int m, int n, const std::vector<int>& u_block,
                                                  const std::vector<int>& v_block,
                                                  const McOptions& opt) {
  require_valid_mn(m, n);
  std::set<int> seen;
  for (const auto* block : {&u_block, &v_block}) {
    for (int j : *block) {
      require(in_index_set(n, j), "expected_ratio_truncation: block index not in J_n");
      require(seen.insert(j).second, "expected_ratio_truncation: blocks must be disjoint");
    }
  }
  double dim_u = 0.0, dim_v = 0.0;
  std::vector<double> u_dims, v_dims;
  for (int j : u_block) u_dims.push_back(dim_h_double(m, j));
  for (int j : v_block) v_dims.push_back(dim_h_double(m, j));
  for (double x : u_dims) dim_u += x;
  for (double x : v_dims) dim_v += x;
  require(dim_u > 2.0, "expected_ratio_truncation: dim U must exceed 2");
  detail::Stopwatch clock;

  const RunningStats st = run_mean(opt, [&](RandomStream& rng) {
    double u = 0.0, v = 0.0;
    for (double k : u_dims) u += rng.chi_square(k);
    for (double k : v_dims) v += rng.chi_square(k);
    return v / u;
  });

  ExperimentReport r;
  r.name = "truncation-ratio";
  r.parameters = {{"m", m}, {"n", n}, {"dim_U", dim_u}, {"dim_V", dim_v}};
  r.target = dim_v / (dim_u - 2.0);
  r.estimate = st.mean();
  r.std_error = st.std_error();
  r.tolerance_rule = kThreeSigmaRule;
  r.verdict = three_sigma(r.estimate, r.target, r.std_error);
  detail::stamp(r, opt, clock);
  return r;
}

// ---------------------------------------------------------------------------
// Low-degree approximation in H^q

struct ApproxSchedule {
  int m = 0;
  int n = 0;
  double q = 0.0;
  int l_n = 0;
  double a_exponent = 0.0;
  double t_n = 0.0;
  double A = 0.0;
  double B = 0.0;
  double eps_n = 0.0;  // B t_n n^{q/2} exp(-l_n^2 / (4n))
  double eta_n = 0.0;  // A n^{m/2} t_n^{-2}
};

struct ScheduleOptions {
  std::optional<double> A;
  std::optional<double> B;
  std::optional<int> l;  // overrides the default truncation degree
};

/// (2q)^{-m/2} for q > 0, (2 ln 2)^{-m/2} for q = 0.
inline double default_schedule_A(int m, double q) {
  const double base = q > 0.0 ? 2.0 * q : 2.0 * std::numbers::ln2;
  return std::pow(base, -0.5 * m);
}

/// 2 (1 + beta) / (1 - beta), beta = l / n.
inline double default_schedule_B(int l, int n) {
  const double beta = static_cast<double>(l) / n;
  return 2.0 * (1.0 + beta) / (1.0 - beta);
}

/// (2m+1)/8, the midpoint of the admissible range m < 4a < m+1.
inline double default_a_exponent(int m) { return (2.0 * m + 1.0) / 8.0; }

/// Smallest l >= sqrt((m + 2q + 1) n ln n) with n - l even.
inline int default_truncation_degree(int m, double q, int n) {
  int l = static_cast<int>(std::ceil(std::sqrt((m + 2.0 * q + 1.0) * n * std::log(n))));
  if ((n - l) % 2 != 0) ++l;
  return l;
}

inline ApproxSchedule build_schedule(int m, double q, int n, double a_exponent,
                                     const ScheduleOptions& options = {}) {
  require_valid_mn(m, n);
  require(q >= 0.0, "build_schedule: q must be non-negative");
  require(m < 4.0 * a_exponent && 4.0 * a_exponent < m + 1.0,
          "build_schedule: the exponent a must satisfy m < 4a < m + 1");
  ApproxSchedule s;
  s.m = m;
  s.n = n;
  s.q = q;
  s.a_exponent = a_exponent;
  if (options.l) {
    s.l_n = *options.l;
    require(in_index_set(n, s.l_n), "build_schedule: l must lie in J_n");
  } else {
    s.l_n = default_truncation_degree(m, q, n);
    require(s.l_n < n, "build_schedule: n=" + std::to_string(n) +
                           " is too small for the schedule (l_n >= n)");
  }
  s.t_n = std::pow(static_cast<double>(n), a_exponent);
  s.A = options.A.value_or(default_schedule_A(m, q));
  s.B = options.B.value_or(s.l_n < n ? default_schedule_B(s.l_n, n) : INFINITY);
  require(s.A > 0.0 && s.B > 0.0, "build_schedule: A and B must be positive");
  const double ln = s.l_n;
  s.eps_n = s.B * s.t_n * std::pow(static_cast<double>(n), 0.5 * q) *
            std::exp(-ln * ln / (4.0 * n));
  s.eta_n = s.A * std::pow(static_cast<double>(n), 0.5 * m) / (s.t_n * s.t_n);
  return s;
}

/// Frequency of dist_{H^q}(x, P_{l_n}) < eps_n |x|_q over profile samples.
/// Passes when the frequency is at least 1 - eta_n; with eps_n >= 1 the event
/// is vacuous and the run is reported as pre-asymptotic.
inline ExperimentReport approx_experiment(const ApproxSchedule& s, const McOptions& opt) {
  detail::Stopwatch clock;
  const SpectrumContext ctx(s.m, s.n);
  const std::vector<int> js = index_set(s.n);

  // Weights w_q(j) tau_j, rescaled by their maximum (tau_j underflows).
  std::vector<double> log_w;
  for (int j : js) log_w.push_back(std::log(sobolev_weight(j, s.q)) + log_tau(ctx, j));
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w;
  for (double lw : log_w) w.push_back(std::exp(lw - top));

  const EnsembleSpec spec{s.m, s.n, SamplerMode::Profile, opt.seed, opt.streams};
  const ProfileSampler sampler(spec);
  const double eps_sq = s.eps_n * s.eps_n;

  auto parts = run_streams(opt, [&](RandomStream& rng, std::size_t count) {
    std::vector<double> v;
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < count; ++i) {
      sampler.draw_into(rng, v);
      double dist = 0.0, norm = 0.0;
      for (std::size_t k = 0; k < js.size(); ++k) {
        const double t = w[k] * v[k];
        norm += t;
        if (js[k] > s.l_n) dist += t;
      }
      if (dist < eps_sq * norm) ++hits;
    }
    return hits;
  });
  std::uint64_t hits = 0;
  for (auto h : parts) hits += h;

  ExperimentReport r;
  r.name = "approx";
  r.parameters = {{"m", s.m},       {"n", s.n},         {"q", s.q},         {"l_n", s.l_n},
                  {"t_n", s.t_n},   {"eps_n", s.eps_n}, {"eta_n", s.eta_n}, {"A", s.A},
                  {"B", s.B},       {"a_exponent", s.a_exponent}};
  const double freq = static_cast<double>(hits) / static_cast<double>(opt.samples);
  r.estimate = freq;
  r.std_error = std::sqrt(freq * (1.0 - freq) / static_cast<double>(opt.samples));
  r.target = 1.0 - s.eta_n;
  r.tolerance_rule = "estimate >= target (success frequency at least 1 - eta_n); "
                     "pre-asymptotic when eps_n >= 1";
  if (s.eps_n >= 1.0) {
    r.verdict = Verdict::PreAsymptotic;
  } else {
    r.verdict = freq >= r.target ? Verdict::Pass : Verdict::Fail;
  }
  detail::stamp(r, opt, clock);
  return r;
}

// ---------------------------------------------------------------------------
// Projections onto spectral windows

/// (t^2 e^{1-t^2})^{(m-1)/2} integrated over (0, inf), closed form.
inline double limit_profile_mass(int m) {
  return std::exp(special::lgamma(0.5 * m) - 0.5 + 0.5 * m * std::log(2.0 * std::numbers::e / (m - 1)) -
                  std::log(2.0));
}

/// (1/A) * integral over [t_lo, t_hi] of the limit profile.
inline double projection_limit(int m, double t_lo, double t_hi) {
  const double integral = quadrature([m](double t) { return scaling_limit(m, t); }, t_lo, t_hi, 1e-12);
  return integral / limit_profile_mass(m);
}

/// j in J_n with t_lo <= j / mu_n <= t_hi.
inline std::vector<int> spectral_window(int m, int n, double t_lo, double t_hi) {
  const double mu_n = mu(m, n);
  std::vector<int> out;
  for (int j : index_set(n)) {
    const double t = j / mu_n;
    if (t >= t_lo && t <= t_hi) out.push_back(j);
  }
  return out;
}

/// Sum of nu~_j over the window; equals E|pi u|^2 / E|u|^2 at every finite n.
inline double projection_target(const SpectrumContext& ctx, double t_lo, double t_hi) {
  std::vector<double> terms;
  for (int j : spectral_window(ctx.m, ctx.n, t_lo, t_hi)) terms.push_back(nu_tilde(ctx, j));
  return special::sum_descending(std::move(terms));
}

/// u uniform on the Fischer unit sphere of P_n, pi the L2-orthogonal
/// projection onto the components with j / mu_n in [t_lo, t_hi]. Estimates
/// E|pi u|^2 / E|u|^2 and checks it against the exact finite-n value; the
/// n -> infinity limit is reported alongside.
inline ExperimentReport projection_expectation(int m, int n, double t_lo, double t_hi,
                                               const McOptions& opt) {
  require_valid_mn(m, n);
  require(t_lo >= 0.0 && t_lo < t_hi, "projection_expectation: need 0 <= t_lo < t_hi");
  detail::Stopwatch clock;
  const SpectrumContext ctx(m, n);
  const std::vector<int> js = index_set(n);
  const double mu_n = mu(m, n);

  // n! tau_j = nu~_j / dim H_j; the common n! cancels in the ratio.
  std::vector<double> w(js.size());
  std::vector<bool> inside(js.size());
  for (std::size_t k = 0; k < js.size(); ++k) {
    const double t = js[k] / mu_n;
    inside[k] = t >= t_lo && t <= t_hi;
    w[k] = std::exp(log_nu_tilde(ctx, js[k]) - std::log(dim_h_double(m, js[k])));
  }
  const EnsembleSpec spec{m, n, SamplerMode::Profile, opt.seed, opt.streams};
  const ProfileSampler sampler(spec);

  // |u|^2 and |pi u|^2 in L2 for u = p / |p|_KSS, estimated as a ratio of means.
  auto parts = run_streams(opt, [&](RandomStream& rng, std::size_t count) {
    std::vector<double> v;
    RatioStats st;
    for (std::size_t i = 0; i < count; ++i) {
      sampler.draw_into(rng, v);
      double all = 0.0, proj = 0.0, den = 0.0;
      for (std::size_t k = 0; k < js.size(); ++k) {
        all += w[k] * v[k];
        if (inside[k]) proj += w[k] * v[k];
        den += v[k];
      }
      st.add(all / den, proj / den);
    }
    return st;
  });
  RatioStats st;
  for (const auto& p : parts) st.merge(p);

  ExperimentReport r;
  r.name = "projection";
  r.target = projection_target(ctx, t_lo, t_hi);
  const double limit = projection_limit(m, t_lo, t_hi);
  r.parameters = {{"m", m},
                  {"n", n},
                  {"t_lo", t_lo},
                  {"t_hi", t_hi},
                  {"limit_target", limit},
                  {"finite_n_gap", r.target - limit}};
  r.estimate = st.ratio();
  r.std_error = st.std_error();
  r.tolerance_rule = kThreeSigmaRule;
  r.verdict = three_sigma(r.estimate, r.target, r.std_error);
  detail::stamp(r, opt, clock);
  return r;
}

/// Upper bound on the finite-n tail mass beyond t mu_n for large n, t > 1:
/// exp(-(m-1)(t-1)^2/2) / (sqrt(2e(m-1)) (t-1)).
inline double projection_tail_bound(int m, double t) {
  require(t > 1.0, "projection_tail_bound: need t > 1");
  return std::exp(-0.5 * (m - 1) * (t - 1.0) * (t - 1.0)) /
         (std::sqrt(2.0 * std::numbers::e * (m - 1)) * (t - 1.0));
}

// ---------------------------------------------------------------------------
// Scaling limit

struct ScalingRow {
  int n = 0;
  double mu_n = 0.0;
  double x_c = 0.0;
  double nu_bar = 0.0;
  double sup_error = 0.0;  // sup_t |nu~(mu_n t) / nu_bar - limit(t)|
};

/// nu~(mu_n t) / nu_bar, with nu~ taken as 0 outside [0, n].
inline double scaled_nu(const SpectrumContext& ctx, const CriticalPointResult& cp, double t) {
  const double x = cp.mu_n * t;
  if (x <= 0.0 || x > ctx.n) return 0.0;
  return std::exp(log_nu_tilde(ctx, x) - std::log(cp.nu_bar));
}

inline std::vector<double> default_t_grid() {
  std::vector<double> ts;
  for (int i = 1; i <= 30; ++i) ts.push_back(i / 10.0);
  return ts;
}

inline std::vector<ScalingRow> scaling_errors(int m, const std::vector<int>& n_list,
                                              const std::vector<double>& t_grid) {
  require(!t_grid.empty(), "scaling_errors: empty t grid");
  std::vector<ScalingRow> rows;
  for (int n : n_list) {
    const SpectrumContext ctx(m, n);
    const CriticalPointResult cp = critical_point(ctx);
    ScalingRow row{n, cp.mu_n, cp.x_c, cp.nu_bar, 0.0};
    for (double t : t_grid) {
      require(t > 0.0, "scaling_errors: t must be positive");
      row.sup_error = std::max(row.sup_error, std::fabs(scaled_nu(ctx, cp, t) - scaling_limit(m, t)));
    }
    rows.push_back(row);
  }
  return rows;
}

inline constexpr double kScalingTolerance = 0.02;

/// Passes when the sup-errors are non-increasing along n_list and, if the
/// largest n is at least 1e5, the last one is below 0.02.
inline ExperimentReport scaling_convergence(int m, const std::vector<int>& n_list,
                                            const std::vector<double>& t_grid) {
  require(!n_list.empty(), "scaling_convergence: empty n list");
  detail::Stopwatch clock;
  const auto rows = scaling_errors(m, n_list, t_grid);
  ExperimentReport r;
  r.name = "scaling";
  r.parameters["m"] = m;
  bool monotone = true;
  int n_max = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.parameters["sup_error_n" + std::to_string(rows[i].n)] = rows[i].sup_error;
    if (i > 0 && rows[i].sup_error > rows[i - 1].sup_error) monotone = false;
    n_max = std::max(n_max, rows[i].n);
  }
  r.parameters["n"] = rows.back().n;
  r.estimate = rows.back().sup_error;
  r.target = 0.0;
  r.tolerance_rule = "sup-error non-increasing in n; final < 0.02 when max n >= 1e5";
  const bool small_enough = n_max < 100000 || r.estimate < kScalingTolerance;
  r.verdict = monotone && small_enough ? Verdict::Pass : Verdict::Fail;
  r.runtime_seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Sampler cross-checks

/// Per-component mean squared Fischer norms from the monomial sampler (through
/// the harmonic decomposition) against the profile sampler, one report per j,
/// plus the split fraction sum_{j > n/2} / sum_j. The profile sampler uses
/// stream ids offset by 2^32.
inline std::vector<ExperimentReport> sampler_cross_validation(int m, int n, const McOptions& opt) {
  require_valid_mn(m, n);
  detail::Stopwatch clock;
  const std::vector<int> js = index_set(n);
  const std::size_t k = js.size();
  const int split = n / 2;

  // k component means followed by the split fraction.
  using Block = std::vector<RunningStats>;
  auto merge_blocks = [k](const std::vector<Block>& parts) {
    Block total(k + 1);
    for (const auto& p : parts) {
      for (std::size_t i = 0; i <= k; ++i) total[i].merge(p[i]);
    }
    return total;
  };
  auto record = [&](Block& st, const std::vector<double>& v) {
    double all = 0.0, upper = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      st[i].add(v[i]);
      all += v[i];
      if (js[i] > split) upper += v[i];
    }
    st[k].add(upper / all);
  };

  const MonomialSampler mono(EnsembleSpec{m, n, SamplerMode::Monomial, opt.seed, opt.streams});
  const Block from_mono = merge_blocks(run_streams(opt, [&](RandomStream& rng, std::size_t count) {
    Block st(k + 1);
    std::vector<double> v(k);
    for (std::size_t s = 0; s < count; ++s) {
      const auto norms = component_norms(harmonic_decompose(mono.draw(rng)), Norm::kss());
      for (std::size_t i = 0; i < k; ++i) v[i] = norms.at(js[i]);
      record(st, v);
    }
    return st;
  }));

  McOptions profile_opt = opt;
  profile_opt.stream_offset = opt.stream_offset + (std::uint64_t{1} << 32);
  const ProfileSampler prof(EnsembleSpec{m, n, SamplerMode::Profile, opt.seed, opt.streams});
  const Block from_profile =
      merge_blocks(run_streams(profile_opt, [&](RandomStream& rng, std::size_t count) {
        Block st(k + 1);
        std::vector<double> v;
        for (std::size_t s = 0; s < count; ++s) {
          prof.draw_into(rng, v);
          record(st, v);
        }
        return st;
      }));

  std::vector<ExperimentReport> reports;
  const double seconds = clock.seconds();
  for (std::size_t i = 0; i <= k; ++i) {
    ExperimentReport r;
    if (i < k) {
      r.name = "cross-validation-component";
      r.parameters = {{"m", m}, {"n", n}, {"j", js[i]}, {"dim_H", dim_h_double(m, js[i])}};
    } else {
      r.name = "cross-validation-split";
      r.parameters = {{"m", m}, {"n", n}, {"l", split}};
    }
    r.estimate = from_mono[i].mean();
    r.target = from_profile[i].mean();
    r.std_error = std::hypot(from_mono[i].std_error(), from_profile[i].std_error());
    r.tolerance_rule = "|monomial mean - profile mean| <= 3 * combined std_error";
    r.verdict = three_sigma(r.estimate, r.target, r.std_error);
    r.parameters["profile_std_error"] = from_profile[i].std_error();
    detail::stamp(r, opt, clock);
    r.runtime_seconds = seconds;
    reports.push_back(std::move(r));
  }
  return reports;
}

/// E|u|^2_{L2} for u uniform on the Fischer unit sphere, against m!/(n+m)!.
/// Uses the monomial sampler and L2 norms from the harmonic decomposition.
inline ExperimentReport unit_sphere_l2_expectation(int m, int n, const McOptions& opt) {
  require_valid_mn(m, n);
  detail::Stopwatch clock;
  const MonomialSampler mono(EnsembleSpec{m, n, SamplerMode::Monomial, opt.seed, opt.streams});
  const RunningStats st = run_mean(opt, [&](RandomStream& rng) {
    const HomPoly<double> g = mono.draw(rng);
    double l2 = 0.0;
    for (const auto& [j, v] : component_norms(harmonic_decompose(g), Norm::l2())) l2 += v;
    return l2 / fischer_inner(g, g);
  });
  ExperimentReport r;
  r.name = "unit-sphere-l2";
  r.parameters = {{"m", m}, {"n", n}};
  r.target = std::exp(special::lgamma(m + 1.0) - special::lgamma(n + m + 1.0));
  r.estimate = st.mean();
  r.std_error = st.std_error();
  r.tolerance_rule = kThreeSigmaRule;
  r.verdict = three_sigma(r.estimate, r.target, r.std_error);
  detail::stamp(r, opt, clock);
  return r;
}

}  // namespace kss

#endif  // KSS_EXPERIMENTS_HPP
