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

// kss-spectra command-line front end.
//
// Exit status: 0 success, 1 usage, 2 verification failure, 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kss/kss.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "csv";
  std::string out;
  bool timing = false;
};

struct McFlags {
  std::size_t samples = 10000;
  int streams = 8;
  unsigned threads = 0;
  std::string seed = std::to_string(kss::kDefaultSeed);

  kss::McOptions options() const {
    kss::McOptions o;
    o.samples = samples;
    o.streams = streams;
    o.threads = threads;
    o.seed = parse_seed(seed);
    return o;
  }

  static std::uint64_t parse_seed(const std::string& s) {
    if (s == "random") {
      std::random_device rd;
      return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &pos, 0);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') {
      throw UsageError("--seed must be a non-negative integer or 'random'");
    }
    return v;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "Write output to PATH instead of stdout");
  sub->add_flag("--timing", c.timing, "Include runtimes in the output (breaks byte-identity)");
}

void add_mc(CLI::App* sub, McFlags& f) {
  sub->add_option("--samples", f.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--streams", f.streams, "Independent random streams")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--threads", f.threads, "Worker threads (0: all cores); output does not depend on it");
  sub->add_option("--seed", f.seed,
                  "Seed: integer, or 'random'. Streams are std::mt19937_64 seeded through std::seed_seq "
                  "from (seed, stream id); normals by Box-Muller")
      ->capture_default_str();
}

/// Writes to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string d(double x) { return kss::format_double(x); }

int report_exit(const std::vector<kss::ExperimentReport>& reports) {
  for (const auto& r : reports) {
    if (r.verdict == kss::Verdict::Fail) return kVerifyFailed;
  }
  return kOk;
}

int emit_reports(const Common& c, const std::vector<kss::ExperimentReport>& reports) {
  Sink sink(c.out);
  const kss::ReportWriteOptions opt{c.timing};
  if (c.format == "json") {
    kss::write_reports_json(sink.os(), reports, opt);
  } else {
    sink.os() << kss::kSchemaHeader << '\n';
    kss::write_reports_csv(sink.os(), reports, opt);
  }
  return report_exit(reports);
}

// --- coeffs -----------------------------------------------------------------

struct CoeffsArgs {
  int m = 0, n = 0;
  bool exact = false;
  int n_max = kss::kDefaultExactNMax;
};

int cmd_coeffs(const CoeffsArgs& a, const Common& c) {
  kss::require_valid_mn(a.m, a.n);
  Sink sink(c.out);
  std::ostream& os = sink.os();
  if (a.exact) {
    if (a.n > a.n_max) throw UsageError("exact mode is capped at n <= " + std::to_string(a.n_max) + " (see --n-max)");
    const kss::ExactCoefficientTable t = kss::build_exact_table(a.m, a.n, a.n_max);
    const kss::Rational s_sq_kss = t.s_sq_kss;
    if (c.format == "json") {
      json doc;
      doc["schema"] = kss::kSchemaName;
      doc["m"] = a.m;
      doc["n"] = a.n;
      doc["mode"] = "exact";
      doc["rows"] = json::array();
      for (const auto& r : t.rows) {
        doc["rows"].push_back({{"j", r.j},
                               {"dim_h", r.dim_h.str()},
                               {"c_j_sq", r.c_j_sq.str()},
                               {"tau", kss::to_string(r.tau)},
                               {"nu_tilde", kss::to_string(r.nu_tilde)},
                               {"s_j_sq", kss::to_string(r.s_j_sq)}});
      }
      doc["summary"] = {{"c_sq", t.c_sq.str()},
                        {"s_sq_l2", kss::to_string(t.s_sq_l2)},
                        {"s_sq_kss", kss::to_string(s_sq_kss)},
                        {"nu_tilde_sum", kss::to_string(t.nu_tilde_sum)}};
      os << doc.dump(2) << '\n';
    } else {
      os << kss::kSchemaHeader << '\n' << "j,dim_h,c_j_sq,tau,nu_tilde,s_j_sq\n";
      for (const auto& r : t.rows) {
        os << r.j << ',' << r.dim_h.str() << ',' << r.c_j_sq.str() << ',' << kss::to_string(r.tau) << ','
           << kss::to_string(r.nu_tilde) << ',' << kss::to_string(r.s_j_sq) << '\n';
      }
      os << "# summary\nc_sq,s_sq_l2,s_sq_kss,nu_tilde_sum\n"
         << t.c_sq.str() << ',' << kss::to_string(t.s_sq_l2) << ',' << kss::to_string(s_sq_kss) << ','
         << kss::to_string(t.nu_tilde_sum) << '\n';
    }
    return kOk;
  }

  const kss::SpectrumContext ctx(a.m, a.n);
  const kss::CoefficientTable t = kss::build_coefficient_table(ctx);
  const double c_sq = std::exp(kss::special::lgamma(a.n + a.m + 1.0) - kss::special::lgamma(a.m + 1.0) -
                               kss::special::lgamma(a.n + 1.0));
  const double s_l2 = kss::s_sq(a.m, a.n, kss::NormKind::L2);
  const double s_kss = kss::s_sq(a.m, a.n, kss::NormKind::KSS);
  const double mass = kss::nu_tilde_sum(ctx);
  if (c.format == "json") {
    json doc;
    doc["schema"] = kss::kSchemaName;
    doc["m"] = a.m;
    doc["n"] = a.n;
    doc["mode"] = "float";
    doc["rows"] = json::array();
    for (const auto& r : t.rows) {
      doc["rows"].push_back({{"j", r.j},
                             {"dim_h", r.dim_h},
                             {"c_j_sq", r.dim_h},
                             {"tau", std::exp(r.log_tau)},
                             {"log_tau", r.log_tau},
                             {"nu_tilde", r.nu_tilde},
                             {"log_nu_tilde", r.log_nu_tilde},
                             {"s_j_sq", r.s_j_sq}});
    }
    doc["summary"] = {{"c_sq", c_sq}, {"s_sq_l2", s_l2}, {"s_sq_kss", s_kss}, {"nu_tilde_sum", mass}};
    os << doc.dump(2) << '\n';
  } else {
    os << kss::kSchemaHeader << '\n' << "j,dim_h,c_j_sq,tau,log_tau,nu_tilde,log_nu_tilde,s_j_sq\n";
    for (const auto& r : t.rows) {
      os << r.j << ',' << d(r.dim_h) << ',' << d(r.dim_h) << ',' << d(std::exp(r.log_tau)) << ',' << d(r.log_tau)
         << ',' << d(r.nu_tilde) << ',' << d(r.log_nu_tilde) << ',' << d(r.s_j_sq) << '\n';
    }
    os << "# summary\nc_sq,s_sq_l2,s_sq_kss,nu_tilde_sum\n"
       << d(c_sq) << ',' << d(s_l2) << ',' << d(s_kss) << ',' << d(mass) << '\n';
  }
  return kOk;
}

// --- critical ---------------------------------------------------------------

int cmd_critical(int m, int n, const Common& c) {
  kss::require_valid_mn(m, n);
  const kss::SpectrumContext ctx(m, n);
  const kss::CriticalPointResult cp = kss::critical_point(ctx);
  const int peak = kss::discrete_peak(ctx);
  const double lower = cp.mu_n - 0.5 * (m + 1), upper = cp.mu_n + 2.0;
  const bool inside = lower < cp.x_c && cp.x_c < upper;
  Sink sink(c.out);
  if (c.format == "json") {
    json doc = {{"schema", kss::kSchemaName}, {"m", m},         {"n", n},
                {"mu_n", cp.mu_n},            {"x_c", cp.x_c},  {"nu_bar", cp.nu_bar},
                {"discrete_peak", peak},      {"lower", lower}, {"upper", upper},
                {"bound_check", inside}};
    sink.os() << doc.dump(2) << '\n';
  } else {
    sink.os() << kss::kSchemaHeader << '\n'
              << "m,n,mu_n,x_c,nu_bar,discrete_peak,lower,upper,bound_check\n"
              << m << ',' << n << ',' << d(cp.mu_n) << ',' << d(cp.x_c) << ',' << d(cp.nu_bar) << ',' << peak
              << ',' << d(lower) << ',' << d(upper) << ',' << (inside ? "true" : "false") << '\n';
  }
  return kOk;
}

// --- scaling ----------------------------------------------------------------

int cmd_scaling(int m, const std::vector<int>& ns, std::vector<double> grid, const Common& c) {
  if (ns.empty()) throw UsageError("--n needs at least one value");
  for (int n : ns) kss::require_valid_mn(m, n);
  if (grid.empty()) grid = kss::default_t_grid();
  const auto rows = kss::scaling_errors(m, ns, grid);
  const kss::ExperimentReport rep = kss::scaling_convergence(m, ns, grid);
  Sink sink(c.out);
  if (c.format == "json") {
    json doc;
    doc["schema"] = kss::kSchemaName;
    doc["m"] = m;
    doc["rows"] = json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back(
          {{"n", r.n}, {"mu_n", r.mu_n}, {"x_c", r.x_c}, {"nu_bar", r.nu_bar}, {"sup_error", r.sup_error}});
    }
    doc["tolerance_rule"] = rep.tolerance_rule;
    doc["pass"] = rep.pass();
    sink.os() << doc.dump(2) << '\n';
  } else {
    sink.os() << kss::kSchemaHeader << '\n' << "m,n,mu_n,x_c,nu_bar,sup_error\n";
    for (const auto& r : rows) {
      sink.os() << m << ',' << r.n << ',' << d(r.mu_n) << ',' << d(r.x_c) << ',' << d(r.nu_bar) << ','
                << d(r.sup_error) << '\n';
    }
    sink.os() << "# pass=" << (rep.pass() ? "true" : "false") << " (" << rep.tolerance_rule << ")\n";
  }
  return rep.pass() ? kOk : kVerifyFailed;
}

// --- sample -----------------------------------------------------------------

struct SampleArgs {
  int m = 0, n = 0;
  std::string mode = "profile";
  std::string norm = "kss";
  double q = 0.0;
  std::uint64_t stream = 0;
  bool poly = false;
};

int cmd_sample(const SampleArgs& a, const McFlags& f, const Common& c) {
  kss::require_valid_mn(a.m, a.n);
  const std::uint64_t seed = McFlags::parse_seed(f.seed);
  const kss::SpectrumContext ctx(a.m, a.n);
  const kss::CoefficientTable table = kss::build_coefficient_table(ctx);
  const kss::Norm norm = a.norm == "l2" ? kss::Norm::l2() : a.norm == "sobolev" ? kss::Norm::sobolev(a.q) : kss::Norm::kss();
  std::map<int, double> values;
  std::optional<kss::HomPoly<double>> poly;
  if (a.mode == "monomial") {
    poly = kss::sample_kss_monomial({a.m, a.n, kss::SamplerMode::Monomial, seed, 1}, a.stream);
    values = kss::to_norms(*poly, norm, table);
  } else {
    if (a.poly) throw UsageError("--poly requires --mode monomial");
    values = kss::to_norms(kss::sample_norm_profile({a.m, a.n, kss::SamplerMode::Profile, seed, 1}, a.stream), norm, table);
  }
  Sink sink(c.out);
  if (c.format == "json") {
    json doc = {{"schema", kss::kSchemaName}, {"m", a.m},       {"n", a.n},         {"mode", a.mode},
                {"norm", a.norm},             {"seed", seed},   {"stream", a.stream}};
    if (norm.kind == kss::NormKind::Sobolev) doc["q"] = a.q;
    doc["rows"] = json::array();
    for (const auto& [j, v] : values) doc["rows"].push_back({{"j", j}, {"squared_norm", v}});
    if (poly && a.poly) doc["polynomial"] = kss::to_text(*poly);
    sink.os() << doc.dump(2) << '\n';
  } else {
    sink.os() << kss::kSchemaHeader << '\n' << "j,squared_norm\n";
    for (const auto& [j, v] : values) sink.os() << j << ',' << d(v) << '\n';
    if (poly && a.poly) {
      std::istringstream text(kss::to_text(*poly));
      for (std::string line; std::getline(text, line);) sink.os() << "# poly " << line << '\n';
    }
  }
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(int level, const McFlags& f, bool no_budgets, const Common& c) {
  kss::VerifyOptions vo;
  vo.seed = McFlags::parse_seed(f.seed);
  vo.streams = f.streams;
  vo.threads = f.threads;
  vo.enforce_budgets = !no_budgets;
  Sink sink(c.out);
  std::ostream& os = sink.os();
  const bool as_json = c.format == "json";
  if (!as_json) os << kss::kSchemaHeader << '\n';
  json doc;
  doc["schema"] = kss::kSchemaName;
  doc["level"] = level;
  doc["checks"] = json::array();
  bool all = true;
  kss::run_verification(level, vo, [&](const kss::CheckResult& r) {
    all = all && r.pass;
    if (as_json) {
      json j = {{"id", r.id}, {"name", r.name}, {"level", r.level}, {"pass", r.pass}, {"detail", r.detail}};
      if (c.timing) j["seconds"] = r.seconds;
      doc["checks"].push_back(j);
    } else {
      os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail;
      if (c.timing) os << " (" << d(r.seconds) << " s)";
      os << std::endl;
    }
  });
  if (as_json) {
    doc["pass"] = all;
    os << doc.dump(2) << '\n';
  }
  return all ? kOk : kVerifyFailed;
}

double parse_limit(const std::string& s) {
  if (s == "inf" || s == "infinity") return kss::kInfinity;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw UsageError("not a number: " + s);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kss-spectra: harmonic decomposition of the Kostlan-Shub-Smale ensemble"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kss-spectra 1.0.0");

  Common common;
  McFlags mc;

  // coeffs
  CoeffsArgs coeffs;
  auto* s_coeffs = app.add_subcommand("coeffs", "Per-j coefficient table (dim H_j, c_j^2, tau_j, nu~_j, s_j^2)");
  s_coeffs->add_option("--m", coeffs.m, "Sphere dimension m >= 2")->required();
  s_coeffs->add_option("--n", coeffs.n, "Degree n > m")->required();
  s_coeffs->add_flag("--exact", coeffs.exact, "Exact rational arithmetic");
  s_coeffs->add_option("--n-max", coeffs.n_max, "Cap on n in exact mode")->capture_default_str();
  add_common(s_coeffs, common);

  // critical
  int crit_m = 0, crit_n = 0;
  auto* s_crit = app.add_subcommand("critical", "Critical point x_c, peak value and discrete peak");
  s_crit->add_option("--m", crit_m, "Sphere dimension m >= 2")->required();
  s_crit->add_option("--n", crit_n, "Degree n > m")->required();
  add_common(s_crit, common);

  // scaling
  int scal_m = 0;
  std::vector<int> scal_n;
  std::vector<double> t_grid;
  auto* s_scal = app.add_subcommand("scaling", "Sup-error against the scaling limit over a list of n");
  s_scal->add_option("--m", scal_m, "Sphere dimension m >= 2")->required();
  s_scal->add_option("--n", scal_n, "Comma-separated degrees")->required()->delimiter(',');
  s_scal->add_option("--t-grid", t_grid, "Comma-separated t values (default 0.1,0.2,...,3.0)")->delimiter(',');
  add_common(s_scal, common);

  // approx
  int ap_m = 0, ap_n = 0;
  double ap_q = 0.0;
  std::optional<double> ap_a, ap_A, ap_B;
  std::optional<int> ap_l;
  auto* s_ap = app.add_subcommand("approx", "Low-degree approximation experiment in H^q");
  s_ap->add_option("--m", ap_m, "Sphere dimension m >= 2")->required();
  s_ap->add_option("--n", ap_n, "Degree n > m")->required();
  s_ap->add_option("--q", ap_q, "Sobolev order q >= 0")->capture_default_str();
  s_ap->add_option("--l", ap_l, "Truncation degree (default: schedule l_n)");
  s_ap->add_option("--a-exponent", ap_a, "t_n = n^a with m < 4a < m+1 (default (2m+1)/8)");
  s_ap->add_option("--A", ap_A, "Constant A in eta_n");
  s_ap->add_option("--B", ap_B, "Constant B in eps_n");
  add_common(s_ap, common);
  add_mc(s_ap, mc);

  // projection
  int pr_m = 0, pr_n = 0;
  std::string pr_lo = "0", pr_hi = "inf";
  auto* s_pr = app.add_subcommand("projection", "E|pi u|^2 / E|u|^2 for a window in units of mu_n");
  s_pr->add_option("--m", pr_m, "Sphere dimension m >= 2")->required();
  s_pr->add_option("--n", pr_n, "Degree n > m")->required();
  s_pr->add_option("--t-lo", pr_lo, "Window start")->capture_default_str();
  s_pr->add_option("--t-hi", pr_hi, "Window end ('inf' allowed)")->capture_default_str();
  add_common(s_pr, common);
  add_mc(s_pr, mc);

  // sphere-moments
  int d1 = 1, d2 = 1, d3 = 1;
  double moment_a = 2.0;
  std::string moment_mode = "power";
  auto* s_sm = app.add_subcommand("sphere-moments", "Moments of block norms of a uniform point on a sphere");
  s_sm->add_option("--d1", d1, "First block dimension")->capture_default_str();
  s_sm->add_option("--d2", d2, "Second block dimension")->capture_default_str();
  s_sm->add_option("--d3", d3, "Third block dimension")->capture_default_str();
  s_sm->add_option("--a", moment_a, "Exponent for the power moment")->capture_default_str();
  s_sm->add_option("--mode", moment_mode, "power: E|x1|^a; ratio: E|x1|^2/|x2|^2")
      ->check(CLI::IsMember({"power", "ratio"}))
      ->capture_default_str();
  add_common(s_sm, common);
  add_mc(s_sm, mc);

  // truncation
  int tr_m = 0, tr_n = 0, tr_u = 0, tr_v = 0;
  auto* s_tr = app.add_subcommand("truncation", "E(|v|^2/|u|^2) for U = {j <= u-max}, V = {j >= v-min}");
  s_tr->add_option("--m", tr_m, "Sphere dimension m >= 2")->required();
  s_tr->add_option("--n", tr_n, "Degree n > m")->required();
  s_tr->add_option("--u-max", tr_u, "Largest j in U")->required();
  s_tr->add_option("--v-min", tr_v, "Smallest j in V")->required();
  add_common(s_tr, common);
  add_mc(s_tr, mc);

  // sample
  SampleArgs sample;
  auto* s_sa = app.add_subcommand("sample", "One draw from the ensemble, as per-j squared norms");
  s_sa->add_option("--m", sample.m, "Sphere dimension m >= 2")->required();
  s_sa->add_option("--n", sample.n, "Degree n > m")->required();
  s_sa->add_option("--mode", sample.mode, "Sampler")->check(CLI::IsMember({"monomial", "profile"}))->capture_default_str();
  s_sa->add_option("--norm", sample.norm, "Norm")->check(CLI::IsMember({"kss", "l2", "sobolev"}))->capture_default_str();
  s_sa->add_option("--q", sample.q, "Sobolev order")->capture_default_str();
  s_sa->add_option("--stream", sample.stream, "Stream id")->capture_default_str();
  s_sa->add_flag("--poly", sample.poly, "Also print the sampled polynomial (monomial mode)");
  add_common(s_sa, common);
  add_mc(s_sa, mc);

  // verify
  int level = 1;
  bool no_budgets = false;
  auto* s_ver = app.add_subcommand("verify", "Tiered self-verification suite");
  s_ver->add_option("--level", level, "1: exact identities, 2: numerics and grids, 3: Monte Carlo")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  s_ver->add_flag("--no-budgets", no_budgets, "Do not fail checks that exceed their time budget");
  add_common(s_ver, common);
  add_mc(s_ver, mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s_coeffs) return cmd_coeffs(coeffs, common);
    if (*s_crit) return cmd_critical(crit_m, crit_n, common);
    if (*s_scal) return cmd_scaling(scal_m, scal_n, t_grid, common);
    if (*s_ap) {
      kss::require_valid_mn(ap_m, ap_n);
      kss::ScheduleOptions so{ap_A, ap_B, ap_l};
      const kss::ApproxSchedule s = kss::build_schedule(ap_m, ap_q, ap_n, ap_a.value_or(kss::default_a_exponent(ap_m)), so);
      return emit_reports(common, {kss::approx_experiment(s, mc.options())});
    }
    if (*s_pr) {
      return emit_reports(common, {kss::projection_expectation(pr_m, pr_n, parse_limit(pr_lo), parse_limit(pr_hi),
                                                               mc.options())});
    }
    if (*s_sm) {
      const auto kind = moment_mode == "ratio" ? kss::SphereMoment::Ratio : kss::SphereMoment::Power;
      return emit_reports(common, {kss::verify_sphere_moment(kind, d1, d2, d3, moment_a, mc.options())});
    }
    if (*s_tr) {
      kss::require_valid_mn(tr_m, tr_n);
      return emit_reports(common, {kss::expected_ratio_truncation(tr_m, tr_n, kss::index_block(tr_n, 0, tr_u),
                                                                  kss::index_block(tr_n, tr_v, tr_n), mc.options())});
    }
    if (*s_sa) return cmd_sample(sample, mc, common);
    if (*s_ver) return cmd_verify(level, mc, no_budgets, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
