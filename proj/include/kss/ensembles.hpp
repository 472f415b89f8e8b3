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

// Seeded random streams and the two samplers of the Kostlan-Shub-Smale
// ensemble on P_n:
//
//  * Monomial: u = sum_a g_a x^a / sqrt(a!) with independent standard normal
//    g_a, i.e. a standard Gaussian in the Fischer norm (unit variance, not the
//    variance 1/2 of the density exp(-|u|^2); all functionals used here are
//    scale invariant).
//  * Profile: only the squared Fischer norms of the harmonic components,
//    which are independent chi-square variables with dim H_j degrees of
//    freedom.
//
// Streams: (seed, stream_id) -> std::seed_seq -> std::mt19937_64. Both the
// seeding algorithm and the engine are fully specified by the C++ standard,
// so streams are identical across platforms. Uniforms take the top 53 bits.
// Normals use the Box-Muller transform (both variates of a pair are used).
// Chi-square with k <= 32 degrees of freedom is a sum of k squared normals;
// larger k uses 2 Gamma(k/2) drawn with Marsaglia-Tsang.

#ifndef KSS_ENSEMBLES_HPP
#define KSS_ENSEMBLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "kss/common.hpp"
#include "kss/polyalg.hpp"
#include "kss/spectra.hpp"

namespace kss {

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x6b737373u};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Gamma(shape, 1).
  double gamma(double shape) {
    require(shape > 0.0, "RandomStream::gamma: shape must be positive");
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double dof) {
    require(dof > 0.0, "RandomStream::chi_square: degrees of freedom must be positive");
    if (dof <= 32.0 && dof == std::floor(dof)) {
      double s = 0.0;
      for (int i = 0; i < static_cast<int>(dof); ++i) {
        const double g = normal();
        s += g * g;
      }
      return s;
    }
    return 2.0 * gamma(0.5 * dof);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline RandomStream rng_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RandomStream(seed, stream_id);
}

enum class SamplerMode { Monomial, Profile };

struct EnsembleSpec {
  int m = 2;
  int n = 3;
  SamplerMode mode = SamplerMode::Profile;
  std::uint64_t seed = 0;
  int streams = 1;

  void validate() const {
    require_valid_mn(m, n);
    require(streams >= 1, "EnsembleSpec: streams must be at least 1");
  }
};

/// Squared Fischer norms of the harmonic components, indexed by j in J_n.
struct NormProfile {
  int m = 0;
  int n = 0;
  std::vector<double> values;  // values[i] belongs to j = n % 2 + 2 i

  double operator[](int j) const {
    require(in_index_set(n, j), "NormProfile: j not in J_n");
    return values[static_cast<std::size_t>(j / 2)];
  }
  double& operator[](int j) {
    require(in_index_set(n, j), "NormProfile: j not in J_n");
    return values[static_cast<std::size_t>(j / 2)];
  }
  double total() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

/// Repeated monomial-mode draws with the monomial basis precomputed.
class MonomialSampler {
 public:
  explicit MonomialSampler(const EnsembleSpec& spec) : m_(spec.m), n_(spec.n) {
    spec.validate();
    require(spec.mode == SamplerMode::Monomial, "MonomialSampler: spec mode must be Monomial");
    basis_ = all_multi_indices(m_, n_);
    scale_.reserve(basis_.size());
    for (const auto& a : basis_) scale_.push_back(1.0 / std::sqrt(multi_factorial<double>(a)));
  }

  HomPoly<double> draw(RandomStream& rng) const {
    HomPoly<double> p(m_, n_);
    for (std::size_t i = 0; i < basis_.size(); ++i) p.add_term(basis_[i], rng.normal() * scale_[i]);
    return p;
  }

 private:
  int m_, n_;
  std::vector<MultiIndex> basis_;
  std::vector<double> scale_;
};

/// Repeated profile-mode draws.
class ProfileSampler {
 public:
  explicit ProfileSampler(const EnsembleSpec& spec) : m_(spec.m), n_(spec.n) {
    spec.validate();
    require(spec.mode == SamplerMode::Profile, "ProfileSampler: spec mode must be Profile");
    for (int j : index_set(n_)) dims_.push_back(dim_h_double(m_, j));
  }

  NormProfile draw(RandomStream& rng) const {
    NormProfile p{m_, n_, std::vector<double>(dims_.size())};
    draw_into(rng, p.values);
    return p;
  }

  /// Allocation-free variant for hot loops; `out` must have |J_n| entries.
  void draw_into(RandomStream& rng, std::vector<double>& out) const {
    out.resize(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) out[i] = rng.chi_square(dims_[i]);
  }

  const std::vector<double>& dims() const { return dims_; }

 private:
  int m_, n_;
  std::vector<double> dims_;
};

/// First monomial-mode draw of stream `stream_id`.
inline HomPoly<double> sample_kss_monomial(const EnsembleSpec& spec, std::uint64_t stream_id) {
  RandomStream rng(spec.seed, stream_id);
  return MonomialSampler(spec).draw(rng);
}

/// First profile-mode draw of stream `stream_id`.
inline NormProfile sample_norm_profile(const EnsembleSpec& spec, std::uint64_t stream_id) {
  RandomStream rng(spec.seed, stream_id);
  return ProfileSampler(spec).draw(rng);
}

/// Converts squared Fischer norms to the requested norm: L2 multiplies by
/// tau_j, Sobolev(q) additionally by j^{2q}. tau_j underflows for large n.
inline std::map<int, double> to_norms(const NormProfile& profile, Norm norm,
                                      const CoefficientTable& table) {
  require(profile.m == table.m && profile.n == table.n,
          "to_norms: profile and coefficient table differ in (m, n)");
  require(profile.values.size() == table.rows.size(), "to_norms: profile has the wrong length");
  std::map<int, double> out;
  for (const auto& row : table.rows) {
    const double v = profile[row.j];
    switch (norm.kind) {
      case NormKind::KSS:
        out.emplace(row.j, v);
        break;
      case NormKind::L2:
        out.emplace(row.j, std::exp(row.log_tau) * v);
        break;
      case NormKind::Sobolev:
        require(norm.q >= 0.0, "to_norms: Sobolev order must be non-negative");
        out.emplace(row.j, sobolev_weight(row.j, norm.q) * std::exp(row.log_tau) * v);
        break;
    }
  }
  return out;
}

/// Same for a sampled polynomial, through its harmonic decomposition.
inline std::map<int, double> to_norms(const HomPoly<double>& poly, Norm norm,
                                      const CoefficientTable& table) {
  require(poly.m() == table.m && poly.degree() == table.n,
          "to_norms: polynomial and coefficient table differ in (m, n)");
  NormProfile profile{table.m, table.n, std::vector<double>(table.rows.size())};
  for (const auto& [j, v] : component_norms(harmonic_decompose(poly), Norm::kss())) profile[j] = v;
  return to_norms(profile, norm, table);
}

}  // namespace kss

#endif  // KSS_ENSEMBLES_HPP
