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

// Homogeneous polynomials in m+1 variables x_0..x_m with either exact
// rational or double coefficients, the Fischer inner product
//
//     <x^a, x^b> = a! if a == b, 0 otherwise,
//
// the Euclidean Laplacian, and the decomposition
//
//     p = sum_{j in J_n} kappa^{(n-j)/2} h_j,   kappa = |x|^2,  Delta h_j = 0.

#ifndef KSS_POLYALG_HPP
#define KSS_POLYALG_HPP

#include <cmath>
#include <compare>
#include <cstdio>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "kss/common.hpp"
#include "kss/exactcore.hpp"
#include "kss/spectra.hpp"

namespace kss {

struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}
  MultiIndex(std::initializer_list<int> e) : exponents(e) {}

  int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  std::size_t size() const { return exponents.size(); }
  int operator[](std::size_t i) const { return exponents[i]; }
  int& operator[](std::size_t i) { return exponents[i]; }

  // Lexicographic on the exponent tuple.
  auto operator<=>(const MultiIndex&) const = default;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "double";
  static double from_int(const BigInt& v) { return v.convert_to<double>(); }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  static double parse(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), "malformed floating-point coefficient '" + s + "'");
    return v;
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "rational";
  static Rational from_int(const BigInt& v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static std::string to_string(const Rational& v) { return kss::to_string(v); }
  static Rational parse(const std::string& s) { return parse_rational(s); }
};

template <class T>
concept PolyScalar = requires { ScalarTraits<T>::exact; };

/// a! = a_0! ... a_m! as a scalar.
template <PolyScalar Scalar>
Scalar multi_factorial(const MultiIndex& a) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    BigInt r = 1;
    for (int e : a.exponents) r *= factorial(e);
    return Scalar(r);
  } else {
    double r = 1.0;
    for (int e : a.exponents) {
      for (int i = 2; i <= e; ++i) r *= i;
    }
    return r;
  }
}

template <PolyScalar Scalar>
class HomPoly {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  HomPoly(int m, int degree) : m_(m), degree_(degree) {
    require(m >= 1, "HomPoly: need m >= 1");
    require(degree >= 0, "HomPoly: degree must be non-negative");
  }

  static HomPoly constant(int m, const Scalar& c) {
    HomPoly p(m, 0);
    p.add_term(MultiIndex(std::vector<int>(static_cast<std::size_t>(m + 1), 0)), c);
    return p;
  }

  static HomPoly monomial(int m, const MultiIndex& a, const Scalar& c = Scalar(1)) {
    HomPoly p(m, a.degree());
    p.add_term(a, c);
    return p;
  }

  /// kappa = x_0^2 + ... + x_m^2
  static HomPoly kappa(int m) {
    HomPoly p(m, 2);
    for (int i = 0; i <= m; ++i) {
      MultiIndex a(std::vector<int>(static_cast<std::size_t>(m + 1), 0));
      a[static_cast<std::size_t>(i)] = 2;
      p.add_term(a, Scalar(1));
    }
    return p;
  }

  int m() const { return m_; }
  int degree() const { return degree_; }
  int variables() const { return m_ + 1; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Adds c x^a; the term disappears if the coefficient becomes zero.
  void add_term(const MultiIndex& a, const Scalar& c) {
    require(a.size() == static_cast<std::size_t>(m_ + 1),
            "HomPoly: multi-index has the wrong number of variables");
    require(a.degree() == degree_, "HomPoly: multi-index degree differs from the polynomial's");
    for (int e : a.exponents) require(e >= 0, "HomPoly: negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Scalar evaluate(std::span<const Scalar> x) const {
    require(x.size() == static_cast<std::size_t>(m_ + 1), "HomPoly::evaluate: wrong dimension");
    Scalar sum = 0;
    for (const auto& [a, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (int e = 0; e < a[i]; ++e) t *= x[i];
      }
      sum += t;
    }
    return sum;
  }

  HomPoly& operator+=(const HomPoly& o) {
    require_same_space(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }

  HomPoly& operator-=(const HomPoly& o) {
    require_same_space(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }

  HomPoly& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  HomPoly& operator/=(const Scalar& s) {
    require(s != 0, "HomPoly: division by zero");
    for (auto& [a, c] : terms_) c /= s;
    return *this;
  }

  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(HomPoly a, const Scalar& s) { return a *= s; }
  friend HomPoly operator*(const Scalar& s, HomPoly a) { return a *= s; }
  friend HomPoly operator/(HomPoly a, const Scalar& s) { return a /= s; }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    require(a.m_ == b.m_, "HomPoly: product of polynomials in different variables");
    HomPoly r(a.m_, a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        MultiIndex e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.m_ == b.m_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_space(const HomPoly& o) const {
    require(o.m_ == m_ && o.degree_ == degree_,
            "HomPoly: operands differ in number of variables or degree");
  }

  int m_;
  int degree_;
  Terms terms_;
};

/// Every multi-index of the given degree in m+1 variables, lexicographic.
inline std::vector<MultiIndex> all_multi_indices(int m, int degree) {
  require(m >= 1 && degree >= 0, "all_multi_indices: need m >= 1, degree >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> e(static_cast<std::size_t>(m + 1), 0);
  // Recursive fill of positions 0..m with the remaining degree.
  auto fill = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == e.size() - 1) {
      e[pos] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      e[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, degree);
  return out;
}

/// sum_a u_a v_a a!
template <PolyScalar Scalar>
Scalar fischer_inner(const HomPoly<Scalar>& u, const HomPoly<Scalar>& v) {
  require(u.m() == v.m() && u.degree() == v.degree(),
          "fischer_inner: polynomials must share m and degree");
  const auto& small = u.size() <= v.size() ? u : v;
  const auto& large = u.size() <= v.size() ? v : u;
  Scalar sum = 0;
  for (const auto& [a, c] : small.terms()) {
    auto it = large.terms().find(a);
    if (it != large.terms().end()) sum += c * it->second * multi_factorial<Scalar>(a);
  }
  return sum;
}

/// Euclidean Laplacian; degrees below 2 map to the zero polynomial.
template <PolyScalar Scalar>
HomPoly<Scalar> laplacian(const HomPoly<Scalar>& p) {
  HomPoly<Scalar> r(p.m(), std::max(p.degree() - 2, 0));
  if (p.degree() < 2) return r;
  for (const auto& [a, c] : p.terms()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 2) continue;
      MultiIndex e = a;
      e[i] -= 2;
      r.add_term(e, c * Scalar(a[i] * (a[i] - 1)));
    }
  }
  return r;
}

/// kappa^k p.
template <PolyScalar Scalar>
HomPoly<Scalar> multiply_kappa(const HomPoly<Scalar>& p, int k) {
  require(k >= 0, "multiply_kappa: k must be non-negative");
  HomPoly<Scalar> r = p;
  for (int step = 0; step < k; ++step) {
    HomPoly<Scalar> next(p.m(), r.degree() + 2);
    for (const auto& [a, c] : r.terms()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        MultiIndex e = a;
        e[i] += 2;
        next.add_term(e, c);
      }
    }
    r = std::move(next);
  }
  return r;
}

template <PolyScalar Scalar>
struct HarmonicComponents {
  int m = 0;
  int n = 0;
  std::map<int, HomPoly<Scalar>> parts;  // j in J_n -> harmonic h_j of degree j

  const HomPoly<Scalar>& part(int j) const {
    auto it = parts.find(j);
    require(it != parts.end(), "HarmonicComponents: j not in J_n");
    return it->second;
  }

  /// sum_j kappa^{(n-j)/2} h_j
  HomPoly<Scalar> reconstruct() const {
    HomPoly<Scalar> p(m, n);
    for (const auto& [j, h] : parts) p += multiply_kappa(h, (n - j) / 2);
    return p;
  }
};

/// Laplacian peeling: with p = sum_k kappa^k h_{n-2k},
///   Delta p = sum_{k>=1} 2k(m + 2(n-2k) + 2k - 1) kappa^{k-1} h_{n-2k},
/// so the components of Delta p determine every h_j with j < n, and
/// h_n = p - sum_{k>=1} kappa^k h_{n-2k}.
template <PolyScalar Scalar>
HarmonicComponents<Scalar> harmonic_decompose(const HomPoly<Scalar>& p) {
  HarmonicComponents<Scalar> out;
  out.m = p.m();
  out.n = p.degree();
  const int m = p.m(), n = p.degree();
  if (n < 2) {
    out.parts.emplace(n, p);
    return out;
  }
  HarmonicComponents<Scalar> lower = harmonic_decompose(laplacian(p));
  HomPoly<Scalar> top = p;
  for (auto& [j, g] : lower.parts) {
    const int k = (n - j) / 2;
    HomPoly<Scalar> h = g / Scalar(2 * k * (m + 2 * j + 2 * k - 1));
    top -= multiply_kappa(h, k);
    out.parts.emplace(j, std::move(h));
  }
  out.parts.emplace(n, std::move(top));
  return out;
}

/// prod_{i=1}^{j} (m + 2i - 1)
template <PolyScalar Scalar>
Scalar odd_rising_product(int m, int j) {
  Scalar r = 1;
  for (int i = 1; i <= j; ++i) r *= Scalar(m + 2 * i - 1);
  return r;
}

/// L^2(S^m) squared norm of a harmonic polynomial (invariant probability
/// measure): sum_a h_a^2 a! / prod_{i=1}^{j} (m + 2i - 1).
/// Harmonicity is checked for exact scalars only.
template <PolyScalar Scalar>
Scalar l2_norm_sq_harmonic(const HomPoly<Scalar>& h) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    require(laplacian(h).is_zero(), "l2_norm_sq_harmonic: polynomial is not harmonic");
  }
  return fischer_inner(h, h) / odd_rising_product<Scalar>(h.m(), h.degree());
}

/// Squared norms of the components of an already decomposed polynomial.
/// KSS norms use the lifted kappa^{(n-j)/2} h_j; Sobolev(q) weighs the L2
/// values by j^{2q} (exact scalars need 2q to be an integer).
template <PolyScalar Scalar>
std::map<int, Scalar> component_norms(const HarmonicComponents<Scalar>& hc, Norm norm) {
  std::map<int, Scalar> out;
  for (const auto& [j, h] : hc.parts) {
    switch (norm.kind) {
      case NormKind::KSS: {
        const HomPoly<Scalar> lifted = multiply_kappa(h, (hc.n - j) / 2);
        out.emplace(j, fischer_inner(lifted, lifted));
        break;
      }
      case NormKind::L2:
        out.emplace(j, l2_norm_sq_harmonic(h));
        break;
      case NormKind::Sobolev: {
        require(norm.q >= 0.0, "component_norms: Sobolev order must be non-negative");
        Scalar w = 1;
        if constexpr (ScalarTraits<Scalar>::exact) {
          const double twice_q = 2.0 * norm.q;
          require(twice_q == std::floor(twice_q),
                  "component_norms: exact Sobolev weights need 2q to be an integer");
          if (j > 0) w = Scalar(boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(twice_q)));
        } else {
          w = sobolev_weight(j, norm.q);
        }
        out.emplace(j, w * l2_norm_sq_harmonic(h));
        break;
      }
    }
  }
  return out;
}

template <PolyScalar Scalar>
std::map<int, Scalar> component_norms(const HomPoly<Scalar>& p, Norm norm) {
  return component_norms(harmonic_decompose(p), norm);
}

/// H^q distance from p to P_l restricted to the sphere:
/// sqrt(sum_{j in J_n, j > l} j^{2q} |h_j|^2_{L2}).
template <PolyScalar Scalar>
double sobolev_dist(const HarmonicComponents<Scalar>& hc, int l, double q) {
  require(l >= 0 && l <= hc.n, "sobolev_dist: need 0 <= l <= degree");
  require(q >= 0.0, "sobolev_dist: q must be non-negative");
  double sum = 0.0;
  for (const auto& [j, h] : hc.parts) {
    if (j <= l) continue;
    sum += sobolev_weight(j, q) * ScalarTraits<Scalar>::to_double(l2_norm_sq_harmonic(h));
  }
  return std::sqrt(sum);
}

template <PolyScalar Scalar>
double sobolev_dist(const HomPoly<Scalar>& p, int l, double q) {
  require(l >= 0 && l <= p.degree(), "sobolev_dist: need 0 <= l <= degree");
  return sobolev_dist(harmonic_decompose(p), l, q);
}

/// x_0^n / n!, the element representing evaluation at o = (1, 0, ..., 0) in
/// the Fischer inner product.
template <PolyScalar Scalar>
HomPoly<Scalar> evaluation_vector(int m, int n) {
  require(m >= 1 && n >= 0, "evaluation_vector: need m >= 1, n >= 0");
  MultiIndex a(std::vector<int>(static_cast<std::size_t>(m + 1), 0));
  a[0] = n;
  return HomPoly<Scalar>::monomial(m, a, Scalar(1) / ScalarTraits<Scalar>::from_int(factorial(n)));
}

}  // namespace kss

#endif  // KSS_POLYALG_HPP
