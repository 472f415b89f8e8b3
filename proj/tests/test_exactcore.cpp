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

#include <gtest/gtest.h>

#include "kss/exactcore.hpp"
#include "oracles.hpp"

using kss::BigInt;
using kss::Rational;

namespace {

Rational q(const char* s) { return kss::parse_rational(s); }

}  // namespace

TEST(Rational, StringRoundTrip) {
  EXPECT_EQ(kss::to_string(q("6/4")), "3/2");
  EXPECT_EQ(kss::to_string(q("-10/5")), "-2");
  EXPECT_EQ(kss::to_string(q("3/-9")), "-1/3");
  EXPECT_EQ(kss::to_string(kss::make_rational(0, 7)), "0");
  EXPECT_THROW(kss::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(kss::parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(kss::make_rational(1, 0), std::invalid_argument);
}

TEST(Binomial, MatchesPascal) {
  for (int n = 0; n <= 30; ++n) {
    for (int k = -1; k <= n + 1; ++k) EXPECT_EQ(kss::binomial(n, k), oracle::choose(n, k)) << n << "," << k;
  }
  EXPECT_EQ(kss::binomial(10, 3), 120);
  EXPECT_EQ(kss::binomial(5, 7), 0);
}

TEST(Dimensions, HarmonicDimensionsAgreeWithDifferenceOfBinomials) {
  for (int m = 2; m <= 8; ++m) {
    for (int j = 0; j <= 40; ++j) EXPECT_EQ(kss::dim_H(m, j), oracle::dim_harmonic(m, j)) << m << "," << j;
  }
  EXPECT_EQ(kss::dim_H(2, 0), 1);
  EXPECT_EQ(kss::dim_H(2, 1), 3);
  EXPECT_EQ(kss::dim_H(2, 4), 9);
  EXPECT_EQ(kss::dim_H(4, 1), 5);
}

TEST(Dimensions, PolynomialSpaceSplitsIntoHarmonics) {
  for (int m = 2; m <= 6; ++m) {
    for (int n = 0; n <= 30; ++n) {
      BigInt sum = 0;
      for (int j : kss::index_set(n)) sum += kss::dim_H(m, j);
      EXPECT_EQ(sum, kss::dim_P(m, n));
    }
  }
  EXPECT_EQ(kss::dim_P(2, 4), 15);
}

TEST(HalfIntegerGamma, SmallValues) {
  auto g = kss::gamma_half_integer(1);  // Gamma(1/2) = sqrt(pi)
  EXPECT_EQ(g.coef, 1);
  EXPECT_EQ(g.sqrt_pi_power, 1);
  g = kss::gamma_half_integer(7);  // Gamma(7/2) = 15/8 sqrt(pi)
  EXPECT_EQ(g.coef, q("15/8"));
  EXPECT_EQ(g.sqrt_pi_power, 1);
  g = kss::gamma_half_integer(10);  // Gamma(5) = 24
  EXPECT_EQ(g.coef, 24);
  EXPECT_EQ(g.sqrt_pi_power, 0);
}

TEST(Tau, AgreesWithProductFormula) {
  for (int m = 2; m <= 7; ++m) {
    for (int n = m + 1; n <= 35; ++n) {
      for (int j : kss::index_set(n)) EXPECT_EQ(kss::tau_exact(m, n, j), oracle::tau(m, n, j)) << m << "," << n << "," << j;
    }
  }
}

TEST(Tau, Fixtures) {
  EXPECT_EQ(kss::tau_exact(2, 3, 1), q("1/30"));
  EXPECT_EQ(kss::tau_exact(2, 3, 3), q("1/105"));
  EXPECT_EQ(kss::tau_exact(2, 4, 4), q("1/945"));
  EXPECT_EQ(kss::tau_exact(2, 4, 2), q("1/210"));
}

TEST(Tau, StepRatio) {
  for (int m = 2; m <= 5; ++m) {
    for (int n = m + 1; n <= 30; ++n) {
      for (int j : kss::index_set(n)) {
        if (j + 2 > n) continue;
        EXPECT_EQ(kss::tau_exact(m, n, j + 2) / kss::tau_exact(m, n, j), Rational(BigInt(n - j), BigInt(n + j + m + 1)));
      }
    }
  }
}

TEST(Tau, RejectsIndicesOutsideTheIndexSet) {
  EXPECT_THROW(kss::tau_exact(2, 4, 3), std::invalid_argument);
  EXPECT_THROW(kss::tau_exact(2, 4, 6), std::invalid_argument);
  EXPECT_THROW(kss::tau_exact(2, 4, -2), std::invalid_argument);
}

TEST(NuTilde, RatioMatchesProductForm) {
  for (int m = 2; m <= 6; ++m) {
    for (int n = m + 1; n <= 30; ++n) {
      for (int j : kss::index_set(n)) {
        if (j + 2 > n) continue;
        // (1 + (m-2)/(j+1)) (1 + (m-2)/(j+2)) (1 + 2/(j + (m-1)/2)) (n-j)/(n+j+m+1)
        const Rational a = 1 + Rational(BigInt(m - 2), BigInt(j + 1));
        const Rational b = 1 + Rational(BigInt(m - 2), BigInt(j + 2));
        const Rational c = 1 + Rational(BigInt(4), BigInt(2 * j + m - 1));
        const Rational d(BigInt(n - j), BigInt(n + j + m + 1));
        EXPECT_EQ(kss::nu_tilde_exact(m, n, j + 2) / kss::nu_tilde_exact(m, n, j), a * b * c * d);
      }
    }
  }
}

TEST(ExactTable, Fixtures) {
  const auto t3 = kss::build_exact_table(2, 3);
  ASSERT_EQ(t3.rows.size(), 2u);
  EXPECT_EQ(t3.rows[0].j, 1);
  EXPECT_EQ(t3.rows[0].c_j_sq, 3);
  EXPECT_EQ(t3.rows[1].c_j_sq, 7);
  EXPECT_EQ(t3.rows[0].nu_tilde, q("3/5"));
  EXPECT_EQ(t3.rows[1].nu_tilde, q("2/5"));
  EXPECT_EQ(t3.s_sq_kss, 3);
  EXPECT_EQ(t3.s_sq_l2, q("9/2"));

  const auto t4 = kss::build_exact_table(2, 4);
  ASSERT_EQ(t4.rows.size(), 3u);
  EXPECT_EQ(t4.rows[0].nu_tilde, q("1/5"));
  EXPECT_EQ(t4.rows[1].nu_tilde, q("4/7"));
  EXPECT_EQ(t4.rows[2].nu_tilde, q("8/35"));
  EXPECT_EQ(t4.nu_tilde_sum, 1);
  EXPECT_EQ(t4.s_sq_kss, 4);
}

TEST(ExactTable, IdentitiesAgainstIndependentOracle) {
  for (int m = 2; m <= 6; ++m) {
    for (int n = m + 1; n <= 40; ++n) {
      const auto t = kss::build_exact_table(m, n);
      oracle::Q sum = 0, sum_s = 0;
      for (const auto& row : t.rows) {
        const oracle::Q nu = oracle::nu_tilde(m, n, row.j);
        EXPECT_EQ(row.nu_tilde, nu);
        EXPECT_EQ(row.s_j_sq, oracle::Q(oracle::Int(row.j) * (m + row.j - 1), oracle::Int(m)));
        sum += nu;
        sum_s += nu * row.s_j_sq;
      }
      EXPECT_EQ(sum, 1);
      EXPECT_EQ(sum_s, n);
      EXPECT_EQ(t.c_sq, oracle::choose(n + m, m));
    }
  }
}

TEST(ExactTable, RejectsInvalidShapes) {
  EXPECT_THROW(kss::build_exact_table(3, 2), std::invalid_argument);
  EXPECT_THROW(kss::build_exact_table(1, 5), std::invalid_argument);
  EXPECT_THROW(kss::build_exact_table(2, 201), std::invalid_argument);
  EXPECT_NO_THROW(kss::build_exact_table(2, 60, 60));
}

TEST(ExactTable, LargeDegreeStillExact) {
  const auto t = kss::build_exact_table(3, 200);
  EXPECT_EQ(t.nu_tilde_sum, 1);
  EXPECT_EQ(t.s_sq_kss, 200);
}
