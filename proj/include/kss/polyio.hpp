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

// Text format for HomPoly:
//
//     m n mode                 (mode is "rational" or "double")
//     e0 e1 ... em coefficient (one line per term, lexicographic order)
//
// Rational coefficients are written as "p/q" (or "p"), doubles with 17
// significant digits, so both modes round-trip exactly.

#ifndef KSS_POLYIO_HPP
#define KSS_POLYIO_HPP

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kss/polyalg.hpp"

namespace kss {

template <PolyScalar Scalar>
void write_poly(std::ostream& os, const HomPoly<Scalar>& p) {
  os << p.m() << ' ' << p.degree() << ' ' << ScalarTraits<Scalar>::mode << '\n';
  for (const auto& [a, c] : p.terms()) {
    for (int e : a.exponents) os << e << ' ';
    os << ScalarTraits<Scalar>::to_string(c) << '\n';
  }
}

template <PolyScalar Scalar>
std::string to_text(const HomPoly<Scalar>& p) {
  std::ostringstream os;
  write_poly(os, p);
  return os.str();
}

template <PolyScalar Scalar>
HomPoly<Scalar> read_poly(std::istream& is) {
  std::string header;
  require(static_cast<bool>(std::getline(is, header)), "read_poly: missing header line");
  std::istringstream hs(header);
  int m = -1, n = -1;
  std::string mode, extra;
  require(static_cast<bool>(hs >> m >> n >> mode) && !(hs >> extra),
          "read_poly: header must be 'm n mode'");
  require(mode == ScalarTraits<Scalar>::mode,
          std::string("read_poly: expected mode '") + ScalarTraits<Scalar>::mode + "', got '" +
              mode + "'");
  HomPoly<Scalar> p(m, n);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    MultiIndex a(std::vector<int>(static_cast<std::size_t>(m + 1), 0));
    for (int i = 0; i <= m; ++i) {
      require(static_cast<bool>(ls >> a[static_cast<std::size_t>(i)]),
              "read_poly: malformed term line '" + line + "'");
    }
    std::string coeff;
    require(static_cast<bool>(ls >> coeff) && !(ls >> extra),
            "read_poly: malformed term line '" + line + "'");
    require(p.coefficient(a) == 0, "read_poly: duplicate monomial in '" + line + "'");
    p.add_term(a, ScalarTraits<Scalar>::parse(coeff));
  }
  return p;
}

template <PolyScalar Scalar>
HomPoly<Scalar> from_text(const std::string& text) {
  std::istringstream is(text);
  return read_poly<Scalar>(is);
}

}  // namespace kss

#endif  // KSS_POLYIO_HPP
