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

#ifndef KSS_COMMON_HPP
#define KSS_COMMON_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace kss {

/// Raised when a solver or consistency check fails in a way that indicates a
/// bug rather than bad input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Norms on P_n considered throughout the library.
enum class NormKind { L2, KSS, Sobolev };

/// A norm selector; `q` is only meaningful for NormKind::Sobolev.
struct Norm {
  NormKind kind = NormKind::KSS;
  double q = 0.0;

  static constexpr Norm l2() { return {NormKind::L2, 0.0}; }
  static constexpr Norm kss() { return {NormKind::KSS, 0.0}; }
  static constexpr Norm sobolev(double q) { return {NormKind::Sobolev, q}; }
};

/// j belongs to J_n = { 0 <= j <= n, n - j even }.
constexpr bool in_index_set(int n, int j) noexcept {
  return j >= 0 && j <= n && (n - j) % 2 == 0;
}

/// J_n in increasing order.
inline std::vector<int> index_set(int n) {
  std::vector<int> js;
  if (n < 0) return js;
  js.reserve(static_cast<std::size_t>(n / 2 + 1));
  for (int j = n % 2; j <= n; j += 2) js.push_back(j);
  return js;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

/// Standing assumption 2 <= m < n.
inline void require_valid_mn(int m, int n) {
  require(m >= 2, "m must be at least 2 (got " + std::to_string(m) + ")");
  require(n > m, "n must exceed m (got m=" + std::to_string(m) +
                     ", n=" + std::to_string(n) + ")");
}

}  // namespace kss

#endif  // KSS_COMMON_HPP
