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

#ifndef KSS_MONTECARLO_HPP
#define KSS_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "kss/common.hpp"
#include "kss/ensembles.hpp"

namespace kss {

/// Streaming mean and variance (Welford), mergeable in a fixed order.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& o) {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count_ + o.count_);
    const double delta = o.mean_ - mean_;
    mean_ += delta * static_cast<double>(o.count_) / total;
    m2_ += o.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(o.count_) / total;
    count_ += o.count_;
  }

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double std_error() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Paired running moments for a ratio-of-means estimate E[y] / E[x].
class RatioStats {
 public:
  void add(double x, double y) {
    ++count_;
    const double n = static_cast<double>(count_);
    const double dx = x - mx_, dy = y - my_;
    mx_ += dx / n;
    my_ += dy / n;
    cxx_ += dx * (x - mx_);
    cyy_ += dy * (y - my_);
    cxy_ += dx * (y - my_);
  }

  void merge(const RatioStats& o) {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count_), nb = static_cast<double>(o.count_);
    const double total = na + nb, dx = o.mx_ - mx_, dy = o.my_ - my_, w = na * nb / total;
    mx_ += dx * nb / total;
    my_ += dy * nb / total;
    cxx_ += o.cxx_ + dx * dx * w;
    cyy_ += o.cyy_ + dy * dy * w;
    cxy_ += o.cxy_ + dx * dy * w;
    count_ += o.count_;
  }

  std::uint64_t count() const { return count_; }
  double ratio() const { return my_ / mx_; }
  /// Delta-method standard error of ratio().
  double std_error() const {
    if (count_ < 2) return 0.0;
    const double r = ratio(), n = static_cast<double>(count_);
    const double v = (cyy_ - 2.0 * r * cxy_ + r * r * cxx_) / (n - 1.0);
    return std::sqrt(std::max(v, 0.0) / n) / std::fabs(mx_);
  }

 private:
  std::uint64_t count_ = 0;
  double mx_ = 0.0, my_ = 0.0, cxx_ = 0.0, cyy_ = 0.0, cxy_ = 0.0;
};

struct McOptions {
  std::size_t samples = 10000;
  int streams = 8;
  std::uint64_t seed = 0;
  unsigned threads = 0;              // 0: one per hardware thread
  std::uint64_t stream_offset = 0;   // first stream id
};

/// Number of samples handled by stream `s`.
inline std::size_t stream_share(const McOptions& opt, int s) {
  const auto streams = static_cast<std::size_t>(opt.streams);
  return opt.samples / streams + (static_cast<std::size_t>(s) < opt.samples % streams ? 1 : 0);
}

/// Runs fn(stream, sample_count) once per stream id on a worker pool and
/// returns the per-stream results in stream order. The output does not depend
/// on the number of threads.
template <class Fn>
auto run_streams(const McOptions& opt, Fn&& fn) {
  using Result = decltype(fn(std::declval<RandomStream&>(), std::size_t{}));
  require(opt.streams >= 1, "run_streams: need at least one stream");
  std::vector<Result> results(static_cast<std::size_t>(opt.streams));
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(opt.streams));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int s = next++; s < opt.streams; s = next++) {
      try {
        RandomStream rng(opt.seed, opt.stream_offset + static_cast<std::uint64_t>(s));
        results[static_cast<std::size_t>(s)] = fn(rng, stream_share(opt, s));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// run_streams for a single scalar statistic, merged in stream order.
template <class Fn>
RunningStats run_mean(const McOptions& opt, Fn&& per_sample) {
  auto parts = run_streams(opt, [&](RandomStream& rng, std::size_t count) {
    RunningStats st;
    for (std::size_t i = 0; i < count; ++i) st.add(per_sample(rng));
    return st;
  });
  RunningStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace kss

#endif  // KSS_MONTECARLO_HPP
