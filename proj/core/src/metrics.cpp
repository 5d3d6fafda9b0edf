// Copyright 2026 The bbtp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bbtp/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bbtp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sum of t*(t-1)/2 over runs of equal adjacent keys.
template <typename Eq>
std::int64_t TiedPairs(std::size_t n, Eq equal) {
  std::int64_t total = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

// Stable merge sort on `v`, returning the number of inversions (pairs that
// had to swap).
std::int64_t SortCountingSwaps(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    v.swap(buffer);
  }
  return swaps;
}

}  // namespace

double Mape(std::span<const double> measured, std::span<const double> predicted) {
  if (measured.size() != predicted.size()) {
    throw std::invalid_argument("measured and predicted sizes differ");
  }
  if (measured.empty()) return kNaN;
  double sum = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    if (!(measured[i] > 0.0)) throw std::invalid_argument("measured values must be positive");
    sum += std::abs(measured[i] - predicted[i]) / measured[i];
  }
  return 100.0 * sum / static_cast<double>(measured.size());
}

double KendallTau(std::span<const double> x, std::span<const double> y, TauVariant variant) {
  if (x.size() != y.size()) throw std::invalid_argument("rankings differ in length");
  const std::size_t n = x.size();
  if (n < 2) return kNaN;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  const std::int64_t n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t n1 =
      TiedPairs(n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
  const std::int64_t n3 = TiedPairs(n, [&](std::size_t i, std::size_t j) {
    return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::int64_t swaps = SortCountingSwaps(ys);
  const std::int64_t n2 = TiedPairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });

  const double s = static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps);
  if (variant == TauVariant::kA) return s / static_cast<double>(n0);
  const double denom =
      std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  if (denom == 0.0) return kNaN;
  return std::clamp(s / denom, -1.0, 1.0);
}

}  // namespace bbtp
