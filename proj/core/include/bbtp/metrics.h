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

#ifndef BBTP_METRICS_H_
#define BBTP_METRICS_H_

#include <cstddef>
#include <span>

namespace bbtp {

// Mean absolute percentage error, in percent: 100/n * sum |m - p| / m.
// All measured values must be positive. NaN for empty input.
double Mape(std::span<const double> measured, std::span<const double> predicted);

enum class TauVariant { kA, kB };

// Kendall rank correlation in O(n log n) (Knight's algorithm). tau-b
// corrects for ties in either ranking. Returns NaN when undefined: fewer
// than two pairs, or (tau-b) a ranking that is entirely tied.
double KendallTau(std::span<const double> x, std::span<const double> y,
                  TauVariant variant = TauVariant::kB);

}  // namespace bbtp

#endif  // BBTP_METRICS_H_
