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

#include "bbtp/rational.h"

#include <cstdlib>

namespace bbtp {
namespace {

// Hundredths of |r|, rounded half up.
std::int64_t ScaledHundredths(const Rational& r) {
  const std::int64_t num = std::abs(r.numerator());
  const std::int64_t den = r.denominator();
  return (num * 200 + den) / (2 * den);
}

}  // namespace

double ToDouble(const Rational& r) { return boost::rational_cast<double>(r); }

std::string ToFraction(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string ToFixed2(const Rational& r) {
  const std::int64_t scaled = ScaledHundredths(r);
  std::string frac = std::to_string(scaled % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  std::string out = (r < Rational(0) && scaled != 0) ? "-" : "";
  return out + std::to_string(scaled / 100) + "." + frac;
}

double RoundToHundredths(const Rational& r) {
  const double v = static_cast<double>(ScaledHundredths(r)) / 100.0;
  return r < Rational(0) ? -v : v;
}

}  // namespace bbtp
