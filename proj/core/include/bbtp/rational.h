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

#ifndef BBTP_RATIONAL_H_
#define BBTP_RATIONAL_H_

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace bbtp {

// Exact cycles-per-iteration values. Every component bound is computed in
// this type; conversion to decimal happens only when reporting.
// Compare against Rational(0) rather than a bare 0: with C++20 rewritten
// comparisons, boost 1.74's mixed int/rational operator== recurses.
using Rational = boost::rational<std::int64_t>;

double ToDouble(const Rational& r);

// "num/den", always with an explicit denominator ("5/1").
std::string ToFraction(const Rational& r);

// Decimal string with exactly two fractional digits, rounded half away
// from zero ("1.17" for 7/6).
std::string ToFixed2(const Rational& r);

// The value ToFixed2 prints, as a double.
double RoundToHundredths(const Rational& r);

}  // namespace bbtp

#endif  // BBTP_RATIONAL_H_
