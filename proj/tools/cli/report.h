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

#ifndef BBTP_TOOLS_REPORT_H_
#define BBTP_TOOLS_REPORT_H_

#include <optional>
#include <string>

#include "bbtp/combiner.h"
#include "bbtp/model.h"
#include "json.hpp"

namespace bbtp::cli {

// {"decimal": "1.17", "exact": "7/6"}
nlohmann::json RationalJson(const Rational& r);

nlohmann::json PredictionJson(const Prediction& p);
nlohmann::json CounterfactualJson(Component idealized, const Counterfactual& cf);

std::string PredictionText(const Prediction& p);
std::string CounterfactualText(Component idealized, const Counterfactual& cf);

}  // namespace bbtp::cli

#endif  // BBTP_TOOLS_REPORT_H_
