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

#include "bbtp/error.h"

namespace bbtp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyBlock: return "EmptyBlock";
    case ErrorCode::kInvalidInstruction: return "InvalidInstruction";
    case ErrorCode::kLsdNotApplicable: return "LsdNotApplicable";
    case ErrorCode::kOracleTooLarge: return "OracleTooLarge";
    case ErrorCode::kMalformedGraph: return "MalformedGraph";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownInstructionForm: return "UnknownInstructionForm";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t index)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace bbtp
