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

#ifndef BBTP_ERROR_H_
#define BBTP_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bbtp {

enum class ErrorCode {
  kEmptyBlock,
  kInvalidInstruction,
  kLsdNotApplicable,
  kOracleTooLarge,
  kMalformedGraph,
  kNotApplicable,
  kParseError,
  kUnknownInstructionForm,
  kConfigError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. The code is
// stable and meant for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t index);

  ErrorCode code() const noexcept { return code_; }
  // Offending instruction index (InvalidInstruction) or input line
  // (ParseError), when known.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace bbtp

#endif  // BBTP_ERROR_H_
