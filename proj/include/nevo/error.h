/* Copyright 2026 The Nevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NEVO_ERROR_H_
#define NEVO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nevo {

// Every failure the pipeline can report. The CLI maps these onto exit codes.
enum class ErrorCode {
  kNotAChain,
  kEmptySegment,
  kUnparseableDate,
  kConflictingDates,
  kEmptyName,
  kRedirectCycle,
  kRedirectTooDeep,
  kStoreUnavailable,
  kPageMissing,
  kNetworkError,
  kRateLimited,
  kNetworkBlocked,
  kNoDocuments,
  kWindowAbsent,
  kEmptyInput,
  kBadEdges,
  kOutOfRange,
  kBadFormat,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nevo

#endif  // NEVO_ERROR_H_
