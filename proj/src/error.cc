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

#include "nevo/error.h"

namespace nevo {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAChain: return "NotAChain";
    case ErrorCode::kEmptySegment: return "EmptySegment";
    case ErrorCode::kUnparseableDate: return "UnparseableDate";
    case ErrorCode::kConflictingDates: return "ConflictingDates";
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kRedirectCycle: return "RedirectCycle";
    case ErrorCode::kRedirectTooDeep: return "RedirectTooDeep";
    case ErrorCode::kStoreUnavailable: return "StoreUnavailable";
    case ErrorCode::kPageMissing: return "PageMissing";
    case ErrorCode::kNetworkError: return "NetworkError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kNetworkBlocked: return "NetworkBlocked";
    case ErrorCode::kNoDocuments: return "NoDocuments";
    case ErrorCode::kWindowAbsent: return "WindowAbsent";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBadEdges: return "BadEdges";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBadFormat: return "BadFormat";
  }
  return "Unknown";
}

}  // namespace nevo
