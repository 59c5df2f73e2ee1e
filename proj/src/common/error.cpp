// Copyright 2026 The Arbor Authors.
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

#include "arbor/error.hpp"

namespace arbor {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kNotSubgroup: return "not-subgroup";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kWindowEscape: return "window-escape";
    case ErrorCode::kHypothesis: return "hypothesis";
    case ErrorCode::kVerification: return "verification";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace arbor
