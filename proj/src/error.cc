// Copyright 2026 The GRUEN Metric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gruen/error.h"

namespace gruen {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kMissingComponent:
      return "missing_component";
    case ErrorCode::kMissingFile:
      return "missing_file";
    case ErrorCode::kIntegrity:
      return "integrity";
    case ErrorCode::kUnsupportedVersion:
      return "unsupported_version";
    case ErrorCode::kUnembeddable:
      return "unembeddable";
    case ErrorCode::kNotApplicable:
      return "not_applicable";
    case ErrorCode::kUndefinedCorrelation:
      return "undefined_correlation";
    case ErrorCode::kDuplicateId:
      return "duplicate_id";
    case ErrorCode::kInference:
      return "inference";
  }
  return "unknown";
}

}  // namespace gruen
