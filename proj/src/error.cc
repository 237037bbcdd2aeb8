// error.cc
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
//
// Copyright 2026 The smoothlm Authors.

#include "smoothlm/error.hpp"

namespace smoothlm {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kVocabMismatch: return "vocab-mismatch";
    case ErrorKind::kUndefinedEstimate: return "undefined-estimate";
    case ErrorKind::kCannotSmooth: return "cannot-smooth";
    case ErrorKind::kUndefinedDistribution: return "undefined-distribution";
    case ErrorKind::kInfiniteEntropy: return "infinite-entropy";
    case ErrorKind::kNumericFailure: return "numeric-failure";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
    case ErrorKind::kFormat:
    case ErrorKind::kVocabMismatch:
      return 2;
    case ErrorKind::kUndefinedEstimate:
    case ErrorKind::kCannotSmooth:
    case ErrorKind::kUndefinedDistribution:
    case ErrorKind::kInfiniteEntropy:
    case ErrorKind::kNumericFailure:
      return 3;
    case ErrorKind::kIo:
      return 4;
  }
  return 1;
}

void Fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

}  // namespace smoothlm
