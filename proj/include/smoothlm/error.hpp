// error.hpp
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
//
// \file
// Error type shared by every module. Each error carries a kind so the CLI can
// map it onto a process exit code.

#ifndef SMOOTHLM_ERROR_HPP_
#define SMOOTHLM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothlm {

enum class ErrorKind {
  kInvalidParameter,
  kFormat,
  kVocabMismatch,
  kUndefinedEstimate,
  kCannotSmooth,
  kUndefinedDistribution,
  kInfiniteEntropy,
  kNumericFailure,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// 2 = invalid input, 3 = numeric failure, 4 = I/O.
int ExitCodeFor(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &message);

}  // namespace smoothlm

#endif  // SMOOTHLM_ERROR_HPP_
