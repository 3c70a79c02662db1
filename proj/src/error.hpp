// Copyright 2026 The Subseg Authors
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

#ifndef SUBSEG_ERROR_HPP
#define SUBSEG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace subseg {

// Mirrors the subseg_status values of the public C API.
enum class ErrorCode {
  kIo = 1,
  kUtf8 = 2,
  kInvalidArgument = 3,
  kParse = 4,
  kAlignment = 5,
  kDegenerate = 6,
  kUnsupported = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUtf8: return "utf8";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kAlignment: return "alignment";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

}  // namespace subseg

#endif  // SUBSEG_ERROR_HPP
