// Copyright 2026 The whens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace whens {

// Numbering matches whens_status in whens.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kDomain = 2,
  kParse = 3,
  kIo = 4,
  kConvergence = 5,
  kRankDeficient = 6,
  kRejectionCap = 7,
  kInsufficientSamples = 8,
  kDegenerateGeometry = 9,
  kNumerical = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace whens
