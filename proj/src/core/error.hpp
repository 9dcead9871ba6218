// SPDX-License-Identifier: Apache-2.0
// Typed error codes carried by every exception the library throws.

#pragma once

#include <stdexcept>
#include <string>

namespace umwd {

enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    singular_retraction,
    invalid_state,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace umwd
