#pragma once

#include <stdexcept>
#include <string>

namespace codesign {

enum class ErrorCode {
  LENGTH_MISMATCH,
  DIM_NOT_MULTIPLE_OF_128,
  EMPTY_BLOCK,
  UNSUPPORTED_ATTENTION_KIND,
  SCORE_LENGTH_MISMATCH,
  ODD_RADIX,
  ZERO_ENDPOINTS,
  RELATION_NOT_APPLICABLE,
  CONFIG_PARSE,
  CONFIG_INVALID,
  UNKNOWN_PRESET,
  INVALID_ARGUMENT,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace codesign
