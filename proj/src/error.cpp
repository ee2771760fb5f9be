#include "codesign/error.hpp"

namespace codesign {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LENGTH_MISMATCH: return "LENGTH_MISMATCH";
    case ErrorCode::DIM_NOT_MULTIPLE_OF_128: return "DIM_NOT_MULTIPLE_OF_128";
    case ErrorCode::EMPTY_BLOCK: return "EMPTY_BLOCK";
    case ErrorCode::UNSUPPORTED_ATTENTION_KIND: return "UNSUPPORTED_ATTENTION_KIND";
    case ErrorCode::SCORE_LENGTH_MISMATCH: return "SCORE_LENGTH_MISMATCH";
    case ErrorCode::ODD_RADIX: return "ODD_RADIX";
    case ErrorCode::ZERO_ENDPOINTS: return "ZERO_ENDPOINTS";
    case ErrorCode::RELATION_NOT_APPLICABLE: return "RELATION_NOT_APPLICABLE";
    case ErrorCode::CONFIG_PARSE: return "CONFIG_PARSE";
    case ErrorCode::CONFIG_INVALID: return "CONFIG_INVALID";
    case ErrorCode::UNKNOWN_PRESET: return "UNKNOWN_PRESET";
    case ErrorCode::INVALID_ARGUMENT: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN_ERROR";
}

}  // namespace codesign
