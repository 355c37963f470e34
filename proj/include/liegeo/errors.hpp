#pragma once

#include <stdexcept>
#include <string>

namespace liegeo {

enum class ErrorCode {
  MALFORMED_INPUT,
  NOT_ADAPTED,
  SKEW_VIOLATION,
  DEGENERATE_PLANE,
  BAD_CASE_ARGS,
  ZERO_VECTOR,
  DIMENSION_MISMATCH,
  DRIFT_NORM,
  NOT_BERWALD,
  CASE_UNSUPPORTED,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace liegeo
