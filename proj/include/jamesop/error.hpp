#ifndef JAMESOP_ERROR_HPP_
#define JAMESOP_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jamesop {

// Failure categories. The numeric values are shared with the C API status
// codes. The CLI exits with the code plus one, capped at 4.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kCapExceeded = 2,
  kPipelineFailure = 3,
  kNotConverged = 4,
  kInternal = 5,
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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInvalidArgument, what);
}

// Hard limits. Inputs beyond these are rejected with kCapExceeded.
struct Limits {
  static constexpr std::size_t kMaxCoefficients = 1u << 15;
  static constexpr std::size_t kMaxInnerDim = 64;
  static constexpr std::size_t kDefaultOracleCap = 14;
  static constexpr std::size_t kMaxOracleCap = 20;
  static constexpr int kDefaultWalshCap = 10;
  static constexpr int kMaxWalshCap = 12;
};

}  // namespace jamesop

#endif  // JAMESOP_ERROR_HPP_
