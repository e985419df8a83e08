#ifndef RFP_ERROR_HPP
#define RFP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rfp {

enum class ErrorCode {
  InvalidArgument,
  NoTessellation,
  SingularDistance,
  BoundNotValid,
  BetaOutOfRange,
  UnsupportedParameterChange,
  UnknownScenario,
  SyntaxError,
  SchemaError,
  ValidationError,
  RangeError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `path()` names the offending field
/// (e.g. "deployment1.d_max_m") when the error comes from a document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace rfp

#endif  // RFP_ERROR_HPP
