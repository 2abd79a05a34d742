#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsosc {

enum class Errc {
  InvalidArgument,
  AtRightEndpoint,
  AtLeftEndpoint,
  EmptyIntersection,
  BelowWindow,
  OutOfWindow,
  WindowTooShort,
  NotRegressive,
  NegativeOrder,
  BadOrder,
  HypothesisViolated,
  PatternNotFound,
  TailVanishes,
  NotFoundInWindow,
  AllLambdaNonRegressive,
  EmptyLambdaGrid,
  BadGamma,
  UnknownExample,
  HistoryGap,
  NonDiscreteScale,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Every failure in the library is reported through this type. `where` names
// the module and operation ("calculus::delta_integral").
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string where, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  Errc code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }
  // Character offset for ParseError.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::string where_;
  std::string detail_;
  std::optional<std::size_t> position_;
};

[[noreturn]] void fail(Errc code, std::string where, const std::string& message);

}  // namespace tsosc
