#include "tsosc/error.hpp"

namespace tsosc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::AtRightEndpoint: return "AtRightEndpoint";
    case Errc::AtLeftEndpoint: return "AtLeftEndpoint";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::BelowWindow: return "BelowWindow";
    case Errc::OutOfWindow: return "OutOfWindow";
    case Errc::WindowTooShort: return "WindowTooShort";
    case Errc::NotRegressive: return "NotRegressive";
    case Errc::NegativeOrder: return "NegativeOrder";
    case Errc::BadOrder: return "BadOrder";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::PatternNotFound: return "PatternNotFound";
    case Errc::TailVanishes: return "TailVanishes";
    case Errc::NotFoundInWindow: return "NotFoundInWindow";
    case Errc::AllLambdaNonRegressive: return "AllLambdaNonRegressive";
    case Errc::EmptyLambdaGrid: return "EmptyLambdaGrid";
    case Errc::BadGamma: return "BadGamma";
    case Errc::UnknownExample: return "UnknownExample";
    case Errc::HistoryGap: return "HistoryGap";
    case Errc::NonDiscreteScale: return "NonDiscreteScale";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {
std::string compose(Errc code, const std::string& where, const std::string& message,
                    std::optional<std::size_t> position) {
  std::string out = where + ": " + std::string(to_string(code));
  if (position) out += " at position " + std::to_string(*position);
  if (!message.empty()) out += ": " + message;
  return out;
}
}  // namespace

Error::Error(Errc code, std::string where, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(compose(code, where, message, position)),
      code_(code),
      where_(std::move(where)),
      detail_(message),
      position_(position) {}

void fail(Errc code, std::string where, const std::string& message) {
  throw Error(code, std::move(where), message);
}

}  // namespace tsosc
