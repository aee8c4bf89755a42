#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdabridge {

enum class ErrorCode {
  index_out_of_range,
  arity_mismatch,
  dimension_cap_exceeded,
  star_clash,
  not_enabled,
  explosion_limit,
  not_linear,
  not_partial_order,
  not_one_deterministic,
  square_incomplete,
  out_of_reachable_fragment,
  cap_exceeded,
  size_limit,
  invalid_model,
  invalid_morphism,
  parse_error,
  unknown_kind,
  no_such_functor,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::dimension_cap_exceeded: return "DimensionCapExceeded";
    case ErrorCode::star_clash: return "StarClash";
    case ErrorCode::not_enabled: return "NotEnabled";
    case ErrorCode::explosion_limit: return "ExplosionLimit";
    case ErrorCode::not_linear: return "NotLinear";
    case ErrorCode::not_partial_order: return "NotPartialOrder";
    case ErrorCode::not_one_deterministic: return "NotOneDeterministic";
    case ErrorCode::square_incomplete: return "SquareIncomplete";
    case ErrorCode::out_of_reachable_fragment: return "OutOfReachableFragment";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::size_limit: return "SizeLimit";
    case ErrorCode::invalid_model: return "InvalidModel";
    case ErrorCode::invalid_morphism: return "InvalidMorphism";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_kind: return "UnknownKind";
    case ErrorCode::no_such_functor: return "NoSuchFunctor";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the CLI
/// maps them onto distinct exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hdabridge
