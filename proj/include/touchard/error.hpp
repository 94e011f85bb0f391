#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace touchard {

enum class errc {
  order_too_large,
  invalid_index,
  invalid_parameter,
  invalid_order,
  negative_coefficient,
  out_of_disk,
  parse_error,
  no_convergence,
  no_threshold,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::order_too_large: return "OrderTooLarge";
    case errc::invalid_index: return "InvalidIndex";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::invalid_order: return "InvalidOrder";
    case errc::negative_coefficient: return "NegativeCoefficient";
    case errc::out_of_disk: return "OutOfDisk";
    case errc::parse_error: return "ParseError";
    case errc::no_convergence: return "NoConvergence";
    case errc::no_threshold: return "NoThreshold";
  }
  return "Unknown";
}

/// Numeric failures (as opposed to bad input) map to CLI exit code 3.
constexpr bool is_numeric_failure(errc code) noexcept {
  return code == errc::no_convergence || code == errc::no_threshold;
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace touchard
