#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circdet {

enum class errc {
  length_mismatch,
  zero_leading_coefficient,
  empty_spec,
  invalid_family_params,
  index_out_of_range,
  precision_too_low,
  order_too_small,
  degenerate_alpha1,
  degenerate_alpha,
  structure_violation,
  zero_ratio,
  no_closed_form,
  budget_exceeded,
  parse_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::length_mismatch: return "length-mismatch";
    case errc::zero_leading_coefficient: return "zero-leading-coefficient";
    case errc::empty_spec: return "empty-spec";
    case errc::invalid_family_params: return "invalid-family-params";
    case errc::index_out_of_range: return "index-out-of-range";
    case errc::precision_too_low: return "precision-too-low";
    case errc::order_too_small: return "order-too-small";
    case errc::degenerate_alpha1: return "degenerate-alpha1";
    case errc::degenerate_alpha: return "degenerate-alpha";
    case errc::structure_violation: return "structure-violation";
    case errc::zero_ratio: return "zero-ratio";
    case errc::no_closed_form: return "no-closed-form";
    case errc::budget_exceeded: return "budget-exceeded";
    case errc::parse_error: return "parse-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace circdet
