#pragma once

#include <stdexcept>
#include <string>

namespace corrnet {

// Everything that can go wrong with user input or data. Internal logic bugs
// use plain exceptions/asserts instead.
enum class errc {
  malformed_input,
  non_positive_price,
  duplicate_date,
  empty_series,
  series_too_short,
  unknown_symbol,
  duplicate_symbol,
  kind_mismatch,
  empty_panel,
  length_mismatch,
  too_few_samples,
  zero_variance,
  insufficient_overlap,
  out_of_range,
  too_few_points,
  degenerate_neighborhood,
  all_undefined,
  matrix_too_small,
  symbol_set_mismatch,
  singular_design,
  io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace corrnet
