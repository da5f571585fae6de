#pragma once

#include <stdexcept>
#include <string>

namespace hrix {

// Failure categories used across the toolkit. Grouped by the exit code the
// CLI maps them to: configuration (1), data (2), numeric (3).
enum class Errc {
  // configuration
  config_error,
  // data
  file_not_found,
  parse_error,
  gap_in_dates,
  duplicate_date,
  missing_value,
  too_short,
  not_enough_rows,
  schema_mismatch,
  date_misalignment,
  alignment_empty,
  segment_too_short,
  too_many_candidates,
  infeasible_trim,
  tau_out_of_range,
  // numeric
  non_positive_value,
  zero_variance,
  zero_denominator,
  collinear_regressors,
  rank_deficient,
  non_positive_definite,
  optimizer_diverged,
  non_stationary_params,
  convergence_failure,
};

const char* errc_name(Errc c);

// 1 = configuration, 2 = data, 3 = numeric
int errc_exit_code(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hrix
