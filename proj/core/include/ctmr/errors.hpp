#pragma once

#include <stdexcept>
#include <string>

namespace ctmr {

// Failure categories raised by the library. The CLI maps these onto process
// exit codes; library callers can switch on code() where recovery matters.
enum class errc {
  invalid_argument,
  not_square,
  negative_off_diagonal,
  row_sum_violation,
  truncation_failure,
  reducible,
  solver_failure,
  empty_working_set,
  empty_series,
  all_zero_counts,
  logarithm_failure,
  non_convergent,
  no_convergence,
  degenerate_sample,
  empty_grid,
  parse_error,
  io_error,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument:       return "invalid_argument";
    case errc::not_square:             return "not_square";
    case errc::negative_off_diagonal:  return "negative_off_diagonal";
    case errc::row_sum_violation:      return "row_sum_violation";
    case errc::truncation_failure:     return "truncation_failure";
    case errc::reducible:              return "reducible";
    case errc::solver_failure:         return "solver_failure";
    case errc::empty_working_set:      return "empty_working_set";
    case errc::empty_series:           return "empty_series";
    case errc::all_zero_counts:        return "all_zero_counts";
    case errc::logarithm_failure:      return "logarithm_failure";
    case errc::non_convergent:         return "non_convergent";
    case errc::no_convergence:         return "no_convergence";
    case errc::degenerate_sample:      return "degenerate_sample";
    case errc::empty_grid:             return "empty_grid";
    case errc::parse_error:            return "parse_error";
    case errc::io_error:               return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ctmr
