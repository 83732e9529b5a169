#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace occam {

enum class errc {
  empty_test_set,
  length_mismatch,
  invalid_theta,
  out_of_range,
  invalid_budget,
  no_program_found,
  exhaustive_too_large,
  too_large,
  empty_subset,
  domain_error,
  degenerate_denominator,
  invalid_problem,
  unsupported,
  parse_error,
  io_error,
};

std::string_view errc_name(errc code) noexcept;

// Single exception type; the code identifies which contract was violated.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what);

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace occam
