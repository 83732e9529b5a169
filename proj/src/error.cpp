#include "occam/error.hpp"

namespace occam {

std::string_view errc_name(errc code) noexcept {
  switch (code) {
    case errc::empty_test_set: return "EmptyTestSet";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::invalid_theta: return "InvalidTheta";
    case errc::out_of_range: return "OutOfRange";
    case errc::invalid_budget: return "InvalidBudget";
    case errc::no_program_found: return "NoProgramFound";
    case errc::exhaustive_too_large: return "ExhaustiveTooLarge";
    case errc::too_large: return "TooLarge";
    case errc::empty_subset: return "EmptySubset";
    case errc::domain_error: return "DomainError";
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::invalid_problem: return "InvalidProblem";
    case errc::unsupported: return "Unsupported";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

error::error(errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace occam
