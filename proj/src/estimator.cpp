#include "occam/estimator.hpp"

#include <charconv>
#include <map>

#include "occam/error.hpp"
#include "occam/kt.hpp"

namespace occam::complexity {

namespace {

std::uint64_t parse_number(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw error(errc::parse_error, "bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

// "a=1,b=2" -> {a:1, b:2}
std::map<std::string, std::uint64_t, std::less<>> parse_params(std::string_view text) {
  std::map<std::string, std::uint64_t, std::less<>> params;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw error(errc::parse_error, "expected key=value, got '" + std::string(item) + "'");
    const auto key = item.substr(0, eq);
    params[std::string(key)] = parse_number(key, item.substr(eq + 1));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return params;
}

}  // namespace

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto params = parse_params(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
  EstimatorSpec spec;
  if (kind == "kt") {
    spec.kind = EstimatorKind::kt;
    for (const auto& [key, value] : params) {
      if (key != "r") throw error(errc::parse_error, "unknown kt parameter '" + key + "'");
      spec.order = static_cast<unsigned>(value);
    }
  } else if (kind == "enum") {
    spec.kind = EstimatorKind::enumerator;
    spec.order = 0;
    for (const auto& [key, value] : params) {
      if (key == "L") {
        spec.budget.max_len = static_cast<unsigned>(value);
      } else if (key == "S") {
        spec.budget.max_steps = value;
      } else {
        throw error(errc::parse_error, "unknown enum parameter '" + key + "'");
      }
    }
  } else {
    throw error(errc::parse_error, "unknown estimator '" + std::string(kind) + "'");
  }
  spec.validate();
  return spec;
}

void EstimatorSpec::validate() const {
  if (kind == EstimatorKind::kt) {
    if (order > kMaxKtOrder) throw error(errc::out_of_range, "KT order must be at most " + std::to_string(kMaxKtOrder));
  } else {
    budget.validate();
  }
}

std::string EstimatorSpec::str() const {
  if (kind == EstimatorKind::kt) return "kt:r=" + std::to_string(order);
  return "enum:L=" + std::to_string(budget.max_len) + ",S=" + std::to_string(budget.max_steps);
}

CodeLength conditional_complexity(const BitString& y, const BitString& x, const EstimatorSpec& est) {
  est.validate();
  if (est.kind == EstimatorKind::kt) return {kt_code_length(y, x, est.order)};
  return {tinyref::approx_KM(y, x, est.budget)};
}

CodeLength function_complexity(const core::Problem& problem, const BitString& labels, const EstimatorSpec& est) {
  if (labels.size() != problem.size()) throw error(errc::length_mismatch, "labelling length differs from problem size");
  return conditional_complexity(labels, core::feature_string(problem), est);
}

}  // namespace occam::complexity
