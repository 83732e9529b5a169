#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "occam/bits.hpp"
#include "occam/enumerator.hpp"
#include "occam/problem.hpp"

namespace occam::complexity {

// Ideal code length in bits.
struct CodeLength {
  double bits = 0.0;

  friend auto operator<=>(const CodeLength&, const CodeLength&) = default;
};

enum class EstimatorKind { enumerator, kt };

// Written as `kt:r=2` or `enum:L=18,S=1000`.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kt;
  unsigned order = 2;
  tinyref::Budget budget{};

  static EstimatorSpec kt(unsigned order) { return {EstimatorKind::kt, order, {}}; }
  static EstimatorSpec enumerator(unsigned max_len, std::uint64_t max_steps) {
    return {EstimatorKind::enumerator, 0, {max_len, max_steps}};
  }
  static EstimatorSpec parse(std::string_view text);

  void validate() const;
  [[nodiscard]] std::string str() const;
};

// Code length of y with x available as side information. The enumerator
// puts x on the side tape; kt warms the model on x and charges only y.
[[nodiscard]] CodeLength conditional_complexity(const BitString& y, const BitString& x, const EstimatorSpec& est);

// Complexity of the labelling `labels` of the problem's features: the code
// length of the label string given the feature string.
[[nodiscard]] CodeLength function_complexity(const core::Problem& problem, const BitString& labels,
                                             const EstimatorSpec& est);

}  // namespace occam::complexity
