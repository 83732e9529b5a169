#pragma once

#include <cstddef>

#include "occam/bits.hpp"
#include "occam/problem.hpp"

namespace occam::analysis {

// Binary entropy in bits; 0 at both endpoints.
[[nodiscard]] double entropy(double theta);

// J(t, a) = w * H(t / w) with w = t + (1 - t)(1 - a); defined as 0 when w = 0.
[[nodiscard]] double j_function(double theta_bar, double alpha);

// The entropy inequality 0 <= a(1-t)log2(1/(1-t)) <= H(t) - J(t, a).
struct EntropyGap {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;

  [[nodiscard]] double gap() const noexcept { return upper - middle; }
};

[[nodiscard]] EntropyGap lemma1_gap(double theta, double alpha);

// Constants of the A* loss bounds. The zero profile isolates the bound's
// shape; the illustrative profile uses 300 for each machine constant.
struct BoundParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c = 0.0;

  static BoundParams zeros() { return {}; }
  static BoundParams illustrative() { return {300.0, 300.0, 300.0, 300.0}; }
  void validate() const;
};

//   (2 KM(f;X) + KM(X) + c2 + c3) / (n (1 - theta - c1/n) log2(1 / (1 - theta + c1/n)))
// Throws degenerate_denominator when the denominator is not positive.
[[nodiscard]] double theorem2_bound(double km_f, double km_x, double n, double theta, const BoundParams& params);

//   (2 KM(f;X) + 2 [log2 |X| + log2 log2 |X|] + c) / (same denominator)
[[nodiscard]] double theorem3_bound(double km_f, double n, double size_x, double theta, const BoundParams& params);

// 2 KM(f;X) / (n theta): the small-theta simplification. The exact
// denominator's limit is n theta / ln 2, so this overstates the base-2
// formula by a factor 1 / ln 2 as theta -> 0.
[[nodiscard]] double small_theta_bound(double km_f, double n, double theta);

// psi_i = 1 iff position i is a test position on which the completion is right.
[[nodiscard]] BitString compute_psi(const BitString& labels, const BitString& completion, const core::Mask& mask);

// The four counting identities behind the A* loss bound, checked in exact
// rational arithmetic with alpha = test error rate of the completion and
// theta_bar = #1(mask)/n.
struct PsiCheck {
  bool ones = false;                  // #1(psi) = (1 - alpha)(1 - theta_bar) n
  bool zeros = false;                 // #0(psi) = (1 - (1 - alpha)(1 - theta_bar)) n
  bool disagreement_is_zero = false;  // y_i != y~_i  =>  psi_i = 0
  bool xor_count = false;             // #1(y xor y~) = alpha (1 - theta_bar) n

  [[nodiscard]] bool all() const noexcept { return ones && zeros && disagreement_is_zero && xor_count; }
};

[[nodiscard]] PsiCheck psi_counts_check(const BitString& labels, const BitString& completion, const core::Mask& mask);

}  // namespace occam::analysis
