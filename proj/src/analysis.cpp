#include "occam/analysis.hpp"

#include <cmath>

#include <gmpxx.h>

#include "occam/error.hpp"

namespace occam::analysis {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw error(errc::domain_error, std::string(name) + " must lie in [0,1]");
}

double bound_denominator(double n, double theta, double c1) {
  if (!(n >= 1.0)) throw error(errc::domain_error, "n must be at least 1");
  if (!(theta > 0.0 && theta < 1.0)) throw error(errc::domain_error, "theta must lie in (0,1)");
  const double shrink = 1.0 - theta - c1 / n;
  const double base = 1.0 - theta + c1 / n;
  const double denom = n * shrink * std::log2(1.0 / base);
  if (!(shrink > 0.0) || !(base < 1.0) || !(denom > 0.0) || !std::isfinite(denom)) {
    throw error(errc::degenerate_denominator, "bound denominator is not positive for these constants");
  }
  return denom;
}

}  // namespace

double entropy(double theta) {
  require_unit(theta, "theta");
  if (theta == 0.0 || theta == 1.0) return 0.0;
  return -(theta * std::log2(theta) + (1.0 - theta) * std::log2(1.0 - theta));
}

double j_function(double theta_bar, double alpha) {
  require_unit(theta_bar, "theta_bar");
  require_unit(alpha, "alpha");
  const double w = theta_bar + (1.0 - theta_bar) * (1.0 - alpha);
  if (w == 0.0) return 0.0;
  return w * entropy(std::min(1.0, theta_bar / w));
}

EntropyGap lemma1_gap(double theta, double alpha) {
  require_unit(theta, "theta");
  require_unit(alpha, "alpha");
  EntropyGap g;
  // At theta = 1 the factor (1 - theta) vanishes faster than the log grows.
  g.middle = theta >= 1.0 ? 0.0 : alpha * (1.0 - theta) * std::log2(1.0 / (1.0 - theta));
  g.upper = entropy(theta) - j_function(theta, alpha);
  return g;
}

void BoundParams::validate() const {
  for (double v : {c1, c2, c3, c}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw error(errc::domain_error, "bound constants must be finite and >= 0");
  }
}

double theorem2_bound(double km_f, double km_x, double n, double theta, const BoundParams& params) {
  params.validate();
  if (!(km_f >= 0.0) || !(km_x >= 0.0)) throw error(errc::domain_error, "complexities must be >= 0");
  const double denom = bound_denominator(n, theta, params.c1);
  return (2.0 * km_f + km_x + params.c2 + params.c3) / denom;
}

double theorem3_bound(double km_f, double n, double size_x, double theta, const BoundParams& params) {
  params.validate();
  if (!(km_f >= 0.0)) throw error(errc::domain_error, "complexity must be >= 0");
  if (!(size_x >= 2.0)) throw error(errc::domain_error, "|X| must be at least 2");
  const double denom = bound_denominator(n, theta, params.c1);
  const double lx = std::log2(size_x);
  return (2.0 * km_f + 2.0 * (lx + std::log2(lx)) + params.c) / denom;
}

double small_theta_bound(double km_f, double n, double theta) {
  if (!(theta > 0.0) || !(n >= 1.0)) throw error(errc::domain_error, "need theta > 0 and n >= 1");
  return 2.0 * km_f / (n * theta);
}

BitString compute_psi(const BitString& labels, const BitString& completion, const core::Mask& mask) {
  if (labels.size() != completion.size() || labels.size() != mask.size()) {
    throw error(errc::length_mismatch, "labels, completion and mask must have equal lengths");
  }
  BitString psi;
  for (std::size_t i = 0; i < labels.size(); ++i) psi.push_back(!mask.is_train(i) && labels[i] == completion[i]);
  return psi;
}

PsiCheck psi_counts_check(const BitString& labels, const BitString& completion, const core::Mask& mask) {
  const BitString psi = compute_psi(labels, completion, mask);
  const std::size_t n = labels.size();
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");

  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask.is_train(i) && labels[i] != completion[i]) ++wrong;
  }
  const mpq_class alpha(static_cast<unsigned long>(wrong), static_cast<unsigned long>(mask.zeros()));
  const mpq_class theta_bar(static_cast<unsigned long>(mask.ones()), static_cast<unsigned long>(n));
  const mpq_class nn(static_cast<unsigned long>(n));
  const mpq_class right_share = (1 - alpha) * (1 - theta_bar);

  PsiCheck check;
  check.ones = mpq_class(static_cast<unsigned long>(psi.count_ones())) == right_share * nn;
  check.zeros = mpq_class(static_cast<unsigned long>(psi.count_zeros())) == (1 - right_share) * nn;
  check.disagreement_is_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != completion[i] && psi[i] != 0) check.disagreement_is_zero = false;
  }
  check.xor_count =
      mpq_class(static_cast<unsigned long>((labels ^ completion).count_ones())) == alpha * (1 - theta_bar) * nn;
  return check;
}

}  // namespace occam::analysis
