#include "occam/nfl.hpp"

#include "occam/error.hpp"
#include "occam/parallel.hpp"

namespace occam::analysis {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > kMaxEnumeratedFunctions / std::max<std::uint64_t>(base, 1)) {
      throw error(errc::too_large, "more than " + std::to_string(kMaxEnumeratedFunctions) + " functions to enumerate");
    }
    out *= base;
  }
  return out;
}

// Labelling number `index` written in base `alphabet`, first position most
// significant.
std::vector<std::uint8_t> labelling(std::uint64_t index, std::size_t n, unsigned alphabet) {
  std::vector<std::uint8_t> labels(n);
  for (std::size_t i = n; i-- > 0;) {
    labels[i] = static_cast<std::uint8_t>(index % alphabet);
    index /= alphabet;
  }
  return labels;
}

std::vector<std::uint8_t> test_truth(const std::vector<std::uint8_t>& labels, const core::Split& split) {
  std::vector<std::uint8_t> truth;
  truth.reserve(split.test_indices.size());
  for (auto i : split.test_indices) truth.push_back(labels[i]);
  return truth;
}

constexpr std::uint64_t kChunk = 4096;

}  // namespace

PriorTable::PriorTable(std::size_t n, std::vector<mpq_class> weights) : n_(n), weights_(std::move(weights)) {
  if (n > 23 || weights_.size() != (std::size_t{1} << n)) {
    throw error(errc::length_mismatch, "prior must weight all 2^n labellings (n <= 23)");
  }
  total_ = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw error(errc::domain_error, "prior weights must be non-negative");
    total_ += w;
  }
  if (total_ > 1) throw error(errc::domain_error, "prior total exceeds 1");
}

PriorTable PriorTable::uniform(std::size_t n) {
  if (n > 23) throw error(errc::too_large, "uniform prior over more than 2^23 labellings");
  const mpq_class w(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(n));
  return PriorTable(n, std::vector<mpq_class>(std::size_t{1} << n, w));
}

PriorTable PriorTable::point_mass(std::size_t n, const BitString& f) {
  if (f.size() != n) throw error(errc::length_mismatch, "labelling length differs from n");
  std::vector<mpq_class> weights(std::size_t{1} << n, mpq_class(0));
  weights[f.empty() ? 0 : f.value()] = 1;
  return PriorTable(n, std::move(weights));
}

PriorTable PriorTable::from_mn(const tinyref::MnTable& mn, std::size_t n) {
  if (n > mn.depth()) throw error(errc::out_of_range, "Mn table is shallower than the labelling length");
  std::vector<mpq_class> weights(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < weights.size(); ++v) weights[v] = mn.mn(n, v);
  return PriorTable(n, std::move(weights));
}

mpq_class nfl_expected_loss(const classify::Learner& learner, std::size_t size_x, unsigned size_y,
                            const core::Mask& mask, unsigned workers) {
  if (size_y < 1 || size_y > 255) throw error(errc::out_of_range, "|Y| must be in [1, 255]");
  if (mask.size() != size_x) throw error(errc::length_mismatch, "mask length differs from |X|");
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");
  const std::uint64_t functions = checked_power(size_y, size_x);
  const core::Problem features = core::feature_grid(size_x);
  const core::Split split = core::split_from_mask(mask);

  // Per-chunk misclassification counts, merged in chunk order.
  const std::size_t chunks = static_cast<std::size_t>((functions + kChunk - 1) / kChunk);
  std::vector<std::uint64_t> wrong(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t end = std::min<std::uint64_t>(functions, (c + 1) * kChunk);
    for (std::uint64_t f = c * kChunk; f < end; ++f) {
      const auto labels = labelling(f, size_x, size_y);
      const core::TrainingView view(features, mask, labels, size_y);
      wrong[c] += core::symbol_loss(learner(view), test_truth(labels, split)).numerator;
    }
  });
  mpz_class total = 0;
  for (auto w : wrong) total += mpz_class(static_cast<unsigned long>(w));
  mpq_class loss(total, mpz_class(static_cast<unsigned long>(functions)) * static_cast<unsigned long>(mask.zeros()));
  loss.canonicalize();
  return loss;
}

ExpectedLoss expected_loss(const PriorTable& prior, const classify::Learner& learner, const core::Problem& features,
                           const core::Mask& mask, unsigned workers) {
  const std::size_t n = features.size();
  if (prior.n() != n) throw error(errc::length_mismatch, "prior does not cover the feature set");
  if (mask.size() != n) throw error(errc::length_mismatch, "mask length differs from problem size");
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");
  checked_power(2, n);
  const core::Split split = core::split_from_mask(mask);

  const std::uint64_t functions = prior.size();
  const std::size_t chunks = static_cast<std::size_t>((functions + kChunk - 1) / kChunk);
  std::vector<mpq_class> partial(chunks, mpq_class(0));
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t end = std::min<std::uint64_t>(functions, (c + 1) * kChunk);
    for (std::uint64_t f = c * kChunk; f < end; ++f) {
      const mpq_class& w = prior.weight(f);
      if (w == 0) continue;
      const auto labels = labelling(f, n, 2);
      const core::TrainingView view(features, mask, labels, 2);
      const auto l = core::symbol_loss(learner(view), test_truth(labels, split));
      partial[c] += w * mpq_class(static_cast<unsigned long>(l.numerator), static_cast<unsigned long>(l.denominator));
    }
  });
  ExpectedLoss out;
  out.value = 0;
  for (const auto& p : partial) out.value += p;
  if (prior.total() != 1) {
    if (prior.total() == 0) throw error(errc::empty_subset, "prior has no mass");
    out.value /= prior.total();
    out.normalized = true;
  }
  return out;
}

ConstantChoice better_constant(const std::function<bool(const BitString&)>& subset, const PriorTable& prior,
                               const core::Mask& mask) {
  if (mask.size() != prior.n()) throw error(errc::length_mismatch, "mask length differs from prior size");
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");
  const core::Split split = core::split_from_mask(mask);
  const mpz_class tests(static_cast<unsigned long>(split.test_indices.size()));
  ConstantChoice out;
  out.weighted_loss0 = 0;
  out.weighted_loss1 = 0;
  out.mass = 0;
  bool any = false;
  for (std::uint64_t f = 0; f < prior.size(); ++f) {
    const BitString labels = BitString::from_value(f, prior.n());
    if (!subset(labels)) continue;
    any = true;
    const mpq_class& w = prior.weight(f);
    std::size_t ones = 0;
    for (auto i : split.test_indices) ones += labels[i];
    // constant0 errs on test ones, constant1 on test zeros.
    out.weighted_loss0 += w * mpq_class(mpz_class(static_cast<unsigned long>(ones)), tests);
    out.weighted_loss1 += w * mpq_class(tests - static_cast<unsigned long>(ones), tests);
    out.mass += w;
  }
  if (!any || out.mass == 0) throw error(errc::empty_subset, "subset carries no prior mass");
  out.choice = out.weighted_loss1 < out.weighted_loss0 ? classify::BaselineKind::constant1
                                                       : classify::BaselineKind::constant0;
  return out;
}

FreeLunchResult free_lunch_experiment(unsigned m, std::size_t test_count, tinyref::Budget budget, PriorKind prior_kind,
                                      unsigned workers) {
  if (m < 1 || m > 4) throw error(errc::too_large, "free-lunch enumeration needs 1 <= m <= 4");
  const std::size_t n = std::size_t{1} << m;
  if (test_count < 1 || test_count >= n) throw error(errc::out_of_range, "need 1 <= test count < 2^m");
  budget.validate();

  const core::Problem features = core::lexicographic_problem(m, [](const BitString&) { return false; });
  const core::Mask mask = core::prefix_mask(n, n - test_count);

  std::size_t fallback_nodes = 0;
  PriorTable prior = [&] {
    if (prior_kind == PriorKind::uniform) return PriorTable::uniform(n);
    const auto mn = tinyref::build_mn(static_cast<unsigned>(n), BitString{}, budget, workers);
    fallback_nodes = mn.fallback_count();
    return PriorTable::from_mn(mn, n);
  }();

  const core::Split split = core::split_from_mask(mask);
  const auto all_train_ones = [&](const BitString& f) {
    for (auto i : split.train_indices) {
      if (f[i] == 0) return false;
    }
    return true;
  };
  const ConstantChoice fallback = better_constant([&](const BitString& f) { return !all_train_ones(f); }, prior, mask);
  const std::uint8_t fallback_symbol = fallback.choice == classify::BaselineKind::constant1 ? 1 : 0;

  const classify::Learner learner = [fallback_symbol](const core::TrainingView& view) {
    bool ones = true;
    for (auto y : view.train_labels()) ones = ones && y == 1;
    return std::vector<std::uint8_t>(view.split().test_indices.size(), ones ? 1 : fallback_symbol);
  };
  const ExpectedLoss loss = expected_loss(prior, learner, features, mask, workers);

  FreeLunchResult out{loss.value, mpq_class(1, 2) - loss.value, fallback, std::move(prior), mask, fallback_nodes};
  return out;
}

}  // namespace occam::analysis
