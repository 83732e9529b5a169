#pragma once

// Expected loss over whole problem families: the uniform (no free lunch)
// case, arbitrary priors over labellings, and the simplicity-prior
// construction that beats 1/2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "occam/bits.hpp"
#include "occam/classifier.hpp"
#include "occam/enumerator.hpp"
#include "occam/problem.hpp"

namespace occam::analysis {

inline constexpr std::uint64_t kMaxEnumeratedFunctions = 10'000'000;

// Weight of every binary labelling of n fixed features, indexed by the
// labelling's big-endian value (so index order is lexicographic).
class PriorTable {
 public:
  PriorTable(std::size_t n, std::vector<mpq_class> weights);

  static PriorTable uniform(std::size_t n);
  static PriorTable point_mass(std::size_t n, const BitString& f);
  // Mn of each label string, read from level n of the table.
  static PriorTable from_mn(const tinyref::MnTable& mn, std::size_t n);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] const mpq_class& weight(std::uint64_t labelling) const { return weights_[labelling]; }
  [[nodiscard]] const mpq_class& total() const noexcept { return total_; }

 private:
  std::size_t n_;
  std::vector<mpq_class> weights_;
  mpq_class total_;
};

// Average loss of `learner` over all |Y|^|X| labellings of the first |X|
// strings of a lexicographic feature grid. Exact.
[[nodiscard]] mpq_class nfl_expected_loss(const classify::Learner& learner, std::size_t size_x, unsigned size_y,
                                          const core::Mask& mask, unsigned workers = 1);

struct ExpectedLoss {
  mpq_class value;
  bool normalized = false;  // prior total was not 1 and the sum was divided by it
};

// sum_f P(f) L(f) over the binary labellings of `features`.
[[nodiscard]] ExpectedLoss expected_loss(const PriorTable& prior, const classify::Learner& learner,
                                         const core::Problem& features, const core::Mask& mask, unsigned workers = 1);

struct ConstantChoice {
  classify::BaselineKind choice = classify::BaselineKind::constant0;
  mpq_class weighted_loss0;  // sum_{f in N} P(f) L_{A0}(f)
  mpq_class weighted_loss1;
  mpq_class mass;            // sum_{f in N} P(f)

  [[nodiscard]] const mpq_class& chosen_loss() const {
    return choice == classify::BaselineKind::constant0 ? weighted_loss0 : weighted_loss1;
  }
};

// The constant algorithm with the smaller prior-weighted loss on the
// labellings selected by `subset` (ties -> constant0). Its weighted loss is
// at most half the subset's mass because L_{A0} = 1 - L_{A1}.
[[nodiscard]] ConstantChoice better_constant(const std::function<bool(const BitString&)>& subset,
                                             const PriorTable& prior, const core::Mask& mask);

enum class PriorKind { mn, uniform };

struct FreeLunchResult {
  mpq_class expected_loss;
  mpq_class margin;  // 1/2 - expected_loss
  ConstantChoice fallback_constant;  // the constant used when a training label is 0
  PriorTable prior;
  core::Mask mask;
  std::size_t fallback_nodes = 0;  // Mn nodes split evenly for lack of mass
};

// X = B^m in lexicographic order with the first 2^m - test_count features
// for training. The algorithm predicts 1 everywhere when every training
// label is 1 and otherwise uses the better constant for the remaining
// labellings. Requires m <= 4 and 1 <= test_count < 2^m.
[[nodiscard]] FreeLunchResult free_lunch_experiment(unsigned m, std::size_t test_count, tinyref::Budget budget,
                                                    PriorKind prior_kind = PriorKind::mn, unsigned workers = 1);

}  // namespace occam::analysis
