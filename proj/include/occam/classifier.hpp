#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "occam/bits.hpp"
#include "occam/estimator.hpp"
#include "occam/problem.hpp"

namespace occam::classify {

enum class StrategyKind { exhaustive, greedy, beam };

// Written as `exhaustive`, `greedy` or `beam:w=8`.
struct SearchStrategy {
  StrategyKind kind = StrategyKind::exhaustive;
  unsigned width = 8;               // beam only
  unsigned exhaustive_limit = 20;   // max free bits for exhaustive search

  static SearchStrategy parse(std::string_view text);
  [[nodiscard]] std::string str() const;
};

// A full labelling that agrees with every training label, with its cost.
struct Completion {
  BitString labels;
  complexity::CodeLength cost;
};

struct AstarResult {
  BitString predictions;  // labels at test positions, ascending
  Completion completion;
};

// Minimum-complexity consistent labelling. Exhaustive search returns the
// cheapest of all 2^t completions (t = number of test positions), ties going
// to the lexicographically smallest labelling. Greedy fills test positions
// left to right with the cheaper next bit (ties -> 0). Beam keeps the
// `width` cheapest partial labellings by (cost, labels).
//
// Greedy and beam need sequential partial costs and so support only the kt
// estimator.
[[nodiscard]] AstarResult astar(const core::TrainingView& view, const complexity::EstimatorSpec& est,
                                const SearchStrategy& strategy);

enum class BaselineKind { constant0, constant1, best_constant_on_train, random };

// Predictions on the test positions of `view`, over its alphabet.
// best_constant_on_train takes the most frequent training label (ties to
// the smaller symbol); random draws each prediction from SplitMix64(seed).
[[nodiscard]] std::vector<std::uint8_t> baseline(BaselineKind kind, const core::TrainingView& view,
                                                 std::uint64_t seed);

enum class AlgorithmKind { astar, constant0, constant1, best_constant_on_train, random };

// A runnable algorithm with its configuration.
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::astar;
  complexity::EstimatorSpec estimator = complexity::EstimatorSpec::kt(2);
  SearchStrategy strategy{};
  std::uint64_t seed = 0;

  static AlgorithmSpec of(BaselineKind kind, std::uint64_t seed = 0);
  static AlgorithmSpec astar_with(complexity::EstimatorSpec est, SearchStrategy strategy) {
    return {AlgorithmKind::astar, est, strategy, 0};
  }
  // e.g. "astar[kt:r=2,greedy]", "constant0", "random[seed=7]"
  [[nodiscard]] std::string name() const;
};

// Any classification algorithm: training view in, test predictions out.
using Learner = std::function<std::vector<std::uint8_t>(const core::TrainingView&)>;

[[nodiscard]] Learner make_learner(const AlgorithmSpec& spec);

[[nodiscard]] BaselineKind parse_baseline(std::string_view text);
[[nodiscard]] std::string_view baseline_name(BaselineKind kind);

}  // namespace occam::classify
