#include <doctest.h>

#include <limits>

#include "occam/classifier.hpp"
#include "occam/error.hpp"
#include "occam/estimator.hpp"
#include "occam/problem.hpp"
#include "occam/rng.hpp"

using namespace occam;
using namespace occam::classify;
using complexity::EstimatorSpec;

namespace {

// Tries every completion; ties go to the lexicographically smallest.
Completion brute_force(const core::Problem& problem, const core::Mask& mask, const EstimatorSpec& est) {
  const auto split = core::split_from_mask(mask);
  const std::size_t t = split.test_indices.size();
  Completion best{BitString{}, {std::numeric_limits<double>::infinity()}};
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << t); ++v) {
    BitString labels = problem.labels();
    const auto fill = BitString::from_value(v, t);
    for (std::size_t j = 0; j < t; ++j) labels.set(split.test_indices[j], fill[j] != 0);
    const auto cost = complexity::function_complexity(problem, labels, est);
    if (cost.bits < best.cost.bits) best = {labels, cost};
  }
  return best;
}

BitString predictions_of(const AstarResult& r) { return r.predictions; }

core::Problem random_problem(SplitMix64& rng, std::size_t k, std::size_t n) {
  std::vector<BitString> features;
  std::vector<std::uint64_t> pool(std::size_t{1} << k);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.next_symbol(pool.size() - i);
    std::swap(pool[i], pool[j]);
    features.push_back(BitString::from_value(pool[i], k));
  }
  BitString labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(rng.next() & 1);
  return core::Problem(k, std::move(features), std::move(labels));
}

}  // namespace

TEST_CASE("strategy specs") {
  CHECK(SearchStrategy::parse("exhaustive").kind == StrategyKind::exhaustive);
  CHECK(SearchStrategy::parse("greedy").str() == "greedy");
  CHECK(SearchStrategy::parse("beam:w=16").width == 16);
  CHECK(SearchStrategy::parse("beam:w=16").str() == "beam:w=16");
  CHECK_THROWS_AS((void)SearchStrategy::parse("beam:w=0"), error);
  CHECK_THROWS_AS((void)SearchStrategy::parse("astar"), error);
  CHECK(AlgorithmSpec::astar_with(EstimatorSpec::kt(2), SearchStrategy::parse("greedy")).name() ==
        "astar[kt:r=2,greedy]");
  CHECK(AlgorithmSpec::of(BaselineKind::random, 7).name() == "random[seed=7]");
  CHECK(parse_baseline("best_constant_on_train") == BaselineKind::best_constant_on_train);
  CHECK_THROWS_AS((void)parse_baseline("oracle"), error);
}

TEST_CASE("exhaustive search matches brute force") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + rng.next_symbol(3);
    const std::size_t n = 2 + rng.next_symbol((std::size_t{1} << k) - 1);
    const auto problem = random_problem(rng, k, n);
    const auto mask = core::bernoulli_mask(n, 0.5, rng.next());
    if (mask.zeros() == 0) continue;
    const auto est = EstimatorSpec::kt(static_cast<unsigned>(rng.next_symbol(3)));
    const auto got = astar(core::TrainingView(problem, mask), est, {});
    const auto want = brute_force(problem, mask, est);
    CHECK(got.completion.labels == want.labels);
    CHECK(got.completion.cost.bits == doctest::Approx(want.cost.bits).epsilon(1e-12));
  }
}

TEST_CASE("exhaustive search with the enumerator estimator") {
  const auto problem = core::first_bit_problem(2);
  const auto est = EstimatorSpec::enumerator(12, 60);
  for (const char* m : {"1100", "1010", "0110", "1000"}) {
    const core::Mask mask(BitString::parse(m));
    const auto got = astar(core::TrainingView(problem, mask), est, {});
    const auto want = brute_force(problem, mask, est);
    CHECK(got.completion.labels == want.labels);
    CHECK(got.completion.cost.bits == doctest::Approx(want.cost.bits));
  }
  CHECK_THROWS_AS((void)astar(core::TrainingView(problem, core::Mask(BitString::parse("1100"))), est,
                              SearchStrategy::parse("greedy")),
                  error);
}

TEST_CASE("completions agree with the training labels") {
  const auto problem = core::first_bit_problem(3);
  const core::Mask mask(BitString::parse("10110101"));
  for (const char* s : {"exhaustive", "greedy", "beam:w=3"}) {
    const auto r = astar(core::TrainingView(problem, mask), EstimatorSpec::kt(2), SearchStrategy::parse(s));
    for (std::size_t i = 0; i < problem.size(); ++i) {
      if (mask.is_train(i)) CHECK(r.completion.labels[i] == problem.labels()[i]);
    }
    CHECK(r.predictions.size() == mask.zeros());
  }
}

TEST_CASE("greedy never beats exhaustive and a full beam equals it") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto problem = random_problem(rng, 4, 10 + rng.next_symbol(7));
    const auto mask = core::bernoulli_mask(problem.size(), 0.4, rng.next());
    if (mask.zeros() == 0 || mask.zeros() > 10) continue;
    const core::TrainingView view(problem, mask);
    const auto est = EstimatorSpec::kt(2);
    const auto ex = astar(view, est, SearchStrategy::parse("exhaustive"));
    const auto gr = astar(view, est, SearchStrategy::parse("greedy"));
    SearchStrategy beam = SearchStrategy::parse("beam");
    beam.width = 1U << mask.zeros();
    const auto bm = astar(view, est, beam);
    CHECK(ex.completion.cost.bits <= gr.completion.cost.bits + 1e-12);
    CHECK(predictions_of(bm) == predictions_of(ex));
  }
}

TEST_CASE("greedy breaks ties towards 0") {
  // Features 00, 01, 11; training labels 0, 1; the third bit is equally
  // likely under an order-0 model.
  const core::Problem problem(2, {BitString::parse("00"), BitString::parse("01"), BitString::parse("11")},
                              BitString::parse("011"));
  const core::TrainingView view(problem, core::Mask(BitString::parse("110")));
  CHECK(astar(view, EstimatorSpec::kt(0), SearchStrategy::parse("greedy")).predictions == BitString::parse("0"));
  CHECK(astar(view, EstimatorSpec::kt(0), SearchStrategy::parse("exhaustive")).predictions == BitString::parse("0"));
}

TEST_CASE("regression fixtures") {
  const auto k3 = core::first_bit_problem(3);
  const core::Mask mask(BitString::parse("10110101"));
  const auto r1 = astar(core::TrainingView(k3, mask), EstimatorSpec::kt(1), {});
  CHECK(r1.completion.labels == BitString::parse("00001111"));
  CHECK(r1.completion.cost.bits == doctest::Approx(7.86488).epsilon(1e-5));
  CHECK(core::loss(r1.predictions, k3, mask).numerator == 0);
  CHECK(astar(core::TrainingView(k3, mask), EstimatorSpec::kt(0), {}).completion.labels ==
        BitString::parse("00000101"));
  CHECK(astar(core::TrainingView(k3, mask), EstimatorSpec::kt(2), {}).completion.labels ==
        BitString::parse("01000101"));

  // Training only on the 0-labelled half makes the all-zero model cheapest.
  const auto k4 = core::first_bit_problem(4);
  const auto prefix = core::prefix_mask(16, 8);
  const auto r = astar(core::TrainingView(k4, prefix), EstimatorSpec::kt(1), {});
  CHECK(r.completion.labels == BitString::zeros(16));
  CHECK(core::loss(r.predictions, k4, prefix) == core::LossValue{1, 1});
}

TEST_CASE("search errors") {
  const auto p = core::first_bit_problem(5);
  CHECK_THROWS_AS((void)astar(core::TrainingView(p, core::prefix_mask(32, 32)), EstimatorSpec::kt(1), {}), error);
  CHECK_THROWS_AS((void)astar(core::TrainingView(p, core::prefix_mask(32, 4)), EstimatorSpec::kt(1), {}), error);
  CHECK_NOTHROW((void)astar(core::TrainingView(p, core::prefix_mask(32, 4)), EstimatorSpec::kt(1),
                            SearchStrategy::parse("greedy")));
}

TEST_CASE("baselines") {
  const auto p = core::first_bit_problem(2);
  const core::TrainingView view(p, core::Mask(BitString::parse("0111")));
  CHECK(baseline(BaselineKind::constant0, view, 0) == std::vector<std::uint8_t>{0});
  CHECK(baseline(BaselineKind::constant1, view, 0) == std::vector<std::uint8_t>{1});
  CHECK(baseline(BaselineKind::best_constant_on_train, view, 0) == std::vector<std::uint8_t>{1});
  const core::TrainingView tie(p, core::Mask(BitString::parse("1010")));
  CHECK(baseline(BaselineKind::best_constant_on_train, tie, 0) == std::vector<std::uint8_t>{0, 0});

  const auto big = core::first_bit_problem(6);
  const core::TrainingView wide(big, core::prefix_mask(64, 1));
  const auto a = baseline(BaselineKind::random, wide, 5);
  CHECK(a == baseline(BaselineKind::random, wide, 5));
  CHECK(a != baseline(BaselineKind::random, wide, 6));
  SplitMix64 rng(5);
  for (auto s : a) CHECK(s == rng.next_symbol(2));

  const core::TrainingView ternary(p, core::Mask(BitString::parse("1110")), {2, 2, 1, 0}, 3);
  CHECK(baseline(BaselineKind::best_constant_on_train, ternary, 0) == std::vector<std::uint8_t>{2});
  CHECK_THROWS_AS((void)astar(ternary, EstimatorSpec::kt(1), {}), error);
  CHECK(make_learner(AlgorithmSpec::of(BaselineKind::constant1))(view) == std::vector<std::uint8_t>{1});
}
