#include <doctest.h>

#include "occam/classifier.hpp"
#include "occam/enumerator.hpp"
#include "occam/error.hpp"
#include "occam/nfl.hpp"

using namespace occam;
using namespace occam::analysis;
using classify::AlgorithmSpec;
using classify::BaselineKind;
using complexity::EstimatorSpec;

namespace {

std::vector<classify::Learner> all_learners() {
  std::vector<classify::Learner> out;
  for (auto kind : {BaselineKind::constant0, BaselineKind::constant1, BaselineKind::best_constant_on_train}) {
    out.push_back(classify::make_learner(AlgorithmSpec::of(kind)));
  }
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    out.push_back(classify::make_learner(AlgorithmSpec::of(BaselineKind::random, seed)));
  }
  for (unsigned r = 0; r <= 2; ++r) {
    out.push_back(classify::make_learner(AlgorithmSpec::astar_with(EstimatorSpec::kt(r), {})));
  }
  out.push_back(classify::make_learner(
      AlgorithmSpec::astar_with(EstimatorSpec::kt(2), classify::SearchStrategy::parse("greedy"))));
  return out;
}

}  // namespace

TEST_CASE("uniform prior: every algorithm scores (|Y|-1)/|Y|") {
  const core::Mask mask(BitString::parse("1100"));
  for (const auto& learner : all_learners()) {
    CHECK(nfl_expected_loss(learner, 4, 2, mask) == mpq_class(1, 2));
  }
  const core::Mask other(BitString::parse("10010"));
  for (const auto& learner : all_learners()) {
    CHECK(nfl_expected_loss(learner, 5, 2, other, 3) == mpq_class(1, 2));
  }
  for (auto kind : {BaselineKind::constant0, BaselineKind::best_constant_on_train, BaselineKind::random}) {
    CHECK(nfl_expected_loss(classify::make_learner(AlgorithmSpec::of(kind, 4)), 4, 3, mask) == mpq_class(2, 3));
  }
  CHECK_THROWS_AS((void)nfl_expected_loss(all_learners()[0], 4, 2, core::prefix_mask(4, 4)), error);
  CHECK_THROWS_AS((void)nfl_expected_loss(all_learners()[0], 24, 2, core::prefix_mask(24, 2)), error);
}

TEST_CASE("prior tables") {
  const auto u = PriorTable::uniform(3);
  CHECK(u.size() == 8);
  CHECK(u.total() == 1);
  const auto pm = PriorTable::point_mass(3, BitString::parse("101"));
  CHECK(pm.weight(5) == 1);
  CHECK(pm.weight(4) == 0);
  CHECK_THROWS_AS(PriorTable(2, {1, 1, 0, 0}), error);
  CHECK_THROWS_AS(PriorTable(2, {1, 0, 0}), error);

  const auto mn = tinyref::build_mn(3, BitString{}, {12, 100});
  const auto prior = PriorTable::from_mn(mn, 3);
  CHECK(prior.total() == 1);
  CHECK(prior.weight(0) == mn.mn(BitString::parse("000")));
}

TEST_CASE("expected loss under a prior") {
  const auto features = core::feature_grid(4);
  const auto mask = core::prefix_mask(4, 2);
  const auto c1 = classify::make_learner(AlgorithmSpec::of(BaselineKind::constant1));
  // Point mass on 0011: constant1 is always right on the test half.
  CHECK(expected_loss(PriorTable::point_mass(4, BitString::parse("0011")), c1, features, mask).value == 0);
  CHECK(expected_loss(PriorTable::point_mass(4, BitString::parse("0001")), c1, features, mask).value ==
        mpq_class(1, 2));
  CHECK(expected_loss(PriorTable::uniform(4), c1, features, mask).value == mpq_class(1, 2));
  // Sub-probability priors are normalized and flagged.
  std::vector<mpq_class> w(16, 0);
  w[3] = mpq_class(1, 4);
  const auto half = expected_loss(PriorTable(4, w), c1, features, mask);
  CHECK(half.value == 0);
  CHECK(half.normalized);
}

TEST_CASE("better constant") {
  const auto mask = core::prefix_mask(3, 1);
  std::vector<mpq_class> w(8, 0);
  w[0b011] = mpq_class(1, 2);
  w[0b000] = mpq_class(1, 4);
  const PriorTable prior(3, w);
  const auto all = better_constant([](const BitString&) { return true; }, prior, mask);
  CHECK(all.choice == BaselineKind::constant1);
  CHECK(all.weighted_loss1 == mpq_class(1, 4));
  CHECK(all.weighted_loss0 == mpq_class(1, 2));
  CHECK(all.mass == mpq_class(3, 4));
  CHECK(all.chosen_loss() * 2 <= all.mass);
  const auto tie = better_constant([](const BitString&) { return true; }, PriorTable::uniform(3), mask);
  CHECK(tie.choice == BaselineKind::constant0);
  CHECK_THROWS_AS((void)better_constant([](const BitString& f) { return f[0] == 1; }, prior, mask), error);
}

TEST_CASE("free lunch under the simplicity prior") {
  const auto a = free_lunch_experiment(3, 2, {18, 1000}, PriorKind::mn, 1);
  CHECK(a.expected_loss < mpq_class(1, 2));
  CHECK(a.margin > 0);
  CHECK(a.margin == mpq_class(1, 2) - a.expected_loss);
  CHECK(a.expected_loss.get_d() == doctest::Approx(0.207426284521));
  CHECK(a.fallback_nodes == 98);
  const auto b = free_lunch_experiment(3, 2, {18, 1000}, PriorKind::mn, 8);
  CHECK(b.expected_loss == a.expected_loss);

  const auto u = free_lunch_experiment(3, 2, {18, 1000}, PriorKind::uniform, 4);
  CHECK(u.expected_loss == mpq_class(1, 2));
  CHECK(u.margin == 0);

  for (unsigned m = 1; m <= 3; ++m) {
    const auto r = free_lunch_experiment(m, 1, {12, 100}, PriorKind::mn, 2);
    CHECK(r.expected_loss <= mpq_class(1, 2));
  }
  CHECK_THROWS_AS((void)free_lunch_experiment(5, 2, {18, 1000}), error);
  CHECK_THROWS_AS((void)free_lunch_experiment(3, 8, {18, 1000}), error);
}
