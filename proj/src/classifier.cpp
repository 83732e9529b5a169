#include "occam/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <optional>

#include "occam/enumerator.hpp"
#include "occam/error.hpp"
#include "occam/kt.hpp"
#include "occam/rng.hpp"

namespace occam::classify {

using complexity::CodeLength;
using complexity::EstimatorKind;
using complexity::EstimatorSpec;
using complexity::KtModel;

SearchStrategy SearchStrategy::parse(std::string_view text) {
  SearchStrategy s;
  if (text == "exhaustive") {
    s.kind = StrategyKind::exhaustive;
  } else if (text == "greedy") {
    s.kind = StrategyKind::greedy;
  } else if (text == "beam" || text.starts_with("beam:w=")) {
    s.kind = StrategyKind::beam;
    if (text != "beam") {
      const auto digits = text.substr(7);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s.width);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw error(errc::parse_error, "bad beam width in '" + std::string(text) + "'");
      }
    }
    if (s.width == 0) throw error(errc::out_of_range, "beam width must be at least 1");
  } else {
    throw error(errc::parse_error, "unknown search strategy '" + std::string(text) + "'");
  }
  return s;
}

std::string SearchStrategy::str() const {
  switch (kind) {
    case StrategyKind::exhaustive: return "exhaustive";
    case StrategyKind::greedy: return "greedy";
    case StrategyKind::beam: return "beam:w=" + std::to_string(width);
  }
  return {};
}

namespace {

// Training labels laid out by position; test positions are empty.
std::vector<std::optional<std::uint8_t>> visible_labels(const core::TrainingView& view) {
  std::vector<std::optional<std::uint8_t>> fixed(view.size());
  const auto& train = view.split().train_indices;
  for (std::size_t j = 0; j < train.size(); ++j) fixed[train[j]] = view.train_labels()[j];
  return fixed;
}

class KtExhaustive {
 public:
  KtExhaustive(const std::vector<std::optional<std::uint8_t>>& fixed, KtModel model)
      : fixed_(fixed), model_(std::move(model)) {}

  Completion solve() {
    search(0, 0.0);
    return {best_, {best_cost_}};
  }

 private:
  void search(std::size_t pos, double cost) {
    // Costs only grow and ties go to the earlier (smaller) labelling.
    if (cost >= best_cost_) return;
    if (pos == fixed_.size()) {
      best_cost_ = cost;
      best_ = current_;
      return;
    }
    if (fixed_[pos]) {
      step(pos, cost, *fixed_[pos] != 0);
    } else {
      step(pos, cost, false);
      step(pos, cost, true);
    }
  }

  void step(std::size_t pos, double cost, bool bit) {
    const double next = cost + model_.cost(bit);
    model_.update(bit);
    current_.push_back(bit);
    search(pos + 1, next);
    current_.pop_back();
    model_.undo();
  }

  const std::vector<std::optional<std::uint8_t>>& fixed_;
  KtModel model_;
  BitString current_;
  BitString best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
};

Completion kt_greedy(const std::vector<std::optional<std::uint8_t>>& fixed, KtModel model) {
  Completion out;
  double cost = 0.0;
  for (const auto& label : fixed) {
    bool bit = false;
    if (label) {
      bit = *label != 0;
    } else {
      bit = model.cost(true) < model.cost(false);
    }
    cost += model.cost(bit);
    model.update(bit);
    out.labels.push_back(bit);
  }
  out.cost = {cost};
  return out;
}

struct BeamState {
  BitString labels;
  double cost = 0.0;
  KtModel model;
};

bool beam_less(const BeamState& a, const BeamState& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.labels < b.labels;
}

Completion kt_beam(const std::vector<std::optional<std::uint8_t>>& fixed, KtModel model, std::size_t width) {
  std::vector<BeamState> beam;
  beam.push_back({BitString{}, 0.0, std::move(model)});
  for (const auto& label : fixed) {
    std::vector<BeamState> next;
    next.reserve(beam.size() * 2);
    for (auto& state : beam) {
      const auto extend = [&](bool bit, BeamState base) {
        base.cost = base.cost + base.model.cost(bit);
        base.model.update(bit);
        base.labels.push_back(bit);
        next.push_back(std::move(base));
      };
      if (label) {
        extend(*label != 0, std::move(state));
      } else {
        extend(false, state);
        extend(true, std::move(state));
      }
    }
    std::sort(next.begin(), next.end(), beam_less);
    if (next.size() > width) next.erase(next.begin() + static_cast<std::ptrdiff_t>(width), next.end());
    beam = std::move(next);
  }
  const auto& best = beam.front();
  return {best.labels, {best.cost}};
}

Completion enumerator_exhaustive(const std::vector<std::optional<std::uint8_t>>& fixed, const BitString& side,
                                 const tinyref::Budget& budget) {
  if (fixed.size() > 64) throw error(errc::too_large, "enumerator search supports at most 64 features");
  const auto found = tinyref::enumerate_matching(fixed, side, budget);
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;  // value, weight
  for (const auto& [value, entry] : found) {
    if (entry.weight > 0 && (!best || entry.weight > best->second)) best = {value, entry.weight};
  }
  if (!best) {
    throw error(errc::no_program_found, "no consistent labelling is produced by a program of at most " +
                                            std::to_string(budget.max_len) + " bits");
  }
  return {BitString::from_value(best->first, fixed.size()), {tinyref::code_length_bits(best->second, budget.max_len)}};
}

}  // namespace

AstarResult astar(const core::TrainingView& view, const EstimatorSpec& est, const SearchStrategy& strategy) {
  est.validate();
  if (view.alphabet() != 2) throw error(errc::unsupported, "the complexity classifier handles binary labels only");
  const auto& test = view.split().test_indices;
  if (test.empty()) throw error(errc::empty_test_set, "mask has no test positions");
  const auto fixed = visible_labels(view);
  const BitString warm = view.feature_string();

  Completion completion;
  if (est.kind == EstimatorKind::enumerator) {
    if (strategy.kind != StrategyKind::exhaustive) {
      throw error(errc::unsupported, "the enumerator estimator supports exhaustive search only");
    }
    if (test.size() > strategy.exhaustive_limit) {
      throw error(errc::exhaustive_too_large, std::to_string(test.size()) + " free bits exceed the exhaustive limit");
    }
    completion = enumerator_exhaustive(fixed, warm, est.budget);
  } else {
    KtModel model(est.order);
    model.update(warm);
    switch (strategy.kind) {
      case StrategyKind::exhaustive:
        if (test.size() > strategy.exhaustive_limit) {
          throw error(errc::exhaustive_too_large,
                      std::to_string(test.size()) + " free bits exceed the exhaustive limit");
        }
        completion = KtExhaustive(fixed, std::move(model)).solve();
        break;
      case StrategyKind::greedy:
        completion = kt_greedy(fixed, std::move(model));
        break;
      case StrategyKind::beam:
        completion = kt_beam(fixed, std::move(model), strategy.width);
        break;
    }
  }

  AstarResult result;
  for (auto i : test) result.predictions.push_back(completion.labels[i] != 0);
  result.completion = std::move(completion);
  return result;
}

std::vector<std::uint8_t> baseline(BaselineKind kind, const core::TrainingView& view, std::uint64_t seed) {
  const std::size_t t = view.split().test_indices.size();
  if (t == 0) throw error(errc::empty_test_set, "mask has no test positions");
  switch (kind) {
    case BaselineKind::constant0:
      return std::vector<std::uint8_t>(t, 0);
    case BaselineKind::constant1:
      return std::vector<std::uint8_t>(t, view.alphabet() > 1 ? 1 : 0);
    case BaselineKind::best_constant_on_train: {
      std::vector<std::size_t> counts(view.alphabet(), 0);
      for (auto y : view.train_labels()) ++counts[y];
      const auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
      return std::vector<std::uint8_t>(t, static_cast<std::uint8_t>(best));
    }
    case BaselineKind::random: {
      SplitMix64 rng(seed);
      std::vector<std::uint8_t> out(t);
      for (auto& y : out) y = static_cast<std::uint8_t>(rng.next_symbol(view.alphabet()));
      return out;
    }
  }
  return {};
}

AlgorithmSpec AlgorithmSpec::of(BaselineKind kind, std::uint64_t seed) {
  AlgorithmSpec spec;
  switch (kind) {
    case BaselineKind::constant0: spec.kind = AlgorithmKind::constant0; break;
    case BaselineKind::constant1: spec.kind = AlgorithmKind::constant1; break;
    case BaselineKind::best_constant_on_train: spec.kind = AlgorithmKind::best_constant_on_train; break;
    case BaselineKind::random: spec.kind = AlgorithmKind::random; break;
  }
  spec.seed = seed;
  return spec;
}

std::string AlgorithmSpec::name() const {
  switch (kind) {
    case AlgorithmKind::astar: return "astar[" + estimator.str() + "," + strategy.str() + "]";
    case AlgorithmKind::constant0: return "constant0";
    case AlgorithmKind::constant1: return "constant1";
    case AlgorithmKind::best_constant_on_train: return "best_constant_on_train";
    case AlgorithmKind::random: return "random[seed=" + std::to_string(seed) + "]";
  }
  return {};
}

Learner make_learner(const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmKind::astar:
      return [spec](const core::TrainingView& view) {
        return astar(view, spec.estimator, spec.strategy).predictions.raw();
      };
    case AlgorithmKind::constant0:
      return [](const core::TrainingView& view) { return baseline(BaselineKind::constant0, view, 0); };
    case AlgorithmKind::constant1:
      return [](const core::TrainingView& view) { return baseline(BaselineKind::constant1, view, 0); };
    case AlgorithmKind::best_constant_on_train:
      return [](const core::TrainingView& view) { return baseline(BaselineKind::best_constant_on_train, view, 0); };
    case AlgorithmKind::random:
      return [seed = spec.seed](const core::TrainingView& view) { return baseline(BaselineKind::random, view, seed); };
  }
  return {};
}

BaselineKind parse_baseline(std::string_view text) {
  if (text == "constant0") return BaselineKind::constant0;
  if (text == "constant1") return BaselineKind::constant1;
  if (text == "best_constant_on_train" || text == "best_constant") return BaselineKind::best_constant_on_train;
  if (text == "random") return BaselineKind::random;
  throw error(errc::parse_error, "unknown baseline '" + std::string(text) + "'");
}

std::string_view baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::constant0: return "constant0";
    case BaselineKind::constant1: return "constant1";
    case BaselineKind::best_constant_on_train: return "best_constant_on_train";
    case BaselineKind::random: return "random";
  }
  return {};
}

}  // namespace occam::classify
