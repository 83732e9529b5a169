// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "occam/analysis.hpp"
#include "occam/classifier.hpp"
#include "occam/enumerator.hpp"
#include "occam/nfl.hpp"
#include "occam/parallel.hpp"
#include "occam/problem.hpp"
#include "occam/rng.hpp"

using namespace occam;
using classify::AlgorithmSpec;
using classify::BaselineKind;
using classify::SearchStrategy;
using complexity::EstimatorSpec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

class Clock {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

unsigned all_cores() { return std::max(1U, std::thread::hardware_concurrency()); }

Outcome nfl_exactness() {
  Outcome o;
  Clock clock;
  const core::Mask mask(BitString::parse("1100"));
  std::vector<AlgorithmSpec> algs = {AlgorithmSpec::of(BaselineKind::constant0),
                                     AlgorithmSpec::of(BaselineKind::constant1),
                                     AlgorithmSpec::of(BaselineKind::best_constant_on_train)};
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL}) algs.push_back(AlgorithmSpec::of(BaselineKind::random, seed));
  const std::size_t baselines = algs.size();
  for (unsigned r = 0; r <= 2; ++r) algs.push_back(AlgorithmSpec::astar_with(EstimatorSpec::kt(r), {}));

  for (std::size_t i = 0; i < algs.size(); ++i) {
    const auto learner = classify::make_learner(algs[i]);
    o.require(analysis::nfl_expected_loss(learner, 4, 2, mask) == mpq_class(1, 2), algs[i].name() + " |Y|=2");
    if (i < baselines) {
      o.require(analysis::nfl_expected_loss(learner, 4, 3, mask) == mpq_class(2, 3), algs[i].name() + " |Y|=3");
    }
  }
  const double t = clock.seconds();
  o.require(t < 5.0, "runtime < 5 s");
  o.note(std::to_string(algs.size()) + " algorithms exactly 1/2, " + std::to_string(baselines) +
         " exactly 2/3 for |Y|=3, " + fmt("%.2f s", t));
  return o;
}

Outcome semimeasure() {
  Outcome o;
  Clock clock;
  const auto base = tinyref::enumerate_table(5, BitString{}, {18, 1000}, all_cores());
  const auto wider = tinyref::enumerate_table(5, BitString{}, {21, 1000}, all_cores());
  std::string sums;
  for (unsigned m = 1; m <= 5; ++m) {
    const mpq_class s = base.level_sum(m);
    o.require(s <= 1, "sum over B^" + std::to_string(m) + " <= 1");
    o.require(s <= wider.level_sum(m), "level sum nondecreasing in L at m=" + std::to_string(m));
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
      // Weights are in units of 2^-L, so L+3 multiplies them by 8.
      o.require(base.entry(m, v).weight * 8 <= wider.entry(m, v).weight,
                "M(" + BitString::from_value(v, m).str() + ") nondecreasing in L");
    }
    sums += (m > 1 ? "," : "") + fmt("%.4f", s.get_d());
  }
  const double t = clock.seconds();
  o.require(t < 60.0, "runtime < 60 s");
  o.note("L=18 sums m=1..5: " + sums + "; " + fmt("%.2f s", t));
  return o;
}

Outcome normalization() {
  Outcome o;
  const auto mn = tinyref::build_mn(5, BitString{}, {18, 1000}, all_cores());
  for (unsigned m = 0; m <= 5; ++m) o.require(mn.level_sum(m) == 1, "sum Mn over B^" + std::to_string(m) + " = 1");
  o.note("exact for m=0..5 with " + std::to_string(mn.fallback_count()) + " even-split nodes");
  return o;
}

Outcome entropy_grid() {
  Outcome o;
  Clock clock;
  double worst_gap = 1.0;
  double worst_middle = 1.0;
  for (int i = 1; i <= 99; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const auto g = analysis::lemma1_gap(i / 100.0, j / 100.0);
      worst_gap = std::min(worst_gap, g.gap());
      worst_middle = std::min(worst_middle, g.middle);
      const bool equal = std::abs(g.upper - g.middle) <= 1e-12;
      if (equal != (j == 0)) o.require(false, "middle = upper only on the alpha=0 column");
    }
  }
  const double t = clock.seconds();
  o.require(worst_gap >= -1e-12, "gap >= -1e-12");
  o.require(worst_middle >= -1e-12, "middle >= 0");
  o.require(t < 1.0, "runtime < 1 s");
  o.note("99x101 grid, min gap " + fmt("%.3g", worst_gap) + ", " + fmt("%.3f s", t));
  return o;
}

Outcome psi_identities() {
  Outcome o;
  SplitMix64 rng(derive_seed(2024, 0));
  int checked = 0;
  while (checked < 1000) {
    const std::size_t n = 4 + rng.next_symbol(61);
    BitString y, chi, completion;
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(rng.next() & 1);
      chi.push_back(rng.next_unit() < 0.5);
    }
    const core::Mask mask(chi);
    if (mask.zeros() == 0) continue;
    for (std::size_t i = 0; i < n; ++i) completion.push_back(mask.is_train(i) ? y[i] != 0 : (rng.next() & 1) != 0);
    if (!analysis::psi_counts_check(y, completion, mask).all()) o.require(false, "triple " + std::to_string(checked));
    ++checked;
  }
  o.note("1000 triples, n in [4,64]");
  return o;
}

Outcome search_oracle() {
  Outcome o;
  SplitMix64 rng(derive_seed(7, 0));
  int instances = 0;
  int greedy_strictly_worse = 0;
  while (instances < 200) {
    const std::size_t k = 3 + rng.next_symbol(2);
    const std::size_t n = 6 + rng.next_symbol((std::size_t{1} << k) - 5);
    std::vector<BitString> features;
    for (std::size_t i = 0; i < n; ++i) features.push_back(BitString::from_value(i, k));
    BitString labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(rng.next() & 1);
    const core::Problem problem(k, features, labels);
    const auto mask = core::bernoulli_mask(n, 0.5, rng.next());
    if (mask.zeros() == 0 || mask.zeros() > 12) continue;
    const core::TrainingView view(problem, mask);
    const auto est = EstimatorSpec::kt(static_cast<unsigned>(rng.next_symbol(3)));
    const auto ex = classify::astar(view, est, SearchStrategy::parse("exhaustive"));
    const auto gr = classify::astar(view, est, SearchStrategy::parse("greedy"));
    SearchStrategy beam = SearchStrategy::parse("beam");
    beam.width = 1U << mask.zeros();
    const auto bm = classify::astar(view, est, beam);
    o.require(ex.completion.cost.bits <= gr.completion.cost.bits, "exhaustive <= greedy, instance " +
                                                                        std::to_string(instances));
    o.require(bm.predictions == ex.predictions, "beam == exhaustive, instance " + std::to_string(instances));
    greedy_strictly_worse += ex.completion.cost.bits < gr.completion.cost.bits;
    ++instances;
  }
  o.note("200 instances, greedy strictly worse on " + std::to_string(greedy_strictly_worse));
  return o;
}

double mean_loss(const core::Problem& problem, const std::vector<core::Mask>& masks, const AlgorithmSpec& alg) {
  std::vector<double> losses(masks.size());
  parallel_for(masks.size(), all_cores(), [&](std::size_t i) {
    const auto pred = classify::make_learner(alg)(core::TrainingView(problem, masks[i]));
    losses[i] = core::loss(BitString(pred), problem, masks[i]).value();
  });
  double sum = 0.0;
  for (double l : losses) sum += l;
  return sum / static_cast<double>(masks.size());
}

std::vector<core::Mask> bernoulli_masks(std::size_t n, double theta, std::uint64_t master, unsigned count) {
  std::vector<core::Mask> masks;
  for (unsigned i = 0; masks.size() < count; ++i) {
    auto m = core::bernoulli_mask(n, theta, derive_seed(master, 2 * i));
    if (m.zeros() > 0) masks.push_back(std::move(m));
  }
  return masks;
}

Outcome prefix_vs_random() {
  Outcome o;
  Clock clock;
  const auto problem = core::first_bit_problem(4);
  const auto alg = AlgorithmSpec::astar_with(EstimatorSpec::kt(1), SearchStrategy::parse("exhaustive"));
  const auto prefix = core::prefix_mask(16, 8);
  const auto r = classify::astar(core::TrainingView(problem, prefix), alg.estimator, alg.strategy);
  const double prefix_loss = core::loss(r.predictions, problem, prefix).value();
  o.require(r.completion.labels == BitString::zeros(16), "prefix completion is all zeros");
  o.require(prefix_loss == 1.0, "prefix loss = 1");
  o.require(prefix_loss >= 0.5, "prefix loss >= 0.5");

  const auto masks = bernoulli_masks(16, 0.5, 0, 100);
  const double mean = mean_loss(problem, masks, alg);
  const double zero_mean = mean_loss(problem, masks, AlgorithmSpec::of(BaselineKind::constant0));
  o.require(mean < 0.15, "mean Bernoulli loss < 0.15");
  o.require(mean < zero_mean, "mean Bernoulli loss < constant0");
  const double t = clock.seconds();
  o.require(t < 120.0, "runtime < 2 min");
  o.note("prefix loss " + fmt("%.3f", prefix_loss) + ", mean Bernoulli loss " + fmt("%.4f", mean) +
         " (constant0 " + fmt("%.4f", zero_mean) + "), " + fmt("%.2f s", t));
  return o;
}

Outcome scaling() {
  Outcome o;
  const auto alg = AlgorithmSpec::astar_with(EstimatorSpec::kt(2), SearchStrategy::parse("greedy"));
  double previous = 1.0;
  std::string means;
  double last = 1.0;
  double random_last = 0.0;
  for (std::size_t k : {5, 6, 7}) {
    const auto problem = core::first_bit_problem(k);
    const auto masks = bernoulli_masks(problem.size(), 0.25, 1, 50);
    const double mean = mean_loss(problem, masks, alg);
    o.require(mean <= previous, "non-increasing at k=" + std::to_string(k));
    previous = last = mean;
    random_last = mean_loss(problem, masks, AlgorithmSpec::of(BaselineKind::random, 3));
    means += (k > 5 ? "," : "") + fmt("%.4f", mean);
  }
  o.require(last <= 0.5 - 0.2, "k=7 at least 0.2 below 0.5");
  o.note("mean loss k=5,6,7: " + means + "; random at k=7: " + fmt("%.4f", random_last));
  return o;
}

Outcome free_lunch() {
  Outcome o;
  const tinyref::Budget budget{18, 1000};
  const auto a = analysis::free_lunch_experiment(3, 2, budget, analysis::PriorKind::mn, 1);
  const auto b = analysis::free_lunch_experiment(3, 2, budget, analysis::PriorKind::mn, all_cores());
  const auto c = analysis::free_lunch_experiment(3, 2, budget, analysis::PriorKind::mn, all_cores());
  o.require(a.expected_loss < mpq_class(1, 2), "loss < 1/2");
  o.require(a.margin > 0, "margin > 0");
  o.require(a.margin == b.margin && b.margin == c.margin, "margin identical across runs and worker counts");
  const auto u = analysis::free_lunch_experiment(3, 2, budget, analysis::PriorKind::uniform, all_cores());
  o.require(u.expected_loss == mpq_class(1, 2), "uniform control = 1/2");
  o.note("loss " + fmt("%.9f", a.expected_loss.get_d()) + ", margin " + fmt("%.9f", a.margin.get_d()) +
         ", uniform control exactly 1/2");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "occam_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"nfl", "--size-x", "4", "--size-y", "2", "--mask-bits", "1100"},
      {"freelunch", "--m", "3", "--test-count", "2", "--prior-output", "@prior"},
      {"classify", "--canonical", "4", "--seeds", "20", "--estimator", "kt:r=1"},
      {"complexity", "--string", "0110", "--estimator", "enum:L=15,S=500"},
      {"enumerate", "--depth", "4", "-L", "15", "-S", "500"},
      {"bounds", "--profile", "illustrative", "--curve-output", "@curve", "--plot-data", "@plot"},
      {"sweep", "--canonical-list", "4,5", "--thetas", "0.25,0.5", "--seeds", "5", "--strategy", "greedy"},
  };
  for (const auto& base : commands) {
    std::vector<std::string> outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> args = {"occam"};
      std::vector<std::filesystem::path> files;
      for (const auto& a : base) {
        if (a.starts_with("@")) {
          files.push_back(dir / (base[0] + "_" + a.substr(1) + std::to_string(rep)));
          args.push_back(files.back().string());
        } else {
          args.push_back(a);
        }
      }
      files.push_back(dir / (base[0] + "_main" + std::to_string(rep)));
      args.insert(args.end(), {"--workers", "0", "-o", files.back().string()});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) o.require(false, base[0] + " exited with an error: " + err.str());
      for (const auto& f : files) outputs[rep].push_back(slurp(f));
    }
    o.require(outputs[0] == outputs[1], base[0] + " outputs byte-identical");
  }
  o.note(std::to_string(commands.size()) + " subcommands run twice with all cores");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"nfl-exactness", nfl_exactness},
      {"semimeasure", semimeasure},
      {"mn-normalization", normalization},
      {"entropy-inequality-grid", entropy_grid},
      {"psi-identities", psi_identities},
      {"exhaustive-vs-greedy", search_oracle},
      {"prefix-vs-random-training", prefix_vs_random},
      {"scaling-trend", scaling},
      {"free-lunch", free_lunch},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
