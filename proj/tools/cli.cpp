#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "occam/analysis.hpp"
#include "occam/classifier.hpp"
#include "occam/enumerator.hpp"
#include "occam/error.hpp"
#include "occam/estimator.hpp"
#include "occam/nfl.hpp"
#include "occam/parallel.hpp"
#include "occam/problem.hpp"
#include "occam/report.hpp"
#include "occam/rng.hpp"

namespace occam::cli {

namespace {

using classify::format_number;

struct RunConfig {
  // problem and mask
  std::string problem_path;
  unsigned canonical_k = 0;
  std::string canonical_list = "5,6,7";
  std::string mask_path;
  std::string mask_bits;
  double theta = 0.5;
  std::uint64_t seed = 0;
  unsigned seeds = 1;
  std::optional<std::size_t> prefix;
  // algorithms
  std::string estimator = "kt:r=2";
  std::string strategy = "exhaustive";
  std::string baselines = "constant0,constant1,best_constant_on_train,random";
  std::string profile = "zeros";
  // output and execution
  std::string output;
  unsigned workers = 1;
  bool timing = false;
  // nfl
  std::size_t size_x = 4;
  unsigned size_y = 2;
  // freelunch / enumerate
  unsigned m = 3;
  std::size_t test_count = 2;
  unsigned max_len = 18;
  std::uint64_t max_steps = 1000;
  bool uniform_prior = false;
  std::string prior_output;
  unsigned depth = 4;
  // complexity
  std::string string_bits;
  std::string side_bits;
  // bounds
  double grid_step = 0.01;
  double km_f = 100.0;
  double km_x = 0.0;
  double bound_theta = 0.25;
  std::uint64_t n_min = 128;
  std::uint64_t n_max = 1 << 20;
  std::string curve_output;
  std::string plot_data;
  // sweep
  std::string thetas = "0.25";
};

unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw error(errc::parse_error, "not a number: '" + text + "'");
  return v;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot write " + path);
  f << content;
  if (!f) throw error(errc::io_error, "failed writing " + path);
}

std::string rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

analysis::BoundParams profile_params(const std::string& name) {
  if (name == "zeros") return analysis::BoundParams::zeros();
  if (name == "illustrative") return analysis::BoundParams::illustrative();
  throw error(errc::parse_error, "unknown bound profile '" + name + "' (zeros|illustrative)");
}

core::Problem load_configured_problem(const RunConfig& cfg) {
  if (!cfg.problem_path.empty()) return core::load_problem(cfg.problem_path);
  if (cfg.canonical_k != 0) return core::first_bit_problem(cfg.canonical_k);
  throw error(errc::parse_error, "need --problem FILE or --canonical K");
}

std::optional<core::Mask> explicit_mask(const RunConfig& cfg) {
  if (!cfg.mask_path.empty()) return core::load_mask(cfg.mask_path);
  if (!cfg.mask_bits.empty()) return core::Mask(BitString::parse(cfg.mask_bits));
  return std::nullopt;
}

std::vector<classify::AlgorithmSpec> configured_algorithms(const RunConfig& cfg, std::uint64_t random_seed) {
  std::vector<classify::AlgorithmSpec> algs;
  algs.push_back(classify::AlgorithmSpec::astar_with(complexity::EstimatorSpec::parse(cfg.estimator),
                                                     classify::SearchStrategy::parse(cfg.strategy)));
  for (const auto& name : split_list(cfg.baselines)) {
    algs.push_back(classify::AlgorithmSpec::of(classify::parse_baseline(name), random_seed));
  }
  return algs;
}

// One independent unit of a classify/sweep run.
struct Task {
  const core::Problem* problem;
  core::Mask mask;
  std::string mask_kind;
  double theta;
  std::uint64_t mask_seed;
  std::uint64_t random_seed;
};

std::string run_tasks(const RunConfig& cfg, const std::vector<Task>& tasks, const std::string& experiment) {
  const auto complexity_est = complexity::EstimatorSpec::parse(cfg.estimator);
  const auto params = profile_params(cfg.profile);
  std::vector<std::string> rows(tasks.size());
  parallel_for(tasks.size(), effective_workers(cfg.workers), [&](std::size_t i) {
    const Task& task = tasks[i];
    classify::EvaluateOptions opts;
    opts.experiment = experiment;
    opts.mask_kind = task.mask_kind;
    opts.theta = task.theta;
    opts.seed = task.mask_seed;
    opts.complexity_estimator = complexity_est;
    opts.bounds = params;
    opts.timing = cfg.timing;
    std::ostringstream block;
    for (const auto& alg : configured_algorithms(cfg, task.random_seed)) {
      classify::write_report_row(block, classify::evaluate(*task.problem, task.mask, alg, opts));
    }
    rows[i] = block.str();
  });
  std::ostringstream out;
  classify::write_report_header(out);
  for (const auto& r : rows) out << r;
  return out.str();
}

std::string cmd_classify(const RunConfig& cfg) {
  const core::Problem problem = load_configured_problem(cfg);
  std::vector<Task> tasks;
  if (auto mask = explicit_mask(cfg)) {
    tasks.push_back({&problem, *mask, "file", 0.0, cfg.seed, derive_seed(cfg.seed, 1)});
  } else {
    if (cfg.seeds < 1) throw error(errc::out_of_range, "--seeds must be at least 1");
    for (unsigned i = 0; i < cfg.seeds; ++i) {
      const auto mask_seed = derive_seed(cfg.seed, 2 * i);
      tasks.push_back({&problem, core::bernoulli_mask(problem.size(), cfg.theta, mask_seed), "bernoulli", cfg.theta,
                       mask_seed, derive_seed(cfg.seed, 2 * i + 1)});
    }
    const std::size_t m =
        cfg.prefix.value_or(static_cast<std::size_t>(std::llround(cfg.theta * static_cast<double>(problem.size()))));
    tasks.push_back({&problem, core::prefix_mask(problem.size(), m), "prefix", 0.0, 0,
                     derive_seed(cfg.seed, 2 * cfg.seeds + 1)});
  }
  return run_tasks(cfg, tasks, "classify");
}

std::string cmd_sweep(const RunConfig& cfg) {
  std::vector<core::Problem> problems;
  if (!cfg.problem_path.empty()) {
    problems.push_back(core::load_problem(cfg.problem_path));
  } else {
    for (const auto& k : split_list(cfg.canonical_list)) {
      problems.push_back(core::first_bit_problem(static_cast<std::size_t>(parse_double(k))));
    }
  }
  std::vector<double> thetas;
  for (const auto& t : split_list(cfg.thetas)) thetas.push_back(parse_double(t));
  if (thetas.empty()) throw error(errc::parse_error, "--thetas is empty");
  if (cfg.seeds < 1) throw error(errc::out_of_range, "--seeds must be at least 1");

  std::vector<Task> tasks;
  for (const auto& problem : problems) {
    for (double theta : thetas) {
      for (unsigned s = 0; s < cfg.seeds; ++s) {
        const std::uint64_t index = tasks.size();
        const auto mask_seed = derive_seed(cfg.seed, 2 * index);
        tasks.push_back({&problem, core::bernoulli_mask(problem.size(), theta, mask_seed), "bernoulli", theta,
                         mask_seed, derive_seed(cfg.seed, 2 * index + 1)});
      }
    }
  }
  return run_tasks(cfg, tasks, "sweep");
}

std::string cmd_nfl(const RunConfig& cfg) {
  core::Mask mask;
  if (auto m = explicit_mask(cfg)) {
    mask = *m;
  } else {
    mask = core::prefix_mask(cfg.size_x, cfg.prefix.value_or(cfg.size_x / 2));
  }
  if (mask.size() != cfg.size_x) throw error(errc::length_mismatch, "mask length differs from --size-x");
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");

  std::vector<classify::AlgorithmSpec> algs = {
      classify::AlgorithmSpec::of(classify::BaselineKind::constant0),
      classify::AlgorithmSpec::of(classify::BaselineKind::constant1),
      classify::AlgorithmSpec::of(classify::BaselineKind::best_constant_on_train),
      classify::AlgorithmSpec::of(classify::BaselineKind::random, cfg.seed),
  };
  if (cfg.size_y == 2) {
    for (unsigned r = 0; r <= 2; ++r) {
      algs.push_back(classify::AlgorithmSpec::astar_with(complexity::EstimatorSpec::kt(r), {}));
    }
    algs.push_back(classify::AlgorithmSpec::astar_with(complexity::EstimatorSpec::kt(2),
                                                       classify::SearchStrategy::parse("greedy")));
    algs.push_back(classify::AlgorithmSpec::astar_with(complexity::EstimatorSpec::kt(2),
                                                       classify::SearchStrategy::parse("beam:w=4")));
  }

  std::ostringstream out;
  out << "algorithm,size_x,size_y,mask,loss_num,loss_den,loss\n";
  std::optional<mpq_class> first;
  bool agree = true;
  for (const auto& alg : algs) {
    const mpq_class loss =
        analysis::nfl_expected_loss(classify::make_learner(alg), cfg.size_x, cfg.size_y, mask,
                                    effective_workers(cfg.workers));
    if (!first) first = loss;
    agree = agree && loss == *first;
    out << classify::csv_field(alg.name()) << ',' << cfg.size_x << ',' << cfg.size_y << ',' << mask.bits().str() << ','
        << loss.get_num().get_str() << ',' << loss.get_den().get_str() << ',' << format_number(loss.get_d()) << '\n';
  }
  if (!agree) throw error(errc::domain_error, "algorithms disagree on the uniform-prior expected loss:\n" + out.str());
  return out.str();
}

std::string cmd_freelunch(const RunConfig& cfg) {
  const auto kind = cfg.uniform_prior ? analysis::PriorKind::uniform : analysis::PriorKind::mn;
  const auto result = analysis::free_lunch_experiment(cfg.m, cfg.test_count, {cfg.max_len, cfg.max_steps}, kind,
                                                      effective_workers(cfg.workers));
  std::ostringstream out;
  out << "m,test_count,L,S,prior,fallback_constant,loss_num,loss_den,loss,margin_num,margin_den,margin,"
         "fallback_nodes\n";
  out << cfg.m << ',' << cfg.test_count << ',' << cfg.max_len << ',' << cfg.max_steps << ','
      << (cfg.uniform_prior ? "uniform" : "mn") << ',' << classify::baseline_name(result.fallback_constant.choice) << ','
      << result.expected_loss.get_num().get_str() << ',' << result.expected_loss.get_den().get_str() << ','
      << format_number(result.expected_loss.get_d()) << ',' << result.margin.get_num().get_str() << ','
      << result.margin.get_den().get_str() << ',' << format_number(result.margin.get_d()) << ','
      << result.fallback_nodes << '\n';

  if (!cfg.prior_output.empty()) {
    std::ostringstream prior;
    prior << "labels,weight,weight_approx\n";
    for (std::uint64_t f = 0; f < result.prior.size(); ++f) {
      prior << BitString::from_value(f, result.prior.n()).str() << ',' << rational(result.prior.weight(f)) << ','
            << format_number(result.prior.weight(f).get_d()) << '\n';
    }
    write_file(cfg.prior_output, prior.str());
  }
  return out.str();
}

std::string cmd_complexity(const RunConfig& cfg) {
  const BitString y = BitString::parse(cfg.string_bits);
  const BitString x = BitString::parse(cfg.side_bits);
  const auto est = complexity::EstimatorSpec::parse(cfg.estimator);
  std::ostringstream out;
  out << "string,side,estimator,bits,m_lower,programs_counted,km_shortest\n";
  out << y.str() << ',' << x.str() << ',' << classify::csv_field(est.str()) << ',';
  if (est.kind == complexity::EstimatorKind::kt) {
    out << format_number(complexity::conditional_complexity(y, x, est).bits) << ",-,-,-\n";
  } else {
    const auto m = tinyref::approx_M(y, x, est.budget);
    const double bits = m.value == 0 ? std::numeric_limits<double>::infinity() : -std::log2(m.value.get_d());
    out << format_number(bits) << ',' << rational(m.value) << ',' << m.programs_counted << ','
        << (m.shortest == tinyref::kNoProgram ? std::string("-") : std::to_string(m.shortest)) << '\n';
  }
  return out.str();
}

std::string cmd_enumerate(const RunConfig& cfg) {
  const auto mn =
      tinyref::build_mn(cfg.depth, BitString::parse(cfg.side_bits), {cfg.max_len, cfg.max_steps},
                        effective_workers(cfg.workers));
  std::ostringstream out;
  out << "string,m_lower,mn,km_bits,programs_counted,L,S\n";
  for (unsigned len = 0; len <= cfg.depth; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString x = BitString::from_value(v, len);
      const auto& e = mn.masses().entry(len, v);
      out << x.str() << ',' << rational(tinyref::dyadic(e.weight, cfg.max_len)) << ',' << rational(mn.mn(len, v))
          << ',' << format_number(tinyref::code_length_bits(e.weight, cfg.max_len)) << ',' << e.programs << ','
          << cfg.max_len << ',' << cfg.max_steps << '\n';
    }
  }
  return out.str();
}

std::string cmd_bounds(const RunConfig& cfg) {
  if (!(cfg.grid_step > 0.0 && cfg.grid_step <= 0.5)) throw error(errc::out_of_range, "--grid-step must be in (0, 0.5]");
  const auto steps = static_cast<long>(std::llround(1.0 / cfg.grid_step));
  std::ostringstream grid;
  grid << "theta,alpha,middle,upper,gap\n";
  for (long i = 1; i < steps; ++i) {
    const double theta = static_cast<double>(i) / static_cast<double>(steps);
    for (long j = 0; j <= steps; ++j) {
      const double alpha = static_cast<double>(j) / static_cast<double>(steps);
      const auto g = analysis::lemma1_gap(theta, alpha);
      grid << format_number(theta) << ',' << format_number(alpha) << ',' << format_number(g.middle) << ','
           << format_number(g.upper) << ',' << format_number(g.gap()) << '\n';
    }
  }

  const auto params = profile_params(cfg.profile);
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw error(errc::out_of_range, "need 1 <= --n-min <= --n-max");
  std::ostringstream curve;
  std::ostringstream plot;
  curve << "n,theta,km_f,km_x,bound2,bound3\n";
  plot << "# n bound2 bound3\n";
  std::size_t degenerate = 0;
  for (std::uint64_t n = cfg.n_min; n <= cfg.n_max; n *= 2) {
    const double nn = static_cast<double>(n);
    try {
      const double b2 = analysis::theorem2_bound(cfg.km_f, cfg.km_x, nn, cfg.bound_theta, params);
      const double b3 = analysis::theorem3_bound(cfg.km_f, nn, nn, cfg.bound_theta, params);
      curve << n << ',' << format_number(cfg.bound_theta) << ',' << format_number(cfg.km_f) << ','
            << format_number(cfg.km_x) << ',' << format_number(b2) << ',' << format_number(b3) << '\n';
      plot << n << ' ' << format_number(b2) << ' ' << format_number(b3) << '\n';
    } catch (const error& e) {
      if (e.code() != errc::degenerate_denominator) throw;
      ++degenerate;
    }
    if (n > cfg.n_max / 2) break;
  }
  curve << "# degenerate_rows=" << degenerate << '\n';

  if (!cfg.plot_data.empty()) write_file(cfg.plot_data, plot.str());
  if (!cfg.curve_output.empty()) {
    write_file(cfg.curve_output, curve.str());
    return grid.str();
  }
  return grid.str() + "\n" + curve.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complexity-based classification and no-free-lunch experiments", "occam"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read `key = value` options from FILE; flags on the command line win");
  RunConfig cfg;

  app.add_option("--problem", cfg.problem_path, "Problem file: k, then `<feature> <label>` lines");
  app.add_option("--canonical", cfg.canonical_k, "Use the first-bit problem on B^K");
  app.add_option("--canonical-list", cfg.canonical_list, "Comma-separated K values for sweep");
  app.add_option("--mask", cfg.mask_path, "Mask file (one line of 0/1)");
  app.add_option("--mask-bits", cfg.mask_bits, "Mask given inline, e.g. 1100");
  app.add_option("--theta", cfg.theta, "Bernoulli training probability");
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--seeds", cfg.seeds, "Number of Bernoulli masks per configuration");
  app.add_option("--prefix", cfg.prefix, "Training prefix length for the prefix mask");
  app.add_option("--estimator", cfg.estimator, "kt:r=R or enum:L=..,S=..");
  app.add_option("--strategy", cfg.strategy, "exhaustive | greedy | beam:w=W");
  app.add_option("--baselines", cfg.baselines, "Comma-separated baselines to run next to A*");
  app.add_option("--profile", cfg.profile, "Bound constants: zeros | illustrative");
  app.add_option("-o,--output", cfg.output, "Write the main CSV here instead of standard output");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  app.add_flag("--timing", cfg.timing, "Fill runtime_ms (makes output run-dependent)");
  app.add_option("--size-x", cfg.size_x, "|X| for nfl");
  app.add_option("--size-y", cfg.size_y, "|Y| for nfl");
  app.add_option("--m", cfg.m, "Free lunch: X = B^m");
  app.add_option("--test-count", cfg.test_count, "Free lunch: number of test features");
  app.add_option("-L,--max-len", cfg.max_len, "Enumerator: maximum program length in bits");
  app.add_option("-S,--max-steps", cfg.max_steps, "Enumerator: step budget");
  app.add_flag("--uniform-prior", cfg.uniform_prior, "Free lunch: use the uniform prior instead of Mn");
  app.add_option("--prior-output", cfg.prior_output, "Free lunch: write the prior table here");
  app.add_option("--depth", cfg.depth, "Enumerate: table depth");
  app.add_option("--string", cfg.string_bits, "Complexity: target bit string");
  app.add_option("--side", cfg.side_bits, "Side information bit string");
  app.add_option("--grid-step", cfg.grid_step, "Bounds: entropy-inequality grid step");
  app.add_option("--km-f", cfg.km_f, "Bounds: KM(f;X) in bits");
  app.add_option("--km-x", cfg.km_x, "Bounds: KM(X) in bits");
  app.add_option("--bound-theta", cfg.bound_theta, "Bounds: training fraction");
  app.add_option("--n-min", cfg.n_min, "Bounds: smallest n (doubles up to --n-max)");
  app.add_option("--n-max", cfg.n_max, "Bounds: largest n");
  app.add_option("--curve-output", cfg.curve_output, "Bounds: write the bound curve CSV here");
  app.add_option("--plot-data", cfg.plot_data, "Bounds: whitespace-separated n bound2 bound3");
  app.add_option("--thetas", cfg.thetas, "Sweep: comma-separated theta values");

  struct Command {
    const char* name;
    const char* help;
    std::string (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"nfl", "Exact expected loss of every algorithm under the uniform prior", cmd_nfl},
      {"freelunch", "Expected loss of the simplicity-prior algorithm", cmd_freelunch},
      {"classify", "Run A* and baselines over Bernoulli and prefix masks", cmd_classify},
      {"complexity", "Estimate the code length of a string", cmd_complexity},
      {"enumerate", "Dump the M and Mn tables of the tiny reference machine", cmd_enumerate},
      {"bounds", "Entropy-inequality grid and loss-bound curves", cmd_bounds},
      {"sweep", "Classify over several problems, thetas and seeds", cmd_sweep},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int status = app.exit(e, help, err);
    out << help.str();
    return status;
  }

  try {
    for (const auto& c : commands) {
      if (!app.got_subcommand(c.name)) continue;
      const std::string data = c.run(cfg);
      if (cfg.output.empty()) {
        out << data;
      } else {
        write_file(cfg.output, data);
      }
      return 0;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace occam::cli
