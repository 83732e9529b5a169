#include "occam/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "occam/error.hpp"

namespace occam::classify {

namespace {

double complexity_or_inf(const BitString& y, const BitString& x, const complexity::EstimatorSpec& est) {
  try {
    return complexity::conditional_complexity(y, x, est).bits;
  } catch (const error& e) {
    if (e.code() == errc::no_program_found) return std::numeric_limits<double>::infinity();
    throw;
  }
}

template <typename F>
double bound_or_nan(F&& f) {
  try {
    return f();
  } catch (const error& e) {
    if (e.code() == errc::degenerate_denominator || e.code() == errc::domain_error) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    throw;
  }
}

}  // namespace

ExperimentReport evaluate(const core::Problem& problem, const core::Mask& mask, const AlgorithmSpec& algorithm,
                          const EvaluateOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const core::TrainingView view(problem, mask);
  const auto predictions = make_learner(algorithm)(view);

  ExperimentReport row;
  row.experiment = options.experiment + "/" + algorithm.name();
  row.seed = options.seed;
  row.n = problem.size();
  row.k = problem.k();
  row.theta_bar = mask.theta_bar();
  row.theta = options.theta > 0.0 ? options.theta : row.theta_bar;
  row.mask_kind = options.mask_kind;
  row.loss = core::loss(BitString(predictions), problem, mask);

  const bool is_astar = algorithm.kind == AlgorithmKind::astar;
  const auto& est = is_astar ? algorithm.estimator : options.complexity_estimator;
  row.estimator = est.str();
  row.strategy = is_astar ? algorithm.strategy.str() : "-";

  const BitString features = core::feature_string(problem);
  row.km_f_bits = complexity_or_inf(problem.labels(), features, est);
  row.km_x_bits = complexity_or_inf(features, BitString{}, est);
  const double n = static_cast<double>(row.n);
  row.bound2 = bound_or_nan(
      [&] { return analysis::theorem2_bound(row.km_f_bits, row.km_x_bits, n, row.theta, options.bounds); });
  row.bound3 = bound_or_nan([&] { return analysis::theorem3_bound(row.km_f_bits, n, n, row.theta, options.bounds); });

  if (options.timing) {
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_report_header(std::ostream& out) {
  out << "experiment,seed,n,k,theta,mask_kind,estimator,strategy,loss_num,loss_den,alpha,theta_bar,"
         "km_f_bits,km_x_bits,bound2,bound3,runtime_ms\n";
}

void write_report_row(std::ostream& out, const ExperimentReport& row) {
  out << csv_field(row.experiment) << ',' << row.seed << ',' << row.n << ',' << row.k << ','
      << format_number(row.theta) << ',' << row.mask_kind << ',' << csv_field(row.estimator) << ','
      << csv_field(row.strategy) << ',' << row.loss.numerator << ','
      << row.loss.denominator << ',' << format_number(row.loss.value()) << ',' << format_number(row.theta_bar) << ','
      << format_number(row.km_f_bits) << ',' << format_number(row.km_x_bits) << ',' << format_number(row.bound2)
      << ',' << format_number(row.bound3) << ',' << format_number(row.runtime_ms) << '\n';
}

}  // namespace occam::classify
