#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "occam/analysis.hpp"
#include "occam/classifier.hpp"
#include "occam/estimator.hpp"
#include "occam/problem.hpp"

namespace occam::classify {

// One result row. Column order is fixed by write_report_header().
struct ExperimentReport {
  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double theta = 0.0;
  std::string mask_kind;
  std::string estimator;
  std::string strategy;
  core::LossValue loss;
  double theta_bar = 0.0;
  double km_f_bits = 0.0;
  double km_x_bits = 0.0;
  double bound2 = 0.0;
  double bound3 = 0.0;
  double runtime_ms = 0.0;
};

struct EvaluateOptions {
  std::string experiment = "classify";
  std::string mask_kind = "file";
  double theta = 0.0;  // nominal training fraction; <= 0 means use theta_bar
  std::uint64_t seed = 0;
  // Estimator for KM(f;X) and KM(X) in the report; A* rows use their own.
  complexity::EstimatorSpec complexity_estimator = complexity::EstimatorSpec::kt(2);
  analysis::BoundParams bounds{};
  bool timing = false;  // runtime_ms stays 0 unless set, keeping rows reproducible
};

// Runs the algorithm, scores it, and fills in complexities and both bounds.
// A bound whose denominator degenerates is reported as NaN; a complexity
// the enumerator cannot bound is reported as +inf.
[[nodiscard]] ExperimentReport evaluate(const core::Problem& problem, const core::Mask& mask,
                                        const AlgorithmSpec& algorithm, const EvaluateOptions& options);

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const ExperimentReport& row);

// Quotes a CSV cell when it contains a comma, quote or newline.
[[nodiscard]] std::string csv_field(const std::string& text);

// Shortest round-trip-stable text for CSV cells: "%.12g", plus nan/inf.
[[nodiscard]] std::string format_number(double v);

}  // namespace occam::classify
