#include "occam/problem.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "occam/error.hpp"
#include "occam/rng.hpp"

namespace occam::core {

Problem::Problem(std::size_t k, std::vector<BitString> features, BitString labels)
    : k_(k), features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.empty()) throw error(errc::invalid_problem, "problem has no features");
  if (labels_.size() != features_.size()) {
    throw error(errc::invalid_problem, "label count " + std::to_string(labels_.size()) +
                                           " differs from feature count " + std::to_string(features_.size()));
  }
  std::set<BitString> seen;
  for (const auto& x : features_) {
    if (x.size() != k_) throw error(errc::invalid_problem, "feature " + x.str() + " is not " + std::to_string(k_) + " bits");
    if (!seen.insert(x).second) throw error(errc::invalid_problem, "duplicate feature " + x.str());
  }
}

Problem Problem::relabel(BitString labels) const { return Problem(k_, features_, std::move(labels)); }

Problem lexicographic_problem(std::size_t k, const std::function<bool(const BitString&)>& rule) {
  if (k == 0 || k > 24) throw error(errc::out_of_range, "feature width must be in [1, 24]");
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<BitString> features;
  features.reserve(n);
  BitString labels;
  for (std::uint64_t v = 0; v < n; ++v) {
    features.push_back(BitString::from_value(v, k));
    labels.push_back(rule(features.back()));
  }
  return Problem(k, std::move(features), std::move(labels));
}

Problem first_bit_problem(std::size_t k) {
  return lexicographic_problem(k, [](const BitString& x) { return x[0] == 1; });
}

Problem feature_grid(std::size_t count) {
  if (count == 0) throw error(errc::invalid_problem, "feature set must be non-empty");
  std::size_t k = 1;
  while ((std::uint64_t{1} << k) < count) ++k;
  std::vector<BitString> features;
  for (std::uint64_t v = 0; v < count; ++v) features.push_back(BitString::from_value(v, k));
  return Problem(k, std::move(features), BitString::zeros(count));
}

BitString label_string(const Problem& problem) { return problem.labels(); }

BitString feature_string(const Problem& problem) {
  BitString out;
  for (const auto& x : problem.features()) out.append(x);
  return out;
}

double Mask::theta_bar() const {
  return bits_.empty() ? 0.0 : static_cast<double>(ones_) / static_cast<double>(bits_.size());
}

Split split_from_mask(const Mask& mask) {
  Split split;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    (mask.is_train(i) ? split.train_indices : split.test_indices).push_back(i);
  }
  return split;
}

Mask bernoulli_mask(std::size_t n, double theta, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0)) throw error(errc::invalid_theta, "theta must lie in (0,1)");
  if (n == 0) throw error(errc::out_of_range, "mask length must be at least 1");
  SplitMix64 rng(seed);
  BitString bits;
  for (std::size_t i = 0; i < n; ++i) bits.push_back(rng.next_unit() < theta);
  return Mask(std::move(bits));
}

Mask prefix_mask(std::size_t n, std::size_t m) {
  if (m > n) throw error(errc::out_of_range, "prefix length exceeds mask length");
  BitString bits = BitString::ones(m);
  bits.append(BitString::zeros(n - m));
  return Mask(std::move(bits));
}

LossValue symbol_loss(const std::vector<std::uint8_t>& predictions, const std::vector<std::uint8_t>& truth) {
  if (truth.empty()) throw error(errc::empty_test_set, "no test positions");
  if (predictions.size() != truth.size()) throw error(errc::length_mismatch, "prediction count differs from test count");
  std::uint64_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predictions[i] != truth[i] ? 1 : 0;
  return {wrong, truth.size()};
}

LossValue loss(const BitString& predictions, const Problem& problem, const Mask& mask) {
  if (mask.size() != problem.size()) throw error(errc::length_mismatch, "mask length differs from problem size");
  if (mask.zeros() == 0) throw error(errc::empty_test_set, "mask has no test positions");
  std::vector<std::uint8_t> truth;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.is_train(i)) truth.push_back(problem.labels()[i]);
  }
  return symbol_loss(predictions.raw(), truth);
}

TrainingView::TrainingView(const Problem& problem, const Mask& mask)
    : TrainingView(problem, mask, problem.labels().raw(), 2) {}

TrainingView::TrainingView(const Problem& features, const Mask& mask, const std::vector<std::uint8_t>& labels,
                           unsigned alphabet)
    : k_(features.k()), alphabet_(alphabet), features_(features.features()), mask_(mask), split_(split_from_mask(mask)) {
  if (mask.size() != features_.size()) throw error(errc::length_mismatch, "mask length differs from problem size");
  if (labels.size() != features_.size()) throw error(errc::length_mismatch, "label count differs from problem size");
  train_labels_.reserve(split_.train_indices.size());
  for (auto i : split_.train_indices) {
    if (labels[i] >= alphabet) throw error(errc::out_of_range, "label outside alphabet");
    train_labels_.push_back(labels[i]);
  }
}

BitString TrainingView::feature_string() const {
  BitString out;
  for (const auto& x : features_) out.append(x);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Problem parse_problem(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> k;
  std::vector<BitString> features;
  BitString labels;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    if (!k) {
      long long width = -1;
      std::string rest;
      if (!(fields >> width) || width <= 0 || (fields >> rest)) {
        throw error(errc::parse_error, "line " + std::to_string(line_no) + ": expected feature width k");
      }
      k = static_cast<std::size_t>(width);
      continue;
    }
    std::string feature, label, rest;
    if (!(fields >> feature >> label) || (fields >> rest) || (label != "0" && label != "1")) {
      throw error(errc::parse_error, "line " + std::to_string(line_no) + ": expected '<feature> <0|1>'");
    }
    features.push_back(BitString::parse(feature));
    labels.push_back(label == "1");
  }
  if (!k) throw error(errc::parse_error, "missing feature width line");
  return Problem(*k, std::move(features), std::move(labels));
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open problem file " + path.string());
  return parse_problem(in);
}

void write_problem(std::ostream& out, const Problem& problem) {
  out << problem.k() << '\n';
  for (std::size_t i = 0; i < problem.size(); ++i) {
    out << problem.features()[i].str() << ' ' << static_cast<int>(problem.labels()[i]) << '\n';
  }
}

Mask parse_mask(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    return Mask(BitString::parse(line));
  }
  throw error(errc::parse_error, "mask file is empty");
}

Mask load_mask(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open mask file " + path.string());
  return parse_mask(in);
}

}  // namespace occam::core
