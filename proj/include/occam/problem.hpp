#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "occam/bits.hpp"

namespace occam::core {

// A binary classification problem: n distinct k-bit features in a fixed
// order, each with its true label.
class Problem {
 public:
  // Throws invalid_problem on duplicate or wrong-width features, a label
  // count that differs from the feature count, or an empty feature list.
  Problem(std::size_t k, std::vector<BitString> features, BitString labels);

  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t size() const noexcept { return features_.size(); }
  [[nodiscard]] const std::vector<BitString>& features() const noexcept { return features_; }
  [[nodiscard]] const BitString& labels() const noexcept { return labels_; }

  // Same features, different labels.
  [[nodiscard]] Problem relabel(BitString labels) const;

 private:
  std::size_t k_;
  std::vector<BitString> features_;
  BitString labels_;
};

// All of B^k in lexicographic order, labelled by `rule`.
Problem lexicographic_problem(std::size_t k, const std::function<bool(const BitString&)>& rule);

// The canonical demo problem: B^k lexicographic, label = first feature bit.
Problem first_bit_problem(std::size_t k);

// The first `count` strings of B^k in lexicographic order, with
// k = max(1, ceil(log2 count)), all labels 0. Used where only the feature
// set matters.
Problem feature_grid(std::size_t count);

// y = f(x_1) ... f(x_n)
[[nodiscard]] BitString label_string(const Problem& problem);
// x_1 x_2 ... x_n, n*k bits
[[nodiscard]] BitString feature_string(const Problem& problem);

// Training indicator: bit i is 1 iff feature i is in the training set.
class Mask {
 public:
  Mask() = default;
  explicit Mask(BitString bits) : bits_(std::move(bits)), ones_(bits_.count_ones()) {}

  [[nodiscard]] const BitString& bits() const noexcept { return bits_; }
  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_; }
  [[nodiscard]] std::size_t zeros() const noexcept { return bits_.size() - ones_; }
  [[nodiscard]] bool is_train(std::size_t i) const { return bits_[i] != 0; }
  // #1(chi) / n
  [[nodiscard]] double theta_bar() const;

  friend bool operator==(const Mask& a, const Mask& b) { return a.bits_ == b.bits_; }

 private:
  BitString bits_;
  std::size_t ones_ = 0;
};

// Positions are 0-based here; the CLI prints them as stored.
struct Split {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

[[nodiscard]] Split split_from_mask(const Mask& mask);

// Bit i is 1 with probability theta, drawn as next_unit() < theta from a
// SplitMix64 stream seeded with `seed`.
[[nodiscard]] Mask bernoulli_mask(std::size_t n, double theta, std::uint64_t seed);

// 1^m 0^(n-m)
[[nodiscard]] Mask prefix_mask(std::size_t n, std::size_t m);

// Exact misclassification rate over the test set.
struct LossValue {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  // Cross-multiplied; fractions are not reduced.
  friend bool operator==(const LossValue& a, const LossValue& b) noexcept {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
};

// `predictions` holds one label per test position, in ascending position order.
[[nodiscard]] LossValue loss(const BitString& predictions, const Problem& problem, const Mask& mask);

// Symbol-valued variant used for |Y| > 2 (truth and predictions on test
// positions only).
[[nodiscard]] LossValue symbol_loss(const std::vector<std::uint8_t>& predictions,
                                    const std::vector<std::uint8_t>& truth);

// What a learning algorithm is allowed to see: every feature, the mask, and
// labels at training positions only.
class TrainingView {
 public:
  // Binary problem; copies labels where mask is 1.
  TrainingView(const Problem& problem, const Mask& mask);
  // General alphabet; `labels` must have one symbol per feature.
  TrainingView(const Problem& features, const Mask& mask, const std::vector<std::uint8_t>& labels,
               unsigned alphabet);

  [[nodiscard]] std::size_t size() const noexcept { return features_.size(); }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] unsigned alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] const std::vector<BitString>& features() const noexcept { return features_; }
  [[nodiscard]] const Mask& mask() const noexcept { return mask_; }
  [[nodiscard]] const Split& split() const noexcept { return split_; }
  // One symbol per training position, ascending.
  [[nodiscard]] const std::vector<std::uint8_t>& train_labels() const noexcept { return train_labels_; }
  [[nodiscard]] BitString feature_string() const;

 private:
  std::size_t k_;
  unsigned alphabet_;
  std::vector<BitString> features_;
  Mask mask_;
  Split split_;
  std::vector<std::uint8_t> train_labels_;
};

// Problem file: first non-comment line is k, then `<feature> <label>` lines;
// '#' starts a comment line.
Problem parse_problem(std::istream& in);
Problem load_problem(const std::filesystem::path& path);
void write_problem(std::ostream& out, const Problem& problem);

// Mask file: a single line of '0'/'1'.
Mask parse_mask(std::istream& in);
Mask load_mask(const std::filesystem::path& path);

}  // namespace occam::core
