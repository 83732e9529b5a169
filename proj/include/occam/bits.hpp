#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace occam {

// A finite binary string. Bit i is the (i+1)-th symbol; ordering is
// lexicographic, which for equal lengths equals numeric order of value().
class BitString {
 public:
  using value_type = std::uint8_t;
  using const_iterator = std::vector<std::uint8_t>::const_iterator;

  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);
  BitString(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters; anything else is a parse_error.
  static BitString parse(std::string_view text);
  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }
  static BitString ones(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 1)); }
  // The `width`-bit big-endian encoding of `value`.
  static BitString from_value(std::uint64_t value, std::size_t width);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
  [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  [[nodiscard]] const_iterator begin() const noexcept { return bits_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return bits_.end(); }
  [[nodiscard]] const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

  void set(std::size_t i, bool bit) { bits_[i] = bit ? 1 : 0; }
  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void pop_back() { bits_.pop_back(); }
  BitString& append(const BitString& other);

  [[nodiscard]] std::size_t count_ones() const noexcept;
  [[nodiscard]] std::size_t count_zeros() const noexcept { return size() - count_ones(); }
  [[nodiscard]] BitString prefix(std::size_t length) const;
  [[nodiscard]] BitString complement() const;
  [[nodiscard]] bool is_prefix_of(const BitString& other) const noexcept;
  // Big-endian value; requires size() <= 64.
  [[nodiscard]] std::uint64_t value() const;
  [[nodiscard]] std::string str() const;

  friend BitString operator+(BitString lhs, const BitString& rhs) { return lhs.append(rhs); }
  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

// Bitwise exclusive-or of equal-length strings.
BitString operator^(const BitString& a, const BitString& b);

// s repeated `times` times.
BitString repeat(const BitString& s, std::size_t times);

}  // namespace occam
