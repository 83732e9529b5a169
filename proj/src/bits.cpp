#include "occam/bits.hpp"

#include <algorithm>

#include "occam/error.hpp"

namespace occam {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw error(errc::parse_error, "bit value out of range");
  }
}

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw error(errc::parse_error, "bit value out of range");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw error(errc::parse_error, "not a bit string: '" + std::string(text) + "'");
    }
  }
  return BitString(std::move(bits));
}

BitString BitString::from_value(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> bits(width, 0);
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    bits[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  }
  return BitString(std::move(bits));
}

BitString& BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  return *this;
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitString BitString::prefix(std::size_t length) const {
  if (length > bits_.size()) throw error(errc::out_of_range, "prefix longer than string");
  return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length)));
}

BitString BitString::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(), [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
  return BitString(std::move(out));
}

bool BitString::is_prefix_of(const BitString& other) const noexcept {
  return bits_.size() <= other.bits_.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::uint64_t BitString::value() const {
  if (bits_.size() > 64) throw error(errc::out_of_range, "bit string too long for a 64-bit value");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw error(errc::length_mismatch, "xor of strings with different lengths");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return BitString(std::move(out));
}

BitString repeat(const BitString& s, std::size_t times) {
  BitString out;
  for (std::size_t i = 0; i < times; ++i) out.append(s);
  return out;
}

}  // namespace occam
