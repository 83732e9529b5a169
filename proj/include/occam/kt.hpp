#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "occam/bits.hpp"

namespace occam::complexity {

inline constexpr unsigned kMaxKtOrder = 20;

// Order-r context model with Krichevsky-Trofimov estimates
//   p(1 | ctx) = (c1 + 1/2) / (c0 + c1 + 1),
// counts starting at zero. The context of a bit is the preceding
// min(r, position) bits; histories shorter than r are distinct contexts.
class KtModel {
 public:
  explicit KtModel(unsigned order);

  [[nodiscard]] unsigned order() const noexcept { return order_; }
  // -log2 p(bit | current context), without updating.
  [[nodiscard]] double cost(bool bit) const;
  void update(bool bit);
  // Reverts the most recent update.
  void undo();
  void update(const BitString& bits) {
    for (auto b : bits) update(b != 0);
  }
  [[nodiscard]] std::size_t seen() const noexcept { return history_.size(); }

 private:
  [[nodiscard]] std::size_t context() const noexcept;

  unsigned order_;
  std::vector<std::uint8_t> history_;
  std::vector<std::uint32_t> zeros_;
  std::vector<std::uint32_t> ones_;
};

// Ideal code length of `target` after the model has been trained on `warm`.
// Warm bits are free. Costs are summed in target order.
[[nodiscard]] double kt_code_length(const BitString& target, const BitString& warm, unsigned order);

}  // namespace occam::complexity
