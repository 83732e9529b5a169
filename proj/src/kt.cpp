#include "occam/kt.hpp"

#include <cmath>

#include "occam/error.hpp"

namespace occam::complexity {

KtModel::KtModel(unsigned order) : order_(order) {
  if (order > kMaxKtOrder) throw error(errc::out_of_range, "KT order must be at most " + std::to_string(kMaxKtOrder));
  const std::size_t contexts = (std::size_t{2} << order) - 1;
  zeros_.assign(contexts, 0);
  ones_.assign(contexts, 0);
}

std::size_t KtModel::context() const noexcept {
  const std::size_t h = std::min<std::size_t>(order_, history_.size());
  std::size_t value = 0;
  for (std::size_t i = history_.size() - h; i < history_.size(); ++i) value = (value << 1) | history_[i];
  return ((std::size_t{1} << h) - 1) + value;
}

double KtModel::cost(bool bit) const {
  const std::size_t ctx = context();
  const double c0 = zeros_[ctx];
  const double c1 = ones_[ctx];
  return -std::log2(((bit ? c1 : c0) + 0.5) / (c0 + c1 + 1.0));
}

void KtModel::update(bool bit) {
  const std::size_t ctx = context();
  ++(bit ? ones_ : zeros_)[ctx];
  history_.push_back(bit ? 1 : 0);
}

void KtModel::undo() {
  if (history_.empty()) throw error(errc::out_of_range, "nothing to undo");
  const bool bit = history_.back() != 0;
  history_.pop_back();
  --(bit ? ones_ : zeros_)[context()];
}

double kt_code_length(const BitString& target, const BitString& warm, unsigned order) {
  KtModel model(order);
  model.update(warm);
  double bits = 0.0;
  for (auto b : target) {
    bits += model.cost(b != 0);
    model.update(b != 0);
  }
  return bits;
}

}  // namespace occam::complexity
