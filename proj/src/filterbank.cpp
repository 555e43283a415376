#include "amra/filterbank.hpp"

#include <stdexcept>

namespace amra {

FilterBank::FilterBank(int dim, std::vector<BankItem> items, int separator)
    : dim_(dim), items_(std::move(items)), separator_(separator) {
  if (items_.empty()) throw std::invalid_argument("filter bank must not be empty");
  if (separator_ < 1 || separator_ > static_cast<int>(items_.size()))
    throw std::invalid_argument("separator must satisfy 1 <= s <= r");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const BankItem& it = items_[i];
    if (it.mask.dim() != dim_ || it.matrix.dim() != dim_)
      throw std::invalid_argument("filter bank item dimension mismatch");
    if (it.matrix.is_singular())
      throw std::invalid_argument("filter bank matrices must be nonsingular");
    const Band expected = static_cast<int>(i) < separator_ ? Band::low : Band::high;
    if (it.mask.band() != expected)
      throw std::invalid_argument("mask band labels inconsistent with separator");
  }
}

FilterBank FilterBank::with_separator(int separator) const {
  if (separator < 1 || separator > size())
    throw std::invalid_argument("separator must satisfy 1 <= s <= r");
  std::vector<BankItem> items;
  items.reserve(items_.size());
  for (int i = 0; i < size(); ++i) {
    const Band b = i < separator ? Band::low : Band::high;
    items.push_back({with_band(items_[i].mask, b), items_[i].matrix});
  }
  return FilterBank(dim_, std::move(items), separator);
}

}  // namespace amra
