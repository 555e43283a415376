#pragma once

#include <vector>

#include "amra/intmat.hpp"
#include "amra/mask.hpp"

namespace amra {

/// One analysis/synthesis channel: a mask together with its sampling matrix.
struct BankItem {
  Mask mask;
  IntMatrix matrix;
};

/// Ordered filter bank for one expansion step. Items 0..separator-1 are the
/// low-pass channels (decomposed further by the tree transform), the rest
/// are high-pass. Band labels of the masks are kept consistent with the
/// separator.
class FilterBank {
 public:
  FilterBank(int dim, std::vector<BankItem> items, int separator);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(items_.size()); }
  int separator() const { return separator_; }
  const BankItem& item(int i) const { return items_[i]; }
  const std::vector<BankItem>& items() const { return items_; }

  bool is_low(int i) const { return i < separator_; }

  /// Same channels with a different low/high split; masks are relabeled.
  FilterBank with_separator(int separator) const;

 private:
  int dim_;
  std::vector<BankItem> items_;
  int separator_;
};

}  // namespace amra
