#pragma once

#include <complex>
#include <vector>

#include "amra/support.hpp"

namespace amra {

using cdouble = std::complex<double>;

/// Finitely supported data array on Z^d (value 0 outside the stored box).
/// Two signals are equal when they are equal as functions on Z^d; the
/// stored offsets may differ.
class Signal {
 public:
  Signal() = default;
  explicit Signal(int dim) : box_(Box::empty(dim)) {}
  Signal(Box box, std::vector<cdouble> data);
  Signal(Box box, std::vector<double> data);

  static Signal delta(int dim, const IVec& at = {});

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  bool is_empty() const { return box_.is_empty(); }

  cdouble at(const IVec& k) const;
  void set(const IVec& k, cdouble v);  // k must lie inside the box
  const std::vector<cdouble>& data() const { return data_; }
  std::vector<cdouble>& data() { return data_; }

  double norm_sq() const;          // sum |v(k)|^2
  double max_abs() const;
  double max_abs_imag() const;

  /// Crop to the minimal box containing all exactly nonzero entries.
  Signal trimmed() const;

 private:
  Box box_;
  std::vector<cdouble> data_;
};

/// sup_k |u(k) - v(k)| over Z^d.
double max_abs_diff(const Signal& u, const Signal& v);

/// Equality as functions on Z^d (exact).
bool equal_as_functions(const Signal& u, const Signal& v);

Signal add(const Signal& u, const Signal& v);
Signal scaled(const Signal& u, cdouble c);

}  // namespace amra
