#pragma once

#include <complex>
#include <vector>

#include "amra/rational.hpp"
#include "amra/support.hpp"

namespace amra {

using cdouble = std::complex<double>;

enum class Band { low, high };

/// Finitely supported filter mask on Z^d. Coefficients are stored densely
/// over a minimal support box (exact zero boundary slabs are trimmed at
/// construction). The symbol uses the convention
///   symbol(xi) = sum_k a(k) exp(-i k.xi).
class Mask {
 public:
  Mask(Box support, std::vector<cdouble> data, Band band);
  Mask(Box support, std::vector<double> data, Band band);

  /// Dirac mask: single coefficient 1 at the origin.
  static Mask delta(int dim, Band band = Band::low);

  int dim() const { return support_.dim(); }
  const Box& support() const { return support_; }
  Band band() const { return band_; }
  bool is_empty() const { return support_.is_empty(); }

  cdouble at(const IVec& k) const;
  const std::vector<cdouble>& data() const { return data_; }

  double abs_sum() const;

  bool operator==(const Mask& o) const;

 private:
  Box support_;
  std::vector<cdouble> data_;
  Band band_;

  void trim();
};

/// symbol(a, xi) = sum_k a(k) e^{-i k.xi}, by direct summation.
cdouble symbol(const Mask& a, const std::vector<double>& xi);

/// c(m, omega) = sum_n a(m + n) conj(b(n)) e^{-i 2 pi omega.n}.
/// These are the trigonometric-polynomial coefficients consumed by the
/// extension-principle checker.
cdouble correlation(const Mask& a, const Mask& b, const IVec& m, const RationalVec& omega);

/// Tensor product of one-dimensional masks; band is high if any factor
/// is high, low otherwise.
Mask tensor(const std::vector<Mask>& factors);

/// Coordinate change by a unimodular matrix: result(E m) = u(m), so that
/// symbol(result, xi) == symbol(u, E^T xi).
Mask remap_by_unimodular(const Mask& u, const IntMatrix& e);

Mask scale(const Mask& a, double c);

Mask with_band(const Mask& a, Band band);

}  // namespace amra
