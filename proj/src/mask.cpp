#include "amra/mask.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace amra {

Mask::Mask(Box support, std::vector<cdouble> data, Band band)
    : support_(std::move(support)), data_(std::move(data)), band_(band) {
  if (static_cast<std::int64_t>(data_.size()) != support_.size())
    throw std::invalid_argument("mask data size does not match support box");
  for (auto& v : data_) {  // canonicalize -0.0 so serialized forms compare equal
    if (v.real() == 0.0) v.real(0.0);
    if (v.imag() == 0.0) v.imag(0.0);
  }
  trim();
}

Mask::Mask(Box support, std::vector<double> data, Band band)
    : support_(std::move(support)), band_(band) {
  data_.assign(data.begin(), data.end());
  if (static_cast<std::int64_t>(data_.size()) != support_.size())
    throw std::invalid_argument("mask data size does not match support box");
  trim();
}

Mask Mask::delta(int dim, Band band) {
  return Mask(Box(IVec(dim, 0), IVec(dim, 1)), std::vector<cdouble>{cdouble(1.0, 0.0)}, band);
}

cdouble Mask::at(const IVec& k) const {
  if (!support_.contains(k)) return cdouble(0.0, 0.0);
  return data_[support_.flat(k)];
}

double Mask::abs_sum() const {
  double s = 0;
  for (const auto& v : data_) s += std::abs(v);
  return s;
}

bool Mask::operator==(const Mask& o) const {
  return band_ == o.band_ && support_ == o.support_ && data_ == o.data_;
}

void Mask::trim() {
  const int d = dim();
  if (support_.is_empty()) {
    support_ = Box::empty(d);
    data_.clear();
    return;
  }
  const auto is_zero = [](const cdouble& v) { return v.real() == 0.0 && v.imag() == 0.0; };

  Box b = support_;
  for (int axis = 0; axis < d; ++axis) {
    while (b.shape[axis] > 0) {  // strip leading all-zero slab
      bool all_zero = true;
      Box slab = b;
      slab.shape[axis] = 1;
      for_each_point(slab, [&](const IVec& p) {
        if (!is_zero(data_[support_.flat(p)])) all_zero = false;
      });
      if (!all_zero) break;
      ++b.lo[axis];
      --b.shape[axis];
    }
    while (b.shape[axis] > 0) {  // strip trailing all-zero slab
      bool all_zero = true;
      Box slab = b;
      slab.lo[axis] = b.lo[axis] + b.shape[axis] - 1;
      slab.shape[axis] = 1;
      for_each_point(slab, [&](const IVec& p) {
        if (!is_zero(data_[support_.flat(p)])) all_zero = false;
      });
      if (!all_zero) break;
      --b.shape[axis];
    }
    if (b.shape[axis] == 0) {
      support_ = Box::empty(d);
      data_.clear();
      return;
    }
  }
  if (b == support_) return;
  std::vector<cdouble> nd(static_cast<std::size_t>(b.size()));
  for_each_point(b, [&](const IVec& p) { nd[b.flat(p)] = data_[support_.flat(p)]; });
  support_ = b;
  data_ = std::move(nd);
}

cdouble symbol(const Mask& a, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != a.dim())
    throw std::invalid_argument("symbol argument dimension mismatch");
  cdouble s(0.0, 0.0);
  for_each_point(a.support(), [&](const IVec& k) {
    double phase = 0;
    for (int i = 0; i < a.dim(); ++i) phase += static_cast<double>(k[i]) * xi[i];
    s += a.at(k) * std::polar(1.0, -phase);
  });
  return s;
}

cdouble correlation(const Mask& a, const Mask& b, const IVec& m, const RationalVec& omega) {
  if (a.dim() != b.dim() || static_cast<int>(m.size()) != a.dim() ||
      static_cast<int>(omega.size()) != a.dim())
    throw std::invalid_argument("correlation dimension mismatch");
  cdouble s(0.0, 0.0);
  for_each_point(b.support(), [&](const IVec& n) {
    const cdouble bn = b.at(n);
    if (bn.real() == 0.0 && bn.imag() == 0.0) return;
    IVec mn(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) mn[i] = m[i] + n[i];
    const cdouble an = a.at(mn);
    if (an.real() == 0.0 && an.imag() == 0.0) return;
    Rational q(0);
    for (std::size_t i = 0; i < m.size(); ++i) q = q + omega[i] * Rational(n[i]);
    q = q.mod1();
    const double angle = -2.0 * std::numbers::pi * q.to_double();
    s += an * std::conj(bn) * std::polar(1.0, angle);
  });
  return s;
}

Mask tensor(const std::vector<Mask>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor of an empty factor list");
  const int d = static_cast<int>(factors.size());
  IVec lo(d), shape(d);
  Band band = Band::low;
  for (int i = 0; i < d; ++i) {
    if (factors[i].dim() != 1) throw std::invalid_argument("tensor factors must be 1-D");
    if (factors[i].is_empty()) return Mask(Box::empty(d), std::vector<cdouble>{}, band);
    lo[i] = factors[i].support().lo[0];
    shape[i] = factors[i].support().shape[0];
    if (factors[i].band() == Band::high) band = Band::high;
  }
  Box box(lo, shape);
  std::vector<cdouble> data(static_cast<std::size_t>(box.size()));
  for_each_point(box, [&](const IVec& p) {
    cdouble v(1.0, 0.0);
    for (int i = 0; i < d; ++i) v *= factors[i].at(IVec{p[i]});
    data[box.flat(p)] = v;
  });
  return Mask(std::move(box), std::move(data), band);
}

Mask remap_by_unimodular(const Mask& u, const IntMatrix& e) {
  if (e.dim() != u.dim()) throw std::invalid_argument("remap dimension mismatch");
  if (std::abs(e.determinant()) != 1)
    throw std::invalid_argument("remap requires a unimodular matrix");
  if (u.is_empty()) return u;
  Box out = image_box(e, u.support());
  std::vector<cdouble> data(static_cast<std::size_t>(out.size()), cdouble(0.0, 0.0));
  for_each_point(u.support(), [&](const IVec& m) { data[out.flat(e * m)] = u.at(m); });
  return Mask(std::move(out), std::move(data), u.band());
}

Mask scale(const Mask& a, double c) {
  std::vector<cdouble> data = a.data();
  for (auto& v : data) v *= c;
  return Mask(a.support(), std::move(data), a.band());
}

Mask with_band(const Mask& a, Band band) { return Mask(a.support(), a.data(), band); }

}  // namespace amra
