#include "amra/support.hpp"

#include <algorithm>
#include <stdexcept>

namespace amra {

Box::Box(IVec lo_, IVec shape_) : lo(std::move(lo_)), shape(std::move(shape_)) {
  if (lo.size() != shape.size()) throw std::invalid_argument("box lo/shape size mismatch");
  for (auto s : shape)
    if (s < 0) throw std::invalid_argument("box shape must be nonnegative");
}

Box Box::empty(int dim) { return Box(IVec(dim, 0), IVec(dim, 0)); }

Box Box::single(const IVec& p) { return Box(p, IVec(p.size(), 1)); }

bool Box::is_empty() const {
  for (auto s : shape)
    if (s == 0) return true;
  return lo.empty();
}

std::int64_t Box::size() const {
  if (lo.empty()) return 0;
  std::int64_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

IVec Box::hi_inclusive() const {
  IVec h(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) h[i] = lo[i] + shape[i] - 1;
  return h;
}

bool Box::contains(const IVec& p) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (p[i] < lo[i] || p[i] >= lo[i] + shape[i]) return false;
  return !lo.empty();
}

std::int64_t Box::flat(const IVec& p) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) idx = idx * shape[i] + (p[i] - lo[i]);
  return idx;
}

Box Box::shifted(const IVec& t) const {
  IVec nlo(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) nlo[i] = lo[i] + t[i];
  return Box(nlo, shape);
}

Box Box::hull(const Box& o) const {
  if (is_empty()) return o;
  if (o.is_empty()) return *this;
  IVec nlo(lo.size()), nshape(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    nlo[i] = std::min(lo[i], o.lo[i]);
    const std::int64_t hi = std::max(lo[i] + shape[i], o.lo[i] + o.shape[i]);
    nshape[i] = hi - nlo[i];
  }
  return Box(nlo, nshape);
}

Box Box::intersect(const Box& o) const {
  if (is_empty() || o.is_empty()) return Box::empty(dim());
  IVec nlo(lo.size()), nshape(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    nlo[i] = std::max(lo[i], o.lo[i]);
    const std::int64_t hi = std::min(lo[i] + shape[i], o.lo[i] + o.shape[i]);
    if (hi <= nlo[i]) return Box::empty(dim());
    nshape[i] = hi - nlo[i];
  }
  return Box(nlo, nshape);
}

Box Box::sum(const Box& o) const {
  if (is_empty() || o.is_empty()) return Box::empty(dim());
  IVec nlo(lo.size()), nshape(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    nlo[i] = lo[i] + o.lo[i];
    nshape[i] = shape[i] + o.shape[i] - 1;
  }
  return Box(nlo, nshape);
}

Box Box::difference(const Box& o) const {
  if (is_empty() || o.is_empty()) return Box::empty(dim());
  IVec nlo(lo.size()), nshape(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    nlo[i] = lo[i] - (o.lo[i] + o.shape[i] - 1);
    nshape[i] = shape[i] + o.shape[i] - 1;
  }
  return Box(nlo, nshape);
}

Box rational_preimage_box(const IntMatrix& m, const Box& b) {
  const int d = m.dim();
  if (b.is_empty()) return Box::empty(d);
  const RationalMatrix inv = RationalMatrix::inverse_of(m);
  const IVec bl = b.lo, bh = b.hi_inclusive();

  std::vector<Rational> mins(d), maxs(d);
  bool first = true;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    IVec corner(d);
    for (int i = 0; i < d; ++i) corner[i] = ((mask >> i) & 1) ? bh[i] : bl[i];
    const RationalVec y = inv * corner;
    for (int i = 0; i < d; ++i) {
      if (first || y[i] < mins[i]) mins[i] = y[i];
      if (first || maxs[i] < y[i]) maxs[i] = y[i];
    }
    first = false;
  }

  IVec lo(d), shape(d);
  for (int i = 0; i < d; ++i) {
    // ceil(mins), floor(maxs), exactly
    const Rational& a = mins[i];
    const Rational& z = maxs[i];
    const std::int64_t ceil_a = a.num >= 0 ? (a.num + a.den - 1) / a.den
                                           : -((-a.num) / a.den);
    const std::int64_t floor_z = z.num >= 0 ? z.num / z.den
                                            : -((-z.num + z.den - 1) / z.den);
    lo[i] = ceil_a;
    if (floor_z < ceil_a) return Box::empty(d);
    shape[i] = floor_z - ceil_a + 1;
  }
  return Box(lo, shape);
}

Box image_box(const IntMatrix& m, const Box& b) {
  const int d = m.dim();
  if (b.is_empty()) return Box::empty(d);
  const IVec bl = b.lo, bh = b.hi_inclusive();
  IVec lo(d), hi(d);
  bool first = true;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    IVec corner(d);
    for (int i = 0; i < d; ++i) corner[i] = ((mask >> i) & 1) ? bh[i] : bl[i];
    const IVec v = m * corner;
    for (int i = 0; i < d; ++i) {
      if (first || v[i] < lo[i]) lo[i] = v[i];
      if (first || v[i] > hi[i]) hi[i] = v[i];
    }
    first = false;
  }
  IVec shape(d);
  for (int i = 0; i < d; ++i) shape[i] = hi[i] - lo[i] + 1;
  return Box(lo, shape);
}

}  // namespace amra
