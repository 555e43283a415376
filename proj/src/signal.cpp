#include "amra/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace amra {

Signal::Signal(Box box, std::vector<cdouble> data) : box_(std::move(box)), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != box_.size())
    throw std::invalid_argument("signal data size does not match box");
}

Signal::Signal(Box box, std::vector<double> data) : box_(std::move(box)) {
  data_.assign(data.begin(), data.end());
  if (static_cast<std::int64_t>(data_.size()) != box_.size())
    throw std::invalid_argument("signal data size does not match box");
}

Signal Signal::delta(int dim, const IVec& at) {
  IVec p = at.empty() ? IVec(dim, 0) : at;
  return Signal(Box::single(p), std::vector<cdouble>{cdouble(1.0, 0.0)});
}

cdouble Signal::at(const IVec& k) const {
  if (!box_.contains(k)) return cdouble(0.0, 0.0);
  return data_[box_.flat(k)];
}

void Signal::set(const IVec& k, cdouble v) {
  if (!box_.contains(k)) throw std::out_of_range("signal set outside stored box");
  data_[box_.flat(k)] = v;
}

double Signal::norm_sq() const {
  double s = 0;
  for (const auto& v : data_) s += std::norm(v);
  return s;
}

double Signal::max_abs() const {
  double s = 0;
  for (const auto& v : data_) s = std::max(s, std::abs(v));
  return s;
}

double Signal::max_abs_imag() const {
  double s = 0;
  for (const auto& v : data_) s = std::max(s, std::abs(v.imag()));
  return s;
}

Signal Signal::trimmed() const {
  const int d = dim();
  if (is_empty()) return Signal(d);
  const auto is_zero = [](const cdouble& v) { return v.real() == 0.0 && v.imag() == 0.0; };
  Box b = box_;
  for (int axis = 0; axis < d; ++axis) {
    const auto slab_zero = [&](std::int64_t pos) {
      Box slab = b;
      slab.lo[axis] = pos;
      slab.shape[axis] = 1;
      bool all_zero = true;
      for_each_point(slab, [&](const IVec& p) {
        if (!is_zero(data_[box_.flat(p)])) all_zero = false;
      });
      return all_zero;
    };
    while (b.shape[axis] > 0 && slab_zero(b.lo[axis])) {
      ++b.lo[axis];
      --b.shape[axis];
    }
    while (b.shape[axis] > 0 && slab_zero(b.lo[axis] + b.shape[axis] - 1)) --b.shape[axis];
    if (b.shape[axis] == 0) return Signal(d);
  }
  if (b == box_) return *this;
  std::vector<cdouble> nd(static_cast<std::size_t>(b.size()));
  for_each_point(b, [&](const IVec& p) { nd[b.flat(p)] = data_[box_.flat(p)]; });
  return Signal(std::move(b), std::move(nd));
}

double max_abs_diff(const Signal& u, const Signal& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("signal dimension mismatch");
  if (u.is_empty() && v.is_empty()) return 0.0;
  const Box h = u.box().hull(v.box());
  double m = 0;
  for_each_point(h, [&](const IVec& p) { m = std::max(m, std::abs(u.at(p) - v.at(p))); });
  return m;
}

bool equal_as_functions(const Signal& u, const Signal& v) { return max_abs_diff(u, v) == 0.0; }

Signal add(const Signal& u, const Signal& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("signal dimension mismatch");
  if (u.is_empty()) return v;
  if (v.is_empty()) return u;
  Box h = u.box().hull(v.box());
  std::vector<cdouble> data(static_cast<std::size_t>(h.size()), cdouble(0.0, 0.0));
  for_each_point(h, [&](const IVec& p) { data[h.flat(p)] = u.at(p) + v.at(p); });
  return Signal(std::move(h), std::move(data));
}

Signal scaled(const Signal& u, cdouble c) {
  std::vector<cdouble> data = u.data();
  for (auto& v : data) v *= c;
  return Signal(u.box(), std::move(data));
}

}  // namespace amra
