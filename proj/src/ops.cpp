#include "amra/ops.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace amra {

Signal transition(const Mask& a, const IntMatrix& m, const Signal& v) {
  const int d = m.dim();
  if (a.dim() != d || v.dim() != d) throw std::invalid_argument("transition dimension mismatch");
  if (m.is_singular()) throw std::invalid_argument("transition requires a nonsingular matrix");
  if (v.is_empty() || a.is_empty()) return Signal(d);

  // n ranges over the outward-rounded rational box of m^{-1}(supp v - supp a)
  const Box shifts = v.box().difference(a.support());
  const Box out = rational_preimage_box(m, shifts);
  if (out.is_empty()) return Signal(d);

  std::vector<cdouble> data(static_cast<std::size_t>(out.size()), cdouble(0.0, 0.0));
  IVec mn(d);
  for_each_point(out, [&](const IVec& n) {
    for (int i = 0; i < d; ++i) {
      std::int64_t s = 0;
      for (int k = 0; k < d; ++k) s += m(i, k) * n[k];
      mn[i] = s;
    }
    // k runs lexicographically over supp(v) intersected with mn + supp(a)
    const Box kbox = v.box().intersect(a.support().shifted(mn));
    if (kbox.is_empty()) return;
    cdouble acc(0.0, 0.0);
    IVec rel(d);
    for_each_point(kbox, [&](const IVec& k) {
      for (int i = 0; i < d; ++i) rel[i] = k[i] - mn[i];
      acc += v.at(k) * std::conj(a.at(rel));
    });
    data[out.flat(n)] = acc;
  });
  return Signal(out, std::move(data)).trimmed();
}

Signal subdivide(const Mask& a, const IntMatrix& m, const Signal& v) {
  const int d = m.dim();
  if (a.dim() != d || v.dim() != d) throw std::invalid_argument("subdivide dimension mismatch");
  if (m.is_singular()) throw std::invalid_argument("subdivide requires a nonsingular matrix");
  if (v.is_empty() || a.is_empty()) return Signal(d);

  const Box out = image_box(m, v.box()).sum(a.support());
  std::vector<cdouble> data(static_cast<std::size_t>(out.size()), cdouble(0.0, 0.0));
  const double det = static_cast<double>(std::abs(m.determinant()));

  // scatter: contributions arrive in fixed lexicographic (k, j) order
  IVec mk(d), n(d);
  for_each_point(v.box(), [&](const IVec& k) {
    const cdouble vk = v.at(k);
    if (vk.real() == 0.0 && vk.imag() == 0.0) return;
    for (int i = 0; i < d; ++i) {
      std::int64_t s = 0;
      for (int t = 0; t < d; ++t) s += m(i, t) * k[t];
      mk[i] = s;
    }
    for_each_point(a.support(), [&](const IVec& j) {
      for (int i = 0; i < d; ++i) n[i] = mk[i] + j[i];
      data[out.flat(n)] += vk * a.at(j);
    });
  });
  for (auto& x : data) x *= det;
  return Signal(out, std::move(data)).trimmed();
}

Signal reconstruct_step(const FilterBank& bank, const std::vector<Signal>& parts) {
  if (static_cast<int>(parts.size()) != bank.size())
    throw std::invalid_argument("reconstruct_step: one part per bank item required");
  Signal acc(bank.dim());
  for (int i = 0; i < bank.size(); ++i)
    acc = add(acc, subdivide(bank.item(i).mask, bank.item(i).matrix, parts[i]));
  return acc.trimmed();
}

}  // namespace amra
