#include "amra/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace amra {

IntMatrix::IntMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("matrix dimension must be 1..4");
}

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IVec& d) {
  IntMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.dim())
      throw std::invalid_argument("matrix rows must be square");
    int j = 0;
    for (std::int64_t v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

IVec IntMatrix::operator*(const IVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("matvec dimension mismatch");
  IVec r(dim_);
  for (int i = 0; i < dim_; ++i) {
    std::int64_t s = 0;
    for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * x[k];
    r[i] = s;
  }
  return r;
}

namespace {

std::int64_t det_rec(const IntMatrix& m, std::array<int, 4>& rows, std::array<int, 4>& cols, int n) {
  if (n == 1) return m(rows[0], cols[0]);
  std::int64_t s = 0;
  std::int64_t sign = 1;
  const int c0 = cols[0];
  std::array<int, 4> sub = cols;
  for (int k = 1; k < n; ++k) sub[k - 1] = cols[k];
  for (int i = 0; i < n; ++i) {
    const int r = rows[i];
    std::array<int, 4> subr{};
    int t = 0;
    for (int k = 0; k < n; ++k)
      if (k != i) subr[t++] = rows[k];
    s += sign * m(r, c0) * det_rec(m, subr, sub, n - 1);
    sign = -sign;
  }
  return s;
}

}  // namespace

std::int64_t IntMatrix::determinant() const {
  std::array<int, 4> rows{0, 1, 2, 3}, cols{0, 1, 2, 3};
  return det_rec(*this, rows, cols, dim_);
}

IntMatrix IntMatrix::adjugate() const {
  IntMatrix a(dim_);
  if (dim_ == 1) {
    a(0, 0) = 1;
    return a;
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      std::array<int, 4> rows{}, cols{};
      int nr = 0, nc = 0;
      for (int k = 0; k < dim_; ++k) {
        if (k != i) rows[nr++] = k;
        if (k != j) cols[nc++] = k;
      }
      const std::int64_t minor = det_rec(*this, rows, cols, dim_ - 1);
      const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
      a(j, i) = sign * minor;  // transpose of the cofactor matrix
    }
  return a;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  if (dim_ != o.dim_) return false;
  for (int i = 0; i < dim_ * dim_; ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

bool IntMatrix::lex_less(const IntMatrix& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  for (int i = 0; i < dim_ * dim_; ++i) {
    if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
  }
  return false;
}

std::string IntMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < dim_; ++i) {
    s += i ? ";[" : "[";
    for (int j = 0; j < dim_; ++j) {
      if (j) s += ",";
      s += std::to_string((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

RationalMatrix::RationalMatrix(const IntMatrix& n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational matrix with zero denominator");
  reduce();
}

void RationalMatrix::reduce() {
  if (den < 0) {
    den = -den;
    for (int i = 0; i < num.dim(); ++i)
      for (int j = 0; j < num.dim(); ++j) num(i, j) = -num(i, j);
  }
  std::int64_t g = den;
  for (int i = 0; i < num.dim() && g > 1; ++i)
    for (int j = 0; j < num.dim() && g > 1; ++j) g = std::gcd(g, std::abs(num(i, j)));
  if (g > 1) {
    den /= g;
    for (int i = 0; i < num.dim(); ++i)
      for (int j = 0; j < num.dim(); ++j) num(i, j) /= g;
  }
}

RationalMatrix RationalMatrix::inverse_of(const IntMatrix& m) {
  const std::int64_t d = m.determinant();
  if (d == 0) throw std::invalid_argument("singular matrix has no inverse");
  return RationalMatrix(m.adjugate(), d);
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  return RationalMatrix(num * o.num, den * o.den);
}

RationalVec RationalMatrix::operator*(const IVec& x) const {
  const IVec y = num * x;
  RationalVec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = Rational(y[i], den);
  return r;
}

bool RationalMatrix::is_integral() const { return den == 1; }

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return den == o.den && num == o.num;
}

namespace {

// Elementary operations on the working triple (e, d, f) preserving
// the invariant  original == e * d * f.
struct SmithWork {
  IntMatrix e, d, f;

  explicit SmithWork(const IntMatrix& m)
      : e(IntMatrix::identity(m.dim())), d(m), f(IntMatrix::identity(m.dim())) {}

  int dim() const { return d.dim(); }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < dim(); ++j) {
      std::swap(d(a, j), d(b, j));
      std::swap(e(j, a), e(j, b));  // columns of e
    }
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < dim(); ++i) {
      std::swap(d(i, a), d(i, b));
      std::swap(f(a, i), f(b, i));  // rows of f
    }
  }
  // row r of d -= q * row t; compensate e
  void add_row(int r, int t, std::int64_t q) {
    for (int j = 0; j < dim(); ++j) d(r, j) -= q * d(t, j);
    for (int j = 0; j < dim(); ++j) e(j, t) += q * e(j, r);
  }
  // col c of d -= q * col t; compensate f
  void add_col(int c, int t, std::int64_t q) {
    for (int i = 0; i < dim(); ++i) d(i, c) -= q * d(i, t);
    for (int i = 0; i < dim(); ++i) f(t, i) += q * f(c, i);
  }
  void negate_row(int r) {
    for (int j = 0; j < dim(); ++j) d(r, j) = -d(r, j);
    for (int j = 0; j < dim(); ++j) e(j, r) = -e(j, r);
  }
};

}  // namespace

SmithDecomposition smith_factor(const IntMatrix& m) {
  if (m.determinant() == 0) throw std::invalid_argument("smith_factor requires a nonsingular matrix");
  const int n = m.dim();
  SmithWork w(m);

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // pivot: smallest nonzero |entry| in the trailing block
      int pi = -1, pj = -1;
      std::int64_t best = 0;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          const std::int64_t a = std::abs(w.d(i, j));
          if (a != 0 && (pi < 0 || a < best)) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (int i = t + 1; i < n; ++i)
        if (w.d(i, t) != 0) {
          w.add_row(i, t, w.d(i, t) / w.d(t, t));
          if (w.d(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (w.d(t, j) != 0) {
          w.add_col(j, t, w.d(t, j) / w.d(t, t));
          if (w.d(t, j) != 0) clean = false;
        }
      if (!clean) continue;

      // enforce divisibility of the remaining block by the pivot
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (w.d(i, j) % w.d(t, t) != 0) {
            w.add_row(t, i, -1);  // row t += row i, reintroduces work
            divides = false;
          }
      if (divides) break;
    }
    if (w.d(t, t) < 0) w.negate_row(t);
  }

  // reorder diagonal: nontrivial factors descending, then the 1s
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.begin() + n, [&](int a, int b) {
    const std::int64_t da = w.d(a, a), db = w.d(b, b);
    const bool ta = da == 1, tb = db == 1;
    if (ta != tb) return !ta;
    return da > db;
  });
  SmithDecomposition out{IntMatrix(n), IntMatrix(n), IntMatrix(n)};
  for (int i = 0; i < n; ++i) {
    out.d(i, i) = w.d(order[i], order[i]);
    for (int j = 0; j < n; ++j) {
      out.e(j, i) = w.e(j, order[i]);  // e * P^T: columns permuted
      out.f(i, j) = w.f(order[i], j);  // P * f: rows permuted
    }
  }

  if (!(out.e * out.d * out.f == m) || std::abs(out.e.determinant()) != 1 ||
      std::abs(out.f.determinant()) != 1)
    throw std::logic_error("smith_factor internal check failed");
  return out;
}

std::vector<IVec> coset_reps(const IntMatrix& m) {
  const std::int64_t d = m.determinant();
  if (d == 0) throw std::invalid_argument("coset_reps requires a nonsingular matrix");
  const int n = m.dim();
  const std::int64_t ad = std::abs(d);
  const IntMatrix adj = m.adjugate();

  // bounding box of the parallelepiped m [0,1)^d from its vertices
  IVec lo(n, 0), hi(n, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    IVec corner(n);
    for (int i = 0; i < n; ++i) corner[i] = (mask >> i) & 1;
    const IVec v = m * corner;
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }

  std::vector<IVec> reps;
  IVec x = lo;
  for (;;) {
    // keep x iff m^{-1} x in [0,1)^d, checked exactly
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) {
      std::int64_t p = 0;
      for (int k = 0; k < n; ++k) p += adj(i, k) * x[k];
      if (d < 0) p = -p;
      inside = p >= 0 && p < ad;
    }
    if (inside) reps.push_back(x);

    int i = n - 1;
    for (; i >= 0; --i) {
      if (++x[i] <= hi[i]) break;
      x[i] = lo[i];
    }
    if (i < 0) break;
  }

  std::sort(reps.begin(), reps.end());
  if (static_cast<std::int64_t>(reps.size()) != ad)
    throw std::logic_error("coset enumeration count mismatch");
  return reps;
}

std::vector<RationalVec> dual_coset_reps(const IntMatrix& m) {
  if (m.determinant() == 0)
    throw std::invalid_argument("dual_coset_reps requires a nonsingular matrix");
  const IntMatrix mt = m.transposed();
  const RationalMatrix inv = RationalMatrix::inverse_of(mt);
  std::vector<RationalVec> out;
  for (const IVec& g : coset_reps(mt)) {
    RationalVec w = inv * g;
    for (auto& c : w) c = c.mod1();
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const RationalVec& a, const RationalVec& b) {
    return lex_less(a, b);
  });
  return out;
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lattice_equal dimension mismatch");
  if (a.is_singular() || b.is_singular())
    throw std::invalid_argument("lattice_equal requires nonsingular matrices");
  const auto integral_quotient = [](const IntMatrix& p, const IntMatrix& q) {
    const std::int64_t d = p.determinant();
    const IntMatrix prod = p.adjugate() * q;  // p^{-1} q times det
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < p.dim(); ++j)
        if (prod(i, j) % d != 0) return false;
    return true;
  };
  return integral_quotient(a, b) && integral_quotient(b, a);
}

IntMatrix pow(const IntMatrix& m, int exponent) {
  if (exponent < 0) throw std::invalid_argument("pow exponent must be >= 0");
  IntMatrix r = IntMatrix::identity(m.dim());
  for (int i = 0; i < exponent; ++i) r = r * m;
  return r;
}

std::string str(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace amra
