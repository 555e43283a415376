#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "amra/rational.hpp"

namespace amra {

using IVec = std::vector<std::int64_t>;

/// Square integer matrix, dimension 1..4, with exact integer arithmetic.
/// Dilation matrices, shear matrices and the unimodular factors of a
/// Smith decomposition are all carried by this type.
class IntMatrix {
 public:
  explicit IntMatrix(int dim);
  static IntMatrix identity(int dim);
  static IntMatrix diagonal(const IVec& d);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  int dim() const { return dim_; }
  std::int64_t operator()(int i, int j) const { return e_[i * dim_ + j]; }
  std::int64_t& operator()(int i, int j) { return e_[i * dim_ + j]; }

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IVec operator*(const IVec& x) const;

  /// Exact determinant by cofactor expansion.
  std::int64_t determinant() const;
  /// Adjugate matrix; adjugate() * (*this) == determinant() * I.
  IntMatrix adjugate() const;

  bool is_singular() const { return determinant() == 0; }

  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  /// Entrywise row-major lexicographic order (for canonical sorting).
  bool lex_less(const IntMatrix& o) const;

  std::string str() const;

 private:
  int dim_;
  std::array<std::int64_t, 16> e_{};
};

/// Matrix with exact rational entries, stored as num / den with a shared
/// denominator. Used for inverse dilations and accumulated tree matrices.
struct RationalMatrix {
  IntMatrix num;
  std::int64_t den;

  explicit RationalMatrix(const IntMatrix& n, std::int64_t d = 1);
  static RationalMatrix inverse_of(const IntMatrix& m);

  int dim() const { return num.dim(); }
  Rational at(int i, int j) const { return Rational(num(i, j), den); }
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalVec operator*(const IVec& x) const;
  bool is_integral() const;
  bool operator==(const RationalMatrix& o) const;

 private:
  void reduce();
};

struct SmithDecomposition {
  IntMatrix e, d, f;  // m == e * d * f, |det e| == |det f| == 1
};

/// Smith-type factorization m = E D F with unimodular E, F and diagonal
/// D = diag(d_1,...,d_m,1,...,1), d_1 >= ... >= d_m > 1 (nontrivial
/// invariant factors in descending order, trivial ones trailing).
SmithDecomposition smith_factor(const IntMatrix& m);

/// Canonical representatives of Z^d / m Z^d: the integer points of
/// m [0,1)^d, sorted lexicographically. 0 is always included and the
/// count equals |det m|.
std::vector<IVec> coset_reps(const IntMatrix& m);

/// Representatives of [(m^T)^{-1} Z^d] mod Z^d in [0,1)^d, exact and
/// sorted lexicographically; |det m| elements with 0 first.
std::vector<RationalVec> dual_coset_reps(const IntMatrix& m);

/// Whether a and b generate the same sublattice of Z^d, decided exactly.
bool lattice_equal(const IntMatrix& a, const IntMatrix& b);

/// Integer matrix power, exponent >= 0.
IntMatrix pow(const IntMatrix& m, int exponent);

std::string str(const IVec& v);

}  // namespace amra
