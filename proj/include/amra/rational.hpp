#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amra {

/// Exact rational number p/q, kept reduced with q > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d);

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  /// Representative of the class mod 1 lying in [0,1).
  Rational mod1() const;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// "p/q", or just "p" when q == 1.
  std::string str() const;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator/(const Rational& a, const Rational& b);
bool operator==(const Rational& a, const Rational& b);
bool operator!=(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);

using RationalVec = std::vector<Rational>;

bool is_zero(const RationalVec& v);
bool is_integral(const RationalVec& v);
bool lex_less(const RationalVec& a, const RationalVec& b);
std::string str(const RationalVec& v);

}  // namespace amra
