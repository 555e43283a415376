#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "amra/mask.hpp"

using namespace amra;

namespace {

Mask haar_low() {
  return Mask(Box(IVec{0}, IVec{2}), std::vector<double>{0.5, 0.5}, Band::low);
}
Mask haar_high() {
  return Mask(Box(IVec{0}, IVec{2}), std::vector<double>{0.5, -0.5}, Band::high);
}

std::mt19937_64 rng(7);

std::vector<double> random_xi(int d) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> xi(d);
  for (auto& x : xi) x = u(rng);
  return xi;
}

}  // namespace

TEST_CASE("symbol evaluation") {
  const Mask d1 = Mask::delta(1);
  CHECK(std::abs(symbol(d1, {0.37}) - cdouble(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(symbol(haar_low(), {0.0}) - cdouble(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(symbol(haar_low(), {M_PI})) < 1e-15);
  // bound |symbol| <= sum |a(k)|
  for (int t = 0; t < 20; ++t)
    CHECK(std::abs(symbol(haar_high(), random_xi(1))) <= haar_high().abs_sum() + 1e-14);
}

TEST_CASE("correlation coefficients") {
  const Mask d1 = Mask::delta(1);
  const RationalVec zero{Rational(0)};
  const RationalVec half{Rational(1, 2)};
  CHECK(std::abs(correlation(d1, d1, IVec{0}, zero) - cdouble(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(correlation(haar_low(), haar_low(), IVec{0}, zero) - cdouble(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(correlation(haar_low(), haar_low(), IVec{0}, half)) < 1e-15);
  CHECK(std::abs(correlation(haar_low(), haar_low(), IVec{1}, zero) - cdouble(0.25, 0.0)) < 1e-15);
}

TEST_CASE("correlation at zero shift is the coefficient energy") {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 5);
    std::vector<cdouble> data(static_cast<std::size_t>(len));
    for (auto& x : data) x = cdouble(u(rng), u(rng));
    const Mask a(Box(IVec{-2}, IVec{len}), data, Band::low);
    double energy = 0;
    for (const auto& x : a.data()) energy += std::norm(x);
    const cdouble c = correlation(a, a, IVec{0}, RationalVec{Rational(0)});
    CHECK(std::abs(c.real() - energy) < 1e-15);
    CHECK(std::abs(c.imag()) < 1e-15);
  }
}

TEST_CASE("tensor products") {
  SUBCASE("delta x delta") {
    const Mask t = tensor({Mask::delta(1), Mask::delta(1)});
    CHECK(t.dim() == 2);
    CHECK(t.support().size() == 1);
    CHECK(std::abs(t.at(IVec{0, 0}) - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(t.band() == Band::low);
  }
  SUBCASE("low x low outer product") {
    const Mask t = tensor({haar_low(), haar_low()});
    for (std::int64_t i = 0; i < 2; ++i)
      for (std::int64_t j = 0; j < 2; ++j)
        CHECK(std::abs(t.at(IVec{i, j}) - cdouble(0.25, 0.0)) < 1e-15);
    CHECK(t.band() == Band::low);
  }
  SUBCASE("low x high pattern and band") {
    const Mask t = tensor({haar_low(), haar_high()});
    CHECK(std::abs(t.at(IVec{0, 0}) - cdouble(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(t.at(IVec{0, 1}) - cdouble(-0.25, 0.0)) < 1e-15);
    CHECK(std::abs(t.at(IVec{1, 0}) - cdouble(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(t.at(IVec{1, 1}) - cdouble(-0.25, 0.0)) < 1e-15);
    CHECK(t.band() == Band::high);
  }
  SUBCASE("symbol factorizes") {
    for (int t = 0; t < 100; ++t) {
      const auto xi = random_xi(2);
      const Mask u = haar_low(), v = haar_high();
      const cdouble lhs = symbol(tensor({u, v}), xi);
      const cdouble rhs = symbol(u, {xi[0]}) * symbol(v, {xi[1]});
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
  CHECK_THROWS_AS(tensor({}), std::invalid_argument);
}

TEST_CASE("remap by unimodular matrix") {
  const IntMatrix e = IntMatrix::from_rows({{1, 1}, {0, 1}});
  SUBCASE("identity is a no-op") {
    const Mask t = tensor({haar_low(), haar_high()});
    CHECK(remap_by_unimodular(t, IntMatrix::identity(2)) == t);
  }
  SUBCASE("single points move by e") {
    std::vector<cdouble> one{cdouble(1.0, 0.0)};
    const Mask on_axis(Box(IVec{1, 0}, IVec{1, 1}), one, Band::low);
    CHECK(std::abs(remap_by_unimodular(on_axis, e).at(IVec{1, 0}) - cdouble(1, 0)) < 1e-15);
    const Mask off_axis(Box(IVec{0, 1}, IVec{1, 1}), one, Band::low);
    CHECK(std::abs(remap_by_unimodular(off_axis, e).at(IVec{1, 1}) - cdouble(1, 0)) < 1e-15);
  }
  SUBCASE("symbol identity at random frequencies") {
    const Mask t = tensor({haar_low(), haar_low()});
    const Mask r = remap_by_unimodular(t, e);
    const IntMatrix et = e.transposed();
    for (int k = 0; k < 100; ++k) {
      const auto xi = random_xi(2);
      std::vector<double> etxi(2, 0.0);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) etxi[i] += static_cast<double>(et(i, j)) * xi[j];
      CHECK(std::abs(symbol(r, xi) - symbol(t, etxi)) < 1e-12);
    }
  }
  SUBCASE("coefficient multiset is preserved") {
    const Mask t = tensor({haar_low(), haar_high()});
    const Mask r = remap_by_unimodular(t, e);
    std::multimap<double, double> before, after;
    for_each_point(t.support(), [&](const IVec& p) {
      if (t.at(p) != cdouble(0, 0)) before.emplace(t.at(p).real(), t.at(p).imag());
    });
    for_each_point(r.support(), [&](const IVec& p) {
      if (r.at(p) != cdouble(0, 0)) after.emplace(r.at(p).real(), r.at(p).imag());
    });
    CHECK(before == after);
  }
  CHECK_THROWS_AS(remap_by_unimodular(tensor({haar_low(), haar_low()}),
                                      IntMatrix::diagonal(IVec{2, 1})),
                  std::invalid_argument);
}

TEST_CASE("scaling") {
  const Mask s = scale(Mask::delta(1), 1.0 / std::sqrt(2.0));
  CHECK(s.at(IVec{0}).real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(scale(haar_low(), 1.0) == haar_low());
  const Mask h = scale(haar_low(), 1.0 / std::sqrt(2.0));
  CHECK(h.at(IVec{0}).real() == doctest::Approx(0.35355339059327373).epsilon(1e-15));
}

TEST_CASE("construction trims zero slabs and trimming is idempotent") {
  std::vector<cdouble> data(9, cdouble(0.0, 0.0));
  data[4] = cdouble(2.0, 0.0);  // center of a 3x3 box
  const Mask m(Box(IVec{-1, -1}, IVec{3, 3}), data, Band::low);
  CHECK(m.support().size() == 1);
  CHECK(m.support().lo == IVec{0, 0});
  // feeding the trimmed data back yields the same mask
  const Mask again(m.support(), m.data(), m.band());
  CHECK(again == m);
}
