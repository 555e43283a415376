#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amra/rotapprox.hpp"

using namespace amra;

namespace {

constexpr double kPi = std::numbers::pi;

IntMatrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return IntMatrix::from_rows({{a, b}, {c, d}});
}

bool same_set(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// the twelve angles where adjacent table cases meet
std::vector<double> case_boundaries() {
  const double asin_half = std::asin(0.5);
  const double acos_half = std::acos(0.5);
  return {asin_half,          kPi / 4,         acos_half,
          kPi - acos_half,    3 * kPi / 4,     kPi - asin_half,
          kPi + asin_half,    5 * kPi / 4,     kPi + acos_half,
          3 * kPi / 2 + asin_half, 7 * kPi / 4, 2 * kPi - asin_half};
}

}  // namespace

TEST_CASE("objective values") {
  CHECK(objective(0.0, IntMatrix::identity(2)) == 0.0);
  CHECK(objective(kPi / 2, m2(0, -1, 1, 0)) == doctest::Approx(0.0).epsilon(1e-15));
  // ||R - I||_F^2 = 4 (1 - cos theta)
  CHECK(objective(kPi / 4, IntMatrix::identity(2)) ==
        doctest::Approx(4.0 * kPi * (1.0 - std::cos(kPi / 4))).epsilon(1e-12));
  CHECK(objective(kPi / 4, IntMatrix::identity(2)) == doctest::Approx(3.68060473804).epsilon(1e-9));
  CHECK_THROWS_AS(objective(0.0, IntMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("closed-form spot values") {
  SUBCASE("theta = 0") {
    const RotationSolution s = best_unimodular(0.0);
    REQUIRE(s.minimizers.size() == 1);
    CHECK(s.minimizers[0] == IntMatrix::identity(2));
    CHECK(s.objective == 0.0);
  }
  SUBCASE("theta = 36 degrees") {
    const RotationSolution s = best_unimodular(kPi / 5);
    REQUIRE(s.minimizers.size() == 2);
    // sorted lexicographically: [[1,-1],[0,1]] before [[1,0],[1,1]]
    CHECK(s.minimizers[0] == m2(1, -1, 0, 1));
    CHECK(s.minimizers[1] == m2(1, 0, 1, 1));
  }
  SUBCASE("theta = 72 degrees") {
    const RotationSolution s = best_unimodular(2 * kPi / 5);
    REQUIRE(s.minimizers.size() == 1);
    CHECK(s.minimizers[0] == m2(0, -1, 1, 0));
  }
  SUBCASE("angles outside [0, 2pi) are reduced") {
    const RotationSolution s = best_unimodular(kPi / 5 + 4 * kPi);
    CHECK(s.theta == doctest::Approx(kPi / 5).epsilon(1e-12));
    CHECK(s.minimizers.size() == 2);
  }
}

TEST_CASE("brute force spot values") {
  SUBCASE("theta = 0") {
    const RotationSolution s = best_unimodular_bruteforce(0.0);
    REQUIRE(s.minimizers.size() == 1);
    CHECK(s.minimizers[0] == IntMatrix::identity(2));
  }
  SUBCASE("theta = 36 degrees matches the closed form") {
    CHECK(same_set(best_unimodular_bruteforce(kPi / 5).minimizers,
                   best_unimodular(kPi / 5).minimizers));
  }
  SUBCASE("theta = 3pi/4 is a boundary: four-way tie") {
    const RotationSolution s = best_unimodular_bruteforce(3 * kPi / 4);
    CHECK(s.minimizers.size() == 4);
    CHECK(same_set(s.minimizers, best_unimodular(3 * kPi / 4).minimizers));
  }
}

TEST_CASE("closed form agrees with exhaustive search at 720 angles and all boundaries") {
  std::vector<double> angles;
  for (int k = 0; k < 720; ++k) angles.push_back(2.0 * kPi * k / 720.0);
  for (double b : case_boundaries()) angles.push_back(b);

  for (double theta : angles) {
    const RotationSolution closed = best_unimodular(theta);
    const RotationSolution brute = best_unimodular_bruteforce(theta, 3);
    CHECK(same_set(closed.minimizers, brute.minimizers));
    CHECK(std::abs(closed.objective - brute.objective) <= 1e-12);
  }
}

TEST_CASE("transposition symmetry") {
  for (int k = 1; k < 120; ++k) {
    const double theta = 2.0 * kPi * k / 120.0;
    const RotationSolution a = best_unimodular(theta);
    const RotationSolution b = best_unimodular(2.0 * kPi - theta);
    std::vector<IntMatrix> transposed;
    for (const IntMatrix& m : a.minimizers) transposed.push_back(m.transposed());
    std::sort(transposed.begin(), transposed.end(),
              [](const IntMatrix& x, const IntMatrix& y) { return x.lex_less(y); });
    CHECK(same_set(transposed, b.minimizers));
  }
}

TEST_CASE("all minimizers have determinant one") {
  for (int k = 0; k < 360; ++k) {
    const double theta = 2.0 * kPi * k / 360.0;
    for (const IntMatrix& m : best_unimodular(theta).minimizers) CHECK(m.determinant() == 1);
  }
}

TEST_CASE("search radius 2 already suffices") {
  for (int k = 0; k < 360; ++k) {
    const double theta = 2.0 * kPi * k / 360.0 + 0.001;
    CHECK(same_set(best_unimodular_bruteforce(theta, 2).minimizers,
                   best_unimodular_bruteforce(theta, 3).minimizers));
  }
}
