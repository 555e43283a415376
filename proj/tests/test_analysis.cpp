#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amra/analysis.hpp"
#include "amra/bankgen.hpp"

using namespace amra;

namespace {

Mask haar_low() {
  return Mask(Box(IVec{0}, IVec{2}), std::vector<double>{0.5, 0.5}, Band::low);
}
Mask haar_high() {
  return Mask(Box(IVec{0}, IVec{2}), std::vector<double>{0.5, -0.5}, Band::high);
}
Mask hat_mask() {
  return Mask(Box(IVec{-1}, IVec{3}), std::vector<double>{0.25, 0.5, 0.25}, Band::low);
}
IntMatrix m2_1d() { return IntMatrix::diagonal(IVec{2}); }

double hat_fn(double x) { return std::max(1.0 - std::abs(x), 0.0); }

}  // namespace

TEST_CASE("sum rule orders") {
  CHECK(sum_rule_order(haar_low(), m2_1d()) == 1);
  CHECK(sum_rule_order(hat_mask(), m2_1d()) == 2);
  CHECK(sum_rule_order(Mask::delta(1), m2_1d()) == 0);
  CHECK(sum_rule_order(haar_high(), m2_1d()) == 0);
  // shifting the support does not change the order
  const Mask shifted_hat(Box(IVec{3}, IVec{3}), std::vector<double>{0.25, 0.5, 0.25}, Band::low);
  CHECK(sum_rule_order(shifted_hat, m2_1d()) == 2);
}

TEST_CASE("tensor masks inherit the smaller sum-rule order") {
  const std::vector<Mask> pool{haar_low(), hat_mask()};
  for (const Mask& u : pool)
    for (const Mask& v : pool) {
      const int expect = std::min(sum_rule_order(u, m2_1d()), sum_rule_order(v, m2_1d()));
      CHECK(sum_rule_order(tensor({u, v}), IntMatrix::diagonal(IVec{2, 2})) == expect);
    }
}

TEST_CASE("isotropy of dilation matrices") {
  CHECK(is_isotropic(IntMatrix::diagonal(IVec{2, 2})));
  CHECK_FALSE(is_isotropic(IntMatrix::diagonal(IVec{4, 2})));
  CHECK(is_isotropic(IntMatrix::from_rows({{0, -2}, {2, 0}})));  // eigenvalues +-2i
  CHECK_FALSE(is_isotropic(IntMatrix::from_rows({{2, 1}, {0, 2}})));  // defective
}

TEST_CASE("cascade limits of the classic masks") {
  SUBCASE("level 0 is the dirac grid") {
    const GridFunction g = cascade(haar_low(), m2_1d(), 0);
    CHECK(g.samples.box().size() == 1);
    CHECK(std::abs(g.samples.at(IVec{0}) - cdouble(1.0, 0.0)) < 1e-15);
  }
  SUBCASE("averaging mask converges to the unit indicator") {
    const GridFunction g = cascade(haar_low(), m2_1d(), 10);
    CHECK(g.level == 10);
    // samples at n / 1024 for interior n of [0,1)
    for (std::int64_t n = 1; n < 1023; ++n)
      CHECK(std::abs(g.samples.at(IVec{n}) - cdouble(1.0, 0.0)) <= 1e-6);
    CHECK(std::abs(g.samples.at(IVec{-1})) <= 1e-12);
    CHECK(std::abs(g.samples.at(IVec{1024})) <= 1e-12);
  }
  SUBCASE("hat mask converges to the hat function") {
    const GridFunction g = cascade(hat_mask(), m2_1d(), 10);
    for (std::int64_t n = -1023; n < 1024; ++n)
      CHECK(std::abs(g.samples.at(IVec{n}) - cdouble(hat_fn(n / 1024.0), 0.0)) <= 1e-6);
  }
  SUBCASE("levels refine consistently") {
    for (const Mask& a : {haar_low(), hat_mask()}) {
      const GridFunction g = cascade(a, m2_1d(), 9);
      CHECK(g.refinement_delta <= 1e-6);  // levels 8 -> 9 on the common grid
    }
  }
  SUBCASE("high-pass masks are rejected") {
    CHECK_THROWS_AS(cascade(haar_high(), m2_1d(), 4), std::invalid_argument);
  }
}

TEST_CASE("node generator samples") {
  SUBCASE("a dirac channel reproduces the base refinable function") {
    const FilterBank dirac_bank(1, {{Mask::delta(1), IntMatrix::identity(1)}}, 1);
    TreePlan plan(1, {dirac_bank});
    plan.set_base_pair(m2_1d(), haar_low());
    const GridFunction psi = node_generator_samples(plan, NodeId{}.child(1), 8);
    const GridFunction phi = cascade(haar_low(), m2_1d(), 8);
    CHECK(max_abs_diff(psi.samples, phi.samples) <= 1e-12);
  }
  SUBCASE("the high channel of the two-channel split gives the step wavelet") {
    const IntMatrix m = m2_1d();
    const FilterBank pair(1, {{haar_low(), m}, {haar_high(), m}}, 1);
    TreePlan plan(1, {pair});
    plan.set_base_pair(m, haar_low());
    const GridFunction psi = node_generator_samples(plan, NodeId{}.child(2), 8);
    // +1 on [0, 1/2), -1 on [1/2, 1), up to the dyadic sampling of the jumps
    const std::int64_t half = 128;  // 2^8 / 2
    for (std::int64_t n = 1; n < half; ++n)
      CHECK(std::abs(psi.samples.at(IVec{n}) - cdouble(1.0, 0.0)) <= 1e-10);
    for (std::int64_t n = half + 1; n < 2 * half; ++n)
      CHECK(std::abs(psi.samples.at(IVec{n}) - cdouble(-1.0, 0.0)) <= 1e-10);
  }
  SUBCASE("a shear step in the middle tilts the dominant energy axis") {
    // tensor channels everywhere; the level-1 matrices carry the shear
    // (same lattice as 2I, so certification is unaffected)
    const FilterBank plain_bank = lattice_bank(IntMatrix::diagonal(IVec{2, 2}), SeedName::haar);
    const IntMatrix sheared_dilation = shear_matrix_2d(1) * IntMatrix::diagonal(IVec{2, 2});
    std::vector<BankItem> items = plain_bank.items();
    for (BankItem& it : items) it.matrix = sheared_dilation;
    const FilterBank sheared_bank(2, std::move(items), plain_bank.separator());

    const TreePlan sheared(2, {sheared_bank, plain_bank});
    const TreePlan plain(2, {plain_bank, plain_bank});

    const NodeId leaf = NodeId{}.child(1).child(2);  // level-2 high channel
    const GridFunction tilted = node_generator_samples(sheared, leaf, 6);
    const GridFunction straight = node_generator_samples(plain, leaf, 6);
    const auto angle_to_axes = [](const std::vector<double>& v) {
      const double a1 = std::abs(std::atan2(v[1], v[0]));
      const double to_x = std::min(a1, std::numbers::pi - a1);
      const double to_y = std::abs(std::numbers::pi / 2 - a1);
      return std::min(to_x, to_y);
    };
    const double tilted_angle = angle_to_axes(principal_axis(tilted));
    const double straight_angle = angle_to_axes(principal_axis(straight));
    CHECK(straight_angle < 10.0 * std::numbers::pi / 180.0);
    CHECK(tilted_angle > 10.0 * std::numbers::pi / 180.0);
  }
  SUBCASE("non-leaf nodes are rejected") {
    ShearletPlanSpec spec;
    spec.shears_2d = {{0}, {0}};
    const TreePlan plan = shearlet_plan(spec);
    CHECK_THROWS_AS(node_generator_samples(plan, NodeId{}.child(1), 4), std::invalid_argument);
  }
}

TEST_CASE("projection error decays at the predicted per-level rate") {
  // 1-D quadrature oracle for the separable projection onto the integer
  // shifts of the refinable function at level J, applied to exp(-x^2).
  const double h = 1.0 / 2048.0;
  const double lo = -8.0, hi = 8.0;
  const std::size_t n = static_cast<std::size_t>((hi - lo) / h) + 1;
  std::vector<double> xs(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + static_cast<double>(i) * h;
    g[i] = std::exp(-xs[i] * xs[i]);
  }

  const auto phi_indicator = [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; };
  const auto phi_hat = [](double x) { return std::max(1.0 - std::abs(x), 0.0); };

  // frame partial sum p = sum_k <g, phi_{J,k}> phi_{J,k} evaluated on the grid
  const auto projection = [&](int J, const auto& phi, double support_radius) {
    const double scale = std::pow(2.0, J);
    const std::int64_t kmin = static_cast<std::int64_t>(lo * scale) - 2;
    const std::int64_t kmax = static_cast<std::int64_t>(hi * scale) + 2;
    std::vector<double> coeff(static_cast<std::size_t>(kmax - kmin + 1), 0.0);
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      double c = 0.0;
      // integrate over the support of phi(2^J x - k)
      const double a = (static_cast<double>(k) - support_radius) / scale;
      const double b = (static_cast<double>(k) + support_radius) / scale;
      const double fi0 = std::clamp(std::floor((a - lo) / h), 0.0, static_cast<double>(n - 1));
      const double fi1 = std::clamp(std::ceil((b - lo) / h), 0.0, static_cast<double>(n - 1));
      for (std::size_t i = static_cast<std::size_t>(fi0); i <= static_cast<std::size_t>(fi1); ++i)
        c += g[i] * phi(scale * xs[i] - static_cast<double>(k)) * h;
      coeff[static_cast<std::size_t>(k - kmin)] = c * std::sqrt(scale);
    }
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = scale * xs[i];
      const std::int64_t around = static_cast<std::int64_t>(std::floor(y));
      for (std::int64_t k = around - 2; k <= around + 2; ++k) {
        if (k < kmin || k > kmax) continue;
        p[i] += coeff[static_cast<std::size_t>(k - kmin)] * phi(y - static_cast<double>(k)) *
                std::sqrt(scale);
      }
    }
    return p;
  };

  // 2-D error via the separable identity ||g x g - p x p||^2
  const auto error_2d = [&](const std::vector<double>& p) {
    double a = 0, bq = 0, c = 0, d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a += g[i] * g[i] * h;
      bq += g[i] * p[i] * h;
      c += p[i] * p[i] * h;
      d1 += g[i] * (g[i] - p[i]) * h;
      d2 += p[i] * (p[i] - g[i]) * h;
    }
    return std::sqrt(std::max(0.0, d1 * (a + bq) + d2 * (c + bq)));
  };

  const auto ratios_near = [&](const auto& phi, double radius, double predicted) {
    std::vector<double> errs;
    for (int J = 3; J <= 6; ++J) errs.push_back(error_2d(projection(J, phi, radius)));
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
      const double ratio = errs[i + 1] / errs[i];
      CHECK(std::abs(ratio - predicted) <= 0.25 * predicted);
    }
  };

  // |det 2I|^{-tau/2} with tau = 1 for the indicator, tau = 2 for the hat
  ratios_near(phi_indicator, 1.0, 0.5);
  ratios_near(phi_hat, 1.0, 0.25);
}
