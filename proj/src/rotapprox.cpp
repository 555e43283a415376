#include "amra/rotapprox.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryWindow = 1e-9;  // arcs are separated by ~0.09 rad
constexpr double kTieTol = 1e-12;

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

IntMatrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// The twelve arcs, listed counterclockwise starting after 2pi - asin(1/2).
// arcs[i] covers (bounds[i-1], bounds[i]) with the wrap-around arc 0
// covering (bounds[11] - 2pi, bounds[0]).
struct CaseTable {
  std::vector<double> bounds;
  std::vector<std::vector<IntMatrix>> sets;
};

const CaseTable& table() {
  static const CaseTable t = [] {
    const double asin_half = std::asin(0.5);   // pi/6
    const double acos_half = std::acos(0.5);   // pi/3
    const double pi = std::numbers::pi;
    CaseTable c;
    c.bounds = {asin_half,
                pi / 4,
                acos_half,
                pi - acos_half,
                3 * pi / 4,
                pi - asin_half,
                pi + asin_half,
                5 * pi / 4,
                pi + acos_half,
                3 * pi / 2 + asin_half,
                7 * pi / 4,
                2 * pi - asin_half};
    c.sets = {
        {m2(1, 0, 0, 1)},                            // identity
        {m2(1, -1, 0, 1), m2(1, 0, 1, 1)},           // shear / transposed shear
        {m2(1, -1, 1, 0), m2(0, -1, 1, 1)},
        {m2(0, -1, 1, 0)},                           // quarter turn
        {m2(-1, -1, 1, 0), m2(0, -1, 1, -1)},
        {m2(-1, -1, 0, -1), m2(-1, 0, 1, -1)},
        {m2(-1, 0, 0, -1)},                          // half turn
        {m2(-1, 0, -1, -1), m2(-1, 1, 0, -1)},
        {m2(-1, 1, -1, 0), m2(0, 1, -1, -1)},
        {m2(0, 1, -1, 0)},
        {m2(1, 1, -1, 0), m2(0, 1, -1, 1)},
        {m2(1, 0, -1, 1), m2(1, 1, 0, 1)},
    };
    return c;
  }();
  return t;
}

void sort_and_dedupe(std::vector<IntMatrix>& ms) {
  std::sort(ms.begin(), ms.end(), [](const IntMatrix& a, const IntMatrix& b) {
    return a.lex_less(b);
  });
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

}  // namespace

double objective(double theta, const IntMatrix& b) {
  if (b.dim() != 2) throw std::invalid_argument("objective expects a 2x2 matrix");
  const double c = std::cos(theta), s = std::sin(theta);
  const double d0 = c - static_cast<double>(b(0, 0));
  const double d1 = -s - static_cast<double>(b(0, 1));
  const double d2 = s - static_cast<double>(b(1, 0));
  const double d3 = c - static_cast<double>(b(1, 1));
  return std::numbers::pi * (d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3);
}

RotationSolution best_unimodular(double theta) {
  const double t = normalize_angle(theta);
  const CaseTable& tab = table();
  const int n = static_cast<int>(tab.bounds.size());

  std::vector<IntMatrix> mins;
  int boundary = -1;
  for (int i = 0; i < n; ++i) {
    double d = std::abs(t - tab.bounds[i]);
    d = std::min(d, std::abs(t - tab.bounds[i] + kTwoPi));
    d = std::min(d, std::abs(t - tab.bounds[i] - kTwoPi));
    if (d <= kBoundaryWindow) {
      boundary = i;
      break;
    }
  }
  if (boundary >= 0) {
    // union of the two adjacent cases
    mins = tab.sets[boundary];
    const auto& after = tab.sets[(boundary + 1) % n];
    mins.insert(mins.end(), after.begin(), after.end());
  } else {
    int arc = 0;  // wrap-around arc unless t lies between two bounds
    for (int i = 0; i + 1 < n; ++i)
      if (t > tab.bounds[i] && t < tab.bounds[i + 1]) {
        arc = i + 1;
        break;
      }
    mins = tab.sets[arc];
  }
  sort_and_dedupe(mins);

  RotationSolution sol;
  sol.theta = t;
  sol.minimizers = std::move(mins);
  sol.objective = objective(t, sol.minimizers.front());
  return sol;
}

RotationSolution best_unimodular_bruteforce(double theta, int radius) {
  if (radius < 1) throw std::invalid_argument("radius must be >= 1");
  const double t = normalize_angle(theta);

  double best = 0;
  std::vector<IntMatrix> mins;
  for (std::int64_t a = -radius; a <= radius; ++a)
    for (std::int64_t b = -radius; b <= radius; ++b)
      for (std::int64_t c = -radius; c <= radius; ++c)
        for (std::int64_t d = -radius; d <= radius; ++d) {
          if (a * d - b * c != 1) continue;
          const IntMatrix m = m2(a, b, c, d);
          const double f = objective(t, m);
          if (mins.empty() || f < best - kTieTol) {
            best = f;
            mins.clear();
            mins.push_back(m);
          } else if (f <= best + kTieTol) {
            if (f < best) best = f;
            mins.push_back(m);
          }
        }

  // re-filter against the final minimum, then sort
  std::vector<IntMatrix> keep;
  for (const IntMatrix& m : mins)
    if (objective(t, m) <= best + kTieTol) keep.push_back(m);
  sort_and_dedupe(keep);

  RotationSolution sol;
  sol.theta = t;
  sol.minimizers = std::move(keep);
  sol.objective = best;
  return sol;
}

}  // namespace amra
