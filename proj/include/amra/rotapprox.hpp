#pragma once

#include <vector>

#include "amra/intmat.hpp"

namespace amra {

/// Minimizers of the mean squared distance, over the unit circle, between
/// the planar rotation by `theta` and an integer matrix of determinant 1.
/// All listed minimizers achieve the same objective; at angles where two
/// table cases meet, the full tie set is returned.
struct RotationSolution {
  double theta = 0.0;                 // normalized to [0, 2 pi)
  std::vector<IntMatrix> minimizers;  // det 1, sorted lexicographically
  double objective = 0.0;
};

/// Integral over t in [0, 2 pi) of |(R_theta - b)(cos t, sin t)|^2, which
/// equals pi * ||R_theta - b||_F^2. b must be 2x2.
double objective(double theta, const IntMatrix& b);

/// Closed-form solution via the twelve-case table; boundary angles return
/// the union of the two adjacent cases' minimizers.
RotationSolution best_unimodular(double theta);

/// Exhaustive search over all 2x2 integer matrices with entries in
/// [-radius, radius] and determinant 1; ties within 1e-12 are all kept.
RotationSolution best_unimodular_bruteforce(double theta, int radius = 3);

}  // namespace amra
