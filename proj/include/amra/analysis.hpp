#pragma once

#include "amra/signal.hpp"
#include "amra/tree.hpp"

namespace amra {

/// Samples of a function on the refined grid matrix^{-level} Z^d: entry n
/// of `samples` is the value at the point matrix^{-level} n.
struct GridFunction {
  int level = 0;
  IntMatrix matrix;
  Signal samples;
  /// L-inf change between the last two refinement levels on the common
  /// grid; convergence diagnostic of the iteration, 0 for level <= 1.
  double refinement_delta = 0.0;

  GridFunction() : matrix(IntMatrix::identity(1)) {}
};

/// Largest tau such that for every multi-index b with all b_i < tau and
/// |b| < tau the coset sums sum_{p = gamma mod m0} a(p) p^b agree across
/// all cosets gamma of Z^d / m0 Z^d (within tol). Capped at 16.
int sum_rule_order(const Mask& a, const IntMatrix& m0, double tol = 1e-10);

/// Whether m0 is (numerically) similar to a diagonal matrix whose
/// eigenvalues all share one modulus: diagonalizable with eigenvector
/// condition number below 1e8, eigenvalue moduli within tol * |lambda_max|.
bool is_isotropic(const IntMatrix& m0, double tol = 1e-8);

/// levels-fold subdivision of the Dirac signal by (a, m0); the result
/// samples the refinable limit function on m0^{-levels} Z^d. Requires a
/// low-pass mask (symbol 1 at the origin).
GridFunction cascade(const Mask& a, const IntMatrix& m0, int levels);

/// Samples of the generator attached to a leaf of the plan's tree: the
/// root-to-leaf mask convolutions applied to the refinable function of the
/// plan's base pair, all on the fixed grid base^{-grid_level} Z^d. Requires
/// a certified plan and a leaf node.
GridFunction node_generator_samples(const TreePlan& plan, const NodeId& leaf, int grid_level);

/// Unit principal axis of the second-moment matrix of |samples|^2 about
/// its centroid (positions matrix^{-level} n). Direction of dominant
/// energy alignment.
std::vector<double> principal_axis(const GridFunction& g);

}  // namespace amra
