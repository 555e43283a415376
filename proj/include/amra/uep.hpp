#pragma once

#include <string>
#include <vector>

#include "amra/filterbank.hpp"
#include "amra/signal.hpp"

namespace amra {

inline constexpr double kDefaultUepTol = 1e-10;

/// Result of certifying a filter bank against the extension-principle
/// identities. `certified` iff `worst_violation <= tol`. At most 100
/// violations are reported, sorted by decreasing magnitude.
struct UepViolation {
  RationalVec omega;  // aliasing frequency (or coset representative for the
                      // spatial-domain checker)
  IVec m;             // coefficient index
  double residual;
};

struct UepReport {
  bool certified = true;
  double worst_violation = 0.0;
  std::vector<UepViolation> violations;
};

/// Frequency-side certification over the union of the dual coset sets of
/// all bank matrices. For each aliasing frequency omega the trigonometric
/// polynomial
///   sum_{i : omega in Omega_i} symbol_i(xi) conj(symbol_i(xi + 2 pi omega))
/// is expanded coefficient-by-coefficient and compared against the
/// constant delta(omega). This is exact (not sampled) up to the per
/// coefficient tolerance.
UepReport check_uep_general(const FilterBank& bank, double tol = kDefaultUepTol);

/// Spatial-side certification for banks whose matrices all generate one
/// common lattice:
///   sum_i sum_n conj(a_i(k + M n + gamma)) a_i(M n + gamma)
///     == delta(k) / |det M|
/// for every coset representative gamma and every k. Throws on a
/// mixed-lattice bank.
UepReport check_uep_same_lattice(const FilterBank& bank, double tol = kDefaultUepTol);

/// Cross-validation of the two equivalent characterizations: runs the
/// frequency-side certification and, independently, tests single-step
/// perfect reconstruction on 50 seeded random signals. Returns true iff
/// both verdicts agree.
bool agreement(const FilterBank& bank, double tol = kDefaultUepTol);

/// Empirical single-step perfect-reconstruction error on one signal.
double reconstruction_error(const FilterBank& bank, const Signal& v);

}  // namespace amra
