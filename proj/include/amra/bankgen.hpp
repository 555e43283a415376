#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "amra/filterbank.hpp"
#include "amra/uep.hpp"

namespace amra {

enum class SeedName { haar, linear_spline };

/// Certified one-dimensional tight-frame filter bank for integer dilation.
struct SeedBank1D {
  SeedName name;
  std::int64_t dilation;
  std::vector<Mask> filters;  // low-pass first
};

/// Built-in 1-D seed banks. haar supports dilations 2 and 4 (the dilation-4
/// bank is the averaging filter plus the three Walsh-pattern high-pass
/// filters), linear_spline supports dilation 2. Every returned bank is
/// certified at construction.
SeedBank1D seed_bank(SeedName name, std::int64_t dilation = 2);

/// Shear matrix [[1, s], [0, 1]].
IntMatrix shear_matrix_2d(std::int64_t s);
/// Shear matrix [[1, s1, s2], [0, 1, 0], [0, 0, 1]].
IntMatrix shear_matrix_3d(std::int64_t s1, std::int64_t s2);
/// Anisotropic scaling diag(4,2) in 2-D, diag(4,2,2) in 3-D.
IntMatrix parabolic_matrix(int dim);

/// Tight-frame bank for the lattice generated by `l`, via the factorization
/// l = E D F: a 1-D seed bank per nontrivial invariant factor of D (the
/// trivial factors contribute the Dirac mask), tensored and remapped by E.
/// All items carry the matrix `l`; the single all-low tensor channel comes
/// first. Certified before returning.
///
/// For invariant factor 4 the linear_spline family falls back to the
/// dilation-4 haar bank (no spline bank of dilation 4 is provided).
FilterBank lattice_bank(const IntMatrix& l, SeedName seed);

/// Concatenation of independently certified banks, every mask scaled by
/// 1/sqrt(N) where N = groups.size(); low channels of all groups are
/// ordered before high channels. Certified before returning.
FilterBank merge_banks(const std::vector<FilterBank>& groups);

/// Chooses, for each channel of a lattice class, which of the class's
/// shears supplies its dilation matrix. Any choice keeps the bank
/// certified (all members of a class generate the same lattice).
template <class Shear>
using ShearAssignment =
    std::function<Shear(std::size_t channel_index, const std::vector<Shear>& class_shears)>;

/// 2-D shearlet bank: shears are partitioned by parity into at most two
/// lattice classes (even: diag(4,2) Z^2, odd: S_1 diag(4,2) Z^2), one
/// certified lattice bank is built per occupied class, each channel is
/// assigned the matrix S_k A_4 with k picked by `assign` (default:
/// round-robin over the class list), and the classes are merged with the
/// 1/sqrt(N) renormalization.
FilterBank shearlet_bank_2d(const std::vector<std::int64_t>& shears,
                            SeedName seed = SeedName::haar,
                            const ShearAssignment<std::int64_t>& assign = {});

/// 3-D variant, classes keyed by the parities of (s1, s2); matrices
/// S_{s1,s2} diag(4,2,2).
FilterBank shearlet_bank_3d(const std::vector<std::pair<std::int64_t, std::int64_t>>& shears,
                            SeedName seed = SeedName::haar,
                            const ShearAssignment<std::pair<std::int64_t, std::int64_t>>& assign = {});

}  // namespace amra
