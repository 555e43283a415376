#pragma once

#include "amra/filterbank.hpp"
#include "amra/signal.hpp"

namespace amra {

/// Analysis step (filtering by the reversed conjugate mask, then
/// downsampling by m):
///   [transition(a, m, v)](n) = sum_k v(k) conj(a(k - m n)).
/// The output is supported on {n : m n in supp(v) - supp(a)} and trimmed.
Signal transition(const Mask& a, const IntMatrix& m, const Signal& v);

/// Synthesis step (upsampling by m, then filtering, scaled by |det m|):
///   [subdivide(a, m, v)](n) = |det m| sum_k v(k) a(n - m k).
Signal subdivide(const Mask& a, const IntMatrix& m, const Signal& v);

/// sum_i subdivide(bank[i].mask, bank[i].matrix, parts[i]); the single-step
/// inverse of the bank's transitions whenever the bank satisfies the
/// extension principle.
Signal reconstruct_step(const FilterBank& bank, const std::vector<Signal>& parts);

}  // namespace amra
