#include "amra/bankgen.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace amra {

namespace {

Mask mask_1d(std::int64_t offset, std::vector<double> coeffs, Band band) {
  Box b(IVec{offset}, IVec{static_cast<std::int64_t>(coeffs.size())});
  return Mask(std::move(b), std::move(coeffs), band);
}

void certify_or_throw(const FilterBank& bank, bool same_lattice, const char* what) {
  const UepReport rep =
      same_lattice ? check_uep_same_lattice(bank) : check_uep_general(bank);
  if (!rep.certified)
    throw std::runtime_error(std::string(what) + ": construction failed certification, worst " +
                             std::to_string(rep.worst_violation));
}

FilterBank single_lattice_bank(const IntMatrix& l, SeedName seed, const char* what) {
  const SmithDecomposition smith = smith_factor(l);
  const int d = l.dim();

  std::vector<std::vector<Mask>> factor_filters(d);
  for (int i = 0; i < d; ++i) {
    const std::int64_t di = smith.d(i, i);
    if (di == 1) {
      factor_filters[i] = {Mask::delta(1)};
    } else if (seed == SeedName::linear_spline && di == 4) {
      factor_filters[i] = seed_bank(SeedName::haar, 4).filters;  // spline family has no 4-bank
    } else {
      factor_filters[i] = seed_bank(seed, di).filters;
    }
  }

  std::vector<BankItem> items;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    std::vector<Mask> factors;
    factors.reserve(d);
    for (int i = 0; i < d; ++i) factors.push_back(factor_filters[i][idx[i]]);
    items.push_back({remap_by_unimodular(tensor(factors), smith.e), l});

    int i = d - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < factor_filters[i].size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }

  // the all-low combination is the first in lexicographic order
  int lows = 0;
  for (const BankItem& it : items)
    if (it.mask.band() == Band::low) ++lows;
  FilterBank bank(d, std::move(items), lows);
  certify_or_throw(bank, true, what);
  return bank;
}

}  // namespace

SeedBank1D seed_bank(SeedName name, std::int64_t dilation) {
  SeedBank1D bank{name, dilation, {}};
  if (name == SeedName::haar && dilation == 2) {
    bank.filters = {mask_1d(0, {0.5, 0.5}, Band::low), mask_1d(0, {0.5, -0.5}, Band::high)};
  } else if (name == SeedName::haar && dilation == 4) {
    bank.filters = {mask_1d(0, {0.25, 0.25, 0.25, 0.25}, Band::low),
                    mask_1d(0, {0.25, 0.25, -0.25, -0.25}, Band::high),
                    mask_1d(0, {0.25, -0.25, -0.25, 0.25}, Band::high),
                    mask_1d(0, {0.25, -0.25, 0.25, -0.25}, Band::high)};
  } else if (name == SeedName::linear_spline && dilation == 2) {
    const double q = std::sqrt(2.0) / 4.0;
    bank.filters = {mask_1d(-1, {0.25, 0.5, 0.25}, Band::low),
                    mask_1d(-1, {q, 0.0, -q}, Band::high),
                    mask_1d(-1, {-0.25, 0.5, -0.25}, Band::high)};
  } else {
    throw std::invalid_argument("no seed bank for this family/dilation combination");
  }

  std::vector<BankItem> items;
  const IntMatrix m = IntMatrix::diagonal(IVec{dilation});
  for (const Mask& f : bank.filters) items.push_back({f, m});
  certify_or_throw(FilterBank(1, std::move(items), 1), true, "seed_bank");
  return bank;
}

IntMatrix shear_matrix_2d(std::int64_t s) {
  IntMatrix m = IntMatrix::identity(2);
  m(0, 1) = s;
  return m;
}

IntMatrix shear_matrix_3d(std::int64_t s1, std::int64_t s2) {
  IntMatrix m = IntMatrix::identity(3);
  m(0, 1) = s1;
  m(0, 2) = s2;
  return m;
}

IntMatrix parabolic_matrix(int dim) {
  if (dim == 2) return IntMatrix::diagonal(IVec{4, 2});
  if (dim == 3) return IntMatrix::diagonal(IVec{4, 2, 2});
  throw std::invalid_argument("parabolic scaling is provided for dimensions 2 and 3");
}

FilterBank lattice_bank(const IntMatrix& l, SeedName seed) {
  return single_lattice_bank(l, seed, "lattice_bank");
}

FilterBank merge_banks(const std::vector<FilterBank>& groups) {
  if (groups.empty()) throw std::invalid_argument("merge_banks requires at least one group");
  if (groups.size() == 1) return groups[0];
  const int d = groups[0].dim();
  const double c = 1.0 / std::sqrt(static_cast<double>(groups.size()));

  std::vector<BankItem> lows, highs;
  for (const FilterBank& g : groups) {
    if (g.dim() != d) throw std::invalid_argument("merge_banks dimension mismatch");
    for (int i = 0; i < g.size(); ++i) {
      BankItem it{scale(g.item(i).mask, c), g.item(i).matrix};
      (g.is_low(i) ? lows : highs).push_back(std::move(it));
    }
  }
  const int separator = static_cast<int>(lows.size());
  for (BankItem& it : highs) lows.push_back(std::move(it));
  FilterBank merged(d, std::move(lows), separator);
  certify_or_throw(merged, false, "merge_banks");
  return merged;
}

namespace {

std::int64_t class_key(const std::int64_t& s) { return ((s % 2) + 2) % 2; }

std::pair<std::int64_t, std::int64_t> class_key(const std::pair<std::int64_t, std::int64_t>& s) {
  return {((s.first % 2) + 2) % 2, ((s.second % 2) + 2) % 2};
}

}  // namespace

FilterBank shearlet_bank_2d(const std::vector<std::int64_t>& shears, SeedName seed,
                            const ShearAssignment<std::int64_t>& assign) {
  if (shears.empty()) throw std::invalid_argument("shear list must not be empty");

  std::map<std::int64_t, std::vector<std::int64_t>> classes;
  for (std::int64_t s : shears) classes[class_key(s)].push_back(s);

  const IntMatrix a4 = parabolic_matrix(2);
  std::vector<FilterBank> groups;
  for (const auto& [parity, members] : classes) {
    const IntMatrix lattice = parity == 0 ? a4 : shear_matrix_2d(1) * a4;
    FilterBank base = lattice_bank(lattice, seed);
    std::vector<BankItem> items;
    items.reserve(base.size());
    for (int i = 0; i < base.size(); ++i) {
      const std::size_t idx = static_cast<std::size_t>(i);
      const std::int64_t k = assign ? assign(idx, members) : members[idx % members.size()];
      if (class_key(k) != parity)
        throw std::invalid_argument("assigned shear leaves the lattice class");
      items.push_back({base.item(i).mask, shear_matrix_2d(k) * a4});
    }
    groups.push_back(FilterBank(2, std::move(items), base.separator()));
  }

  FilterBank merged = merge_banks(groups);
  if (groups.size() > 1) return merged;  // merge_banks already certified
  certify_or_throw(merged, false, "shearlet_bank_2d");
  return merged;
}

FilterBank shearlet_bank_3d(const std::vector<std::pair<std::int64_t, std::int64_t>>& shears,
                            SeedName seed,
                            const ShearAssignment<std::pair<std::int64_t, std::int64_t>>& assign) {
  if (shears.empty()) throw std::invalid_argument("shear list must not be empty");

  std::map<std::pair<std::int64_t, std::int64_t>,
           std::vector<std::pair<std::int64_t, std::int64_t>>>
      classes;
  for (const auto& s : shears) classes[class_key(s)].push_back(s);

  const IntMatrix a4 = parabolic_matrix(3);
  std::vector<FilterBank> groups;
  for (const auto& [parity, members] : classes) {
    const IntMatrix lattice = shear_matrix_3d(parity.first, parity.second) * a4;
    FilterBank base = lattice_bank(lattice, seed);
    std::vector<BankItem> items;
    items.reserve(base.size());
    for (int i = 0; i < base.size(); ++i) {
      const std::size_t idx = static_cast<std::size_t>(i);
      const auto [s1, s2] = assign ? assign(idx, members) : members[idx % members.size()];
      if (class_key({s1, s2}) != parity)
        throw std::invalid_argument("assigned shear leaves the lattice class");
      items.push_back({base.item(i).mask, shear_matrix_3d(s1, s2) * a4});
    }
    groups.push_back(FilterBank(3, std::move(items), base.separator()));
  }

  FilterBank merged = merge_banks(groups);
  if (groups.size() > 1) return merged;
  certify_or_throw(merged, false, "shearlet_bank_3d");
  return merged;
}

}  // namespace amra
