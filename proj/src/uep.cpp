#include "amra/uep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

#include "amra/ops.hpp"

namespace amra {

namespace {

constexpr std::size_t kMaxViolations = 100;

void record(UepReport& rep, const RationalVec& omega, const IVec& m, double residual, double tol) {
  rep.worst_violation = std::max(rep.worst_violation, residual);
  if (residual > tol) {
    rep.certified = false;
    rep.violations.push_back({omega, m, residual});
  }
}

void finalize(UepReport& rep) {
  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const UepViolation& a, const UepViolation& b) {
              if (a.residual != b.residual) return a.residual > b.residual;
              if (a.omega != b.omega) return lex_less(a.omega, b.omega);
              return a.m < b.m;
            });
  if (rep.violations.size() > kMaxViolations) rep.violations.resize(kMaxViolations);
}

// Exact membership of omega in the dual coset set of m: m^T omega integral.
bool in_dual_lattice(const IntMatrix& m, const RationalVec& omega) {
  const IntMatrix mt = m.transposed();
  const int d = m.dim();
  for (int i = 0; i < d; ++i) {
    Rational s(0);
    for (int j = 0; j < d; ++j) s = s + Rational(mt(i, j)) * omega[j];
    if (!s.is_integer()) return false;
  }
  return true;
}

}  // namespace

UepReport check_uep_general(const FilterBank& bank, double tol) {
  const int d = bank.dim();

  // Omega = union of the dual coset sets, deduplicated exactly
  std::vector<RationalVec> omegas;
  for (const BankItem& it : bank.items())
    for (RationalVec& w : dual_coset_reps(it.matrix)) omegas.push_back(std::move(w));
  std::sort(omegas.begin(), omegas.end(),
            [](const RationalVec& a, const RationalVec& b) { return lex_less(a, b); });
  omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());

  UepReport rep;
  const IVec zero(d, 0);
  for (const RationalVec& omega : omegas) {
    std::vector<int> group;
    for (int i = 0; i < bank.size(); ++i)
      if (in_dual_lattice(bank.item(i).matrix, omega)) group.push_back(i);

    Box mbox = Box::single(zero);
    for (int i : group) {
      const Box& s = bank.item(i).mask.support();
      mbox = mbox.hull(s.difference(s));
    }

    const bool omega_zero = is_zero(omega);
    for_each_point(mbox, [&](const IVec& m) {
      cdouble c(0.0, 0.0);
      for (int i : group) c += correlation(bank.item(i).mask, bank.item(i).mask, m, omega);
      const double target = (omega_zero && m == zero) ? 1.0 : 0.0;
      record(rep, omega, m, std::abs(c - cdouble(target, 0.0)), tol);
    });
  }
  finalize(rep);
  return rep;
}

UepReport check_uep_same_lattice(const FilterBank& bank, double tol) {
  const int d = bank.dim();
  const IntMatrix& m0 = bank.item(0).matrix;
  for (const BankItem& it : bank.items())
    if (!lattice_equal(m0, it.matrix))
      throw std::invalid_argument(
          "check_uep_same_lattice requires all matrices to generate one lattice");

  const double inv_det = 1.0 / static_cast<double>(std::abs(m0.determinant()));
  const IVec zero(d, 0);
  Box kbox = Box::single(zero);
  for (const BankItem& it : bank.items()) {
    const Box& s = it.mask.support();
    kbox = kbox.hull(s.difference(s));
  }

  UepReport rep;
  for (const IVec& gamma : coset_reps(m0)) {
    RationalVec gamma_q(d);
    for (int i = 0; i < d; ++i) gamma_q[i] = Rational(gamma[i]);

    for_each_point(kbox, [&](const IVec& k) {
      cdouble sum(0.0, 0.0);
      for (const BankItem& it : bank.items()) {
        const Box& s = it.mask.support();
        if (s.is_empty()) continue;
        // n with M n + gamma inside the mask support
        IVec neg_gamma(d);
        for (int i = 0; i < d; ++i) neg_gamma[i] = -gamma[i];
        const Box nbox = rational_preimage_box(m0, s.shifted(neg_gamma));
        IVec p(d), pk(d);
        for_each_point(nbox, [&](const IVec& n) {
          for (int i = 0; i < d; ++i) {
            std::int64_t t = gamma[i];
            for (int j = 0; j < d; ++j) t += m0(i, j) * n[j];
            p[i] = t;
            pk[i] = t + k[i];
          }
          sum += std::conj(it.mask.at(pk)) * it.mask.at(p);
        });
      }
      const double target = (k == zero) ? inv_det : 0.0;
      record(rep, gamma_q, k, std::abs(sum - cdouble(target, 0.0)), tol);
    });
  }
  finalize(rep);
  return rep;
}

double reconstruction_error(const FilterBank& bank, const Signal& v) {
  std::vector<Signal> parts;
  parts.reserve(bank.size());
  for (const BankItem& it : bank.items()) parts.push_back(transition(it.mask, it.matrix, v));
  return max_abs_diff(reconstruct_step(bank, parts), v);
}

bool agreement(const FilterBank& bank, double tol) {
  const UepReport rep = check_uep_general(bank, tol);

  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<std::int64_t> extent(4, bank.dim() <= 2 ? 14 : 8);
  bool pr_holds = true;
  for (int trial = 0; trial < 50; ++trial) {
    IVec lo(bank.dim()), shape(bank.dim());
    for (int i = 0; i < bank.dim(); ++i) {
      lo[i] = -2 + static_cast<std::int64_t>(rng() % 5);
      shape[i] = extent(rng);
    }
    Box b(lo, shape);
    std::vector<cdouble> data(static_cast<std::size_t>(b.size()));
    for (auto& x : data) x = cdouble(coeff(rng), 0.0);
    if (reconstruction_error(bank, Signal(b, std::move(data))) > 1e-10) pr_holds = false;
  }
  return rep.certified == pr_holds;
}

}  // namespace amra
