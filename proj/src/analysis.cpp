#include "amra/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "amra/ops.hpp"

namespace amra {

namespace {

constexpr int kMaxSumRules = 16;

// Coset key of p in Z^d / m Z^d: fractional part of m^{-1} p.
RationalVec coset_key(const RationalMatrix& inv, const IVec& p) {
  RationalVec k = inv * p;
  for (auto& c : k) c = c.mod1();
  return k;
}

bool sum_rules_hold(const Mask& a, const IntMatrix& m0, int tau, double tol) {
  const int d = a.dim();
  const RationalMatrix inv = RationalMatrix::inverse_of(m0);
  const std::vector<IVec> reps = coset_reps(m0);

  // enumerate multi-indices b with all b_i < tau and |b| < tau
  std::vector<IVec> exps;
  IVec b(d, 0);
  for (;;) {
    std::int64_t total = 0;
    for (auto e : b) total += e;
    if (total < tau) exps.push_back(b);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++b[i] < tau) break;
      b[i] = 0;
    }
    if (i < 0) break;
  }

  std::map<RationalVec, std::size_t, bool (*)(const RationalVec&, const RationalVec&)> index(
      lex_less);
  for (std::size_t i = 0; i < reps.size(); ++i) index[coset_key(inv, reps[i])] = i;

  for (const IVec& e : exps) {
    std::vector<cdouble> sums(reps.size(), cdouble(0.0, 0.0));
    for_each_point(a.support(), [&](const IVec& p) {
      double mono = 1.0;
      for (int i = 0; i < d; ++i)
        for (std::int64_t t = 0; t < e[i]; ++t) mono *= static_cast<double>(p[i]);
      sums[index.at(coset_key(inv, p))] += a.at(p) * mono;
    });
    const cdouble base = sums[index.at(coset_key(inv, IVec(d, 0)))];
    for (const cdouble& s : sums)
      if (std::abs(s - base) > tol) return false;
  }
  return true;
}

}  // namespace

int sum_rule_order(const Mask& a, const IntMatrix& m0, double tol) {
  if (m0.is_singular()) throw std::invalid_argument("sum_rule_order requires nonsingular matrix");
  if (a.dim() != m0.dim()) throw std::invalid_argument("sum_rule_order dimension mismatch");
  int tau = 0;
  while (tau < kMaxSumRules && sum_rules_hold(a, m0, tau + 1, tol)) ++tau;
  return tau;
}

bool is_isotropic(const IntMatrix& m0, double tol) {
  const int d = m0.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = static_cast<double>(m0(i, j));

  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) return false;

  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin >= 1e8) return false;  // numerically defective

  double lmin = 0, lmax = 0;
  for (int i = 0; i < d; ++i) {
    const double mod = std::abs(es.eigenvalues()[i]);
    if (i == 0 || mod < lmin) lmin = mod;
    if (i == 0 || mod > lmax) lmax = mod;
  }
  return lmax - lmin <= tol * lmax;
}

GridFunction cascade(const Mask& a, const IntMatrix& m0, int levels) {
  if (a.dim() != m0.dim()) throw std::invalid_argument("cascade dimension mismatch");
  if (m0.is_singular()) throw std::invalid_argument("cascade requires a nonsingular matrix");
  if (levels < 0) throw std::invalid_argument("cascade level must be >= 0");
  const std::vector<double> zero(a.dim(), 0.0);
  if (std::abs(symbol(a, zero) - cdouble(1.0, 0.0)) > 1e-10)
    throw std::invalid_argument("cascade requires a low-pass mask (symbol 1 at the origin)");

  GridFunction g;
  g.matrix = m0;
  g.level = levels;
  Signal cur = Signal::delta(a.dim());
  for (int j = 1; j <= levels; ++j) {
    Signal next = subdivide(a, m0, cur);
    if (j == levels && levels >= 1) {
      double delta = 0.0;
      for_each_point(cur.box(), [&](const IVec& n) {
        delta = std::max(delta, std::abs(cur.at(n) - next.at(m0 * n)));
      });
      g.refinement_delta = delta;
    }
    cur = std::move(next);
  }
  g.samples = std::move(cur);
  return g;
}

GridFunction node_generator_samples(const TreePlan& plan, const NodeId& leaf, int grid_level) {
  const LeafSets leaves = plan.predicted_leaves();
  const auto is_leaf = [&](const std::vector<NodeId>& set) {
    for (const NodeId& n : set)
      if (n == leaf) return true;
    return false;
  };
  if (!is_leaf(leaves.low) && !is_leaf(leaves.high))
    throw std::invalid_argument("node_generator_samples requires a leaf of the plan");
  if (!validate_plan(plan).certified)
    throw std::runtime_error("node_generator_samples requires a certified plan");

  const IntMatrix& m0 = plan.base_matrix();
  const IntMatrix m0j = pow(m0, grid_level);
  const RationalMatrix m0j_inv = RationalMatrix::inverse_of(m0j);

  GridFunction g = cascade(plan.base_mask(), m0, grid_level);
  Signal cur = std::move(g.samples);

  NodeId node;  // walk from the root down to the leaf
  for (int t = 0; t < leaf.level(); ++t) {
    const FilterBank& bank = plan.bank_at(node);
    const int channel = leaf.path[t];
    if (channel < 1 || channel > bank.size())
      throw std::invalid_argument("leaf path leaves the plan's tree");
    const Mask& a = bank.item(channel - 1).mask;
    const IntMatrix& m = bank.item(channel - 1).matrix;

    // grid transfer matrix m0^J m m0^{-J}; must be integral for the path
    // to stay on the fixed sampling grid
    const RationalMatrix wq = RationalMatrix(m0j * m, 1) * m0j_inv;
    if (!wq.is_integral())
      throw std::invalid_argument("dilation is not commensurable with the sampling grid");
    const IntMatrix w = wq.num;

    const double det = static_cast<double>(std::abs(m.determinant()));
    const Box reach = cur.box().sum(image_box(m0j, a.support()));
    const Box out = rational_preimage_box(w, reach);
    Signal next(out, std::vector<cdouble>(static_cast<std::size_t>(out.size())));
    IVec wn(m.dim()), pos(m.dim());
    for_each_point(out, [&](const IVec& n) {
      for (int i = 0; i < m.dim(); ++i) {
        std::int64_t s = 0;
        for (int k = 0; k < m.dim(); ++k) s += w(i, k) * n[k];
        wn[i] = s;
      }
      cdouble acc(0.0, 0.0);
      for_each_point(a.support(), [&](const IVec& k) {
        const IVec shift = m0j * k;
        for (int i = 0; i < m.dim(); ++i) pos[i] = wn[i] - shift[i];
        acc += a.at(k) * cur.at(pos);
      });
      next.set(n, det * acc);
    });
    cur = next.trimmed();
    node = node.child(channel);
  }

  g.samples = std::move(cur);
  g.refinement_delta = 0.0;
  return g;
}

std::vector<double> principal_axis(const GridFunction& g) {
  const int d = g.matrix.dim();
  const RationalMatrix inv = RationalMatrix::inverse_of(pow(g.matrix, g.level));

  double mass = 0.0;
  std::vector<double> mean(d, 0.0);
  std::vector<double> pos(d);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);

  for_each_point(g.samples.box(), [&](const IVec& n) {
    const double wgt = std::norm(g.samples.at(n));
    if (wgt == 0.0) return;
    const RationalVec x = inv * n;
    for (int i = 0; i < d; ++i) pos[i] = x[i].to_double();
    mass += wgt;
    for (int i = 0; i < d; ++i) mean[i] += wgt * pos[i];
  });
  if (mass == 0.0) throw std::invalid_argument("principal_axis of an empty sample set");
  for (int i = 0; i < d; ++i) mean[i] /= mass;

  for_each_point(g.samples.box(), [&](const IVec& n) {
    const double wgt = std::norm(g.samples.at(n));
    if (wgt == 0.0) return;
    const RationalVec x = inv * n;
    for (int i = 0; i < d; ++i) pos[i] = x[i].to_double() - mean[i];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cov(i, j) += wgt * pos[i] * pos[j];
  });
  cov /= mass;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd axis = es.eigenvectors().col(d - 1);  // largest eigenvalue last
  std::vector<double> out(d);
  for (int i = 0; i < d; ++i) out[i] = axis[i];
  return out;
}

}  // namespace amra
