#include "amra/tree.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

namespace amra {

namespace {

// FNV-1a over a byte stream; enough to bind coefficient directories to
// the plan that wrote them.
struct Digest {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  }
  void str(const std::string& s) { bytes(s.data(), s.size()); }
  void i64(std::int64_t v) { bytes(&v, sizeof v); }
  void f64(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0.0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    str(buf);
  }
};

void digest_mask(Digest& d, const Mask& m) {
  d.i64(m.dim());
  d.i64(m.band() == Band::low ? 0 : 1);
  for (auto v : m.support().lo) d.i64(v);
  for (auto v : m.support().shape) d.i64(v);
  for (const auto& c : m.data()) {
    d.f64(c.real());
    d.f64(c.imag());
  }
}

void digest_bank(Digest& d, const FilterBank& b) {
  d.i64(b.dim());
  d.i64(b.size());
  d.i64(b.separator());
  for (const BankItem& it : b.items()) {
    digest_mask(d, it.mask);
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) d.i64(it.matrix(i, j));
  }
}

// Run tasks [0, n) on `threads` workers; each task writes only its own slot.
void run_tasks(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<std::size_t>(threads, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        task(i);
      }
    });
  for (auto& t : pool) t.join();
}

Mask default_base_mask(int dim) {
  std::vector<Mask> factors(dim, Mask(Box(IVec{0}, IVec{2}), std::vector<double>{0.5, 0.5},
                                      Band::low));
  return tensor(factors);
}

}  // namespace

NodeId NodeId::child(int channel) const {
  NodeId c = *this;
  c.path.push_back(channel);
  return c;
}

NodeId NodeId::parent() const {
  if (path.empty()) throw std::logic_error("root has no parent");
  NodeId p = *this;
  p.path.pop_back();
  return p;
}

std::string NodeId::padded(int depth) const {
  if (static_cast<int>(path.size()) > depth)
    throw std::invalid_argument("path longer than plan depth");
  std::string s;
  const int n = depth > 0 ? depth : 1;
  for (int i = 0; i < n; ++i) {
    if (i) s += '-';
    s += std::to_string(i < static_cast<int>(path.size()) ? path[i] : 0);
  }
  return s;
}

NodeId NodeId::from_padded(const std::string& s, int depth) {
  std::vector<int> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dash = s.find('-', pos);
    const std::string part = s.substr(pos, dash == std::string::npos ? dash : dash - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed node id: " + s);
    parts.push_back(std::stoi(part));
    if (dash == std::string::npos) break;
    pos = dash + 1;
  }
  if (static_cast<int>(parts.size()) != (depth > 0 ? depth : 1))
    throw std::invalid_argument("node id length does not match plan depth: " + s);
  NodeId id;
  bool padding = false;
  for (int v : parts) {
    if (v == 0) {
      padding = true;
    } else {
      if (padding) throw std::invalid_argument("malformed node id: " + s);
      id.path.push_back(v);
    }
  }
  return id;
}

bool NodeId::operator<(const NodeId& o) const {
  if (path.size() != o.path.size()) return path.size() < o.path.size();
  return path < o.path;
}

TreePlan::TreePlan(int dim, std::vector<FilterBank> level_banks,
                   std::map<NodeId, FilterBank> overrides)
    : dim_(dim),
      level_banks_(std::move(level_banks)),
      overrides_(std::move(overrides)),
      base_matrix_(IntMatrix::diagonal(IVec(dim, 2))),
      base_mask_(default_base_mask(dim)) {
  for (const FilterBank& b : level_banks_)
    if (b.dim() != dim_) throw std::invalid_argument("level bank dimension mismatch");
  for (const auto& [node, bank] : overrides_) {
    if (bank.dim() != dim_) throw std::invalid_argument("override bank dimension mismatch");
    if (node.level() >= depth())
      throw std::invalid_argument("override below the finest level");
  }
  // every override key must be an expansion node actually reached
  std::map<NodeId, bool> seen;
  for (const NodeId& n : expansion_nodes()) seen[n] = true;
  for (const auto& [node, bank] : overrides_)
    if (!seen.count(node))
      throw std::invalid_argument("override at a node that is never expanded");
}

const FilterBank& TreePlan::bank_at(const NodeId& node) const {
  const auto it = overrides_.find(node);
  if (it != overrides_.end()) return it->second;
  if (node.level() >= depth()) throw std::invalid_argument("no bank below the finest level");
  return level_banks_[node.level()];
}

TreePlan TreePlan::with_override(const NodeId& node, const FilterBank& bank) const {
  std::map<NodeId, FilterBank> ov = overrides_;
  ov.erase(node);
  ov.emplace(node, bank);
  TreePlan plan(dim_, level_banks_, std::move(ov));
  plan.base_matrix_ = base_matrix_;
  plan.base_mask_ = base_mask_;
  return plan;
}

std::vector<NodeId> TreePlan::expansion_nodes() const {
  std::vector<NodeId> out;
  std::vector<NodeId> frontier{NodeId{}};
  for (int level = 0; level < depth(); ++level) {
    std::vector<NodeId> next;
    for (const NodeId& node : frontier) {
      out.push_back(node);
      const FilterBank& bank = bank_at(node);
      for (int i = 1; i <= bank.separator(); ++i) next.push_back(node.child(i));
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<NodeId> TreePlan::low_nodes_at_level(int level) const {
  std::vector<NodeId> frontier{NodeId{}};
  for (int l = 0; l < level; ++l) {
    std::vector<NodeId> next;
    for (const NodeId& node : frontier) {
      const FilterBank& bank = bank_at(node);
      for (int i = 1; i <= bank.separator(); ++i) next.push_back(node.child(i));
    }
    frontier = std::move(next);
  }
  return frontier;
}

LeafSets TreePlan::predicted_leaves() const {
  LeafSets leaves;
  std::vector<NodeId> frontier{NodeId{}};
  for (int level = 0; level < depth(); ++level) {
    std::vector<NodeId> next;
    for (const NodeId& node : frontier) {
      const FilterBank& bank = bank_at(node);
      for (int i = 1; i <= bank.size(); ++i) {
        if (i <= bank.separator())
          next.push_back(node.child(i));
        else
          leaves.high.push_back(node.child(i));
      }
    }
    frontier = std::move(next);
  }
  leaves.low = std::move(frontier);
  return leaves;
}

void TreePlan::set_base_pair(const IntMatrix& m0, const Mask& a) {
  if (m0.dim() != dim_ || a.dim() != dim_)
    throw std::invalid_argument("base pair dimension mismatch");
  if (m0.is_singular()) throw std::invalid_argument("base matrix must be nonsingular");
  base_matrix_ = m0;
  base_mask_ = a;
}

std::string TreePlan::digest() const {
  Digest d;
  d.i64(dim_);
  d.i64(depth());
  for (const FilterBank& b : level_banks_) digest_bank(d, b);
  for (const auto& [node, bank] : overrides_) {
    d.str(node.padded(depth()));
    digest_bank(d, bank);
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) d.i64(base_matrix_(i, j));
  digest_mask(d, base_mask_);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d.h));
  return buf;
}

PlanReport validate_plan(const TreePlan& plan, double tol) {
  PlanReport rep;
  // distinct banks are certified once; verdicts map back to the nodes
  std::vector<std::optional<UepReport>> level_reports(plan.depth());
  for (const NodeId& node : plan.expansion_nodes()) {
    const bool overridden = plan.overrides().count(node) > 0;
    UepReport node_report;
    if (overridden) {
      node_report = check_uep_general(plan.bank_at(node), tol);
    } else {
      auto& slot = level_reports[node.level()];
      if (!slot) slot = check_uep_general(plan.bank_at(node), tol);
      node_report = *slot;
    }
    rep.worst_violation = std::max(rep.worst_violation, node_report.worst_violation);
    if (!node_report.certified) {
      rep.certified = false;
      rep.refuted_nodes.push_back({node, std::move(node_report)});
    }
  }
  return rep;
}

Pyramid fad(const TreePlan& plan, const Signal& v, const RunOptions& options) {
  if (v.dim() != plan.dim()) throw std::invalid_argument("data dimension mismatch");
  if (!options.force) {
    const PlanReport rep = validate_plan(plan);
    if (!rep.certified)
      throw std::runtime_error("plan failed certification (worst violation " +
                               std::to_string(rep.worst_violation) + "); pass force to override");
  }

  Pyramid out;
  out.plan_digest = plan.digest();
  const RationalMatrix id(IntMatrix::identity(plan.dim()), 1);

  std::vector<std::pair<NodeId, Signal>> frontier{{NodeId{}, v}};
  std::vector<std::pair<NodeId, RationalMatrix>> frontier_acc{{NodeId{}, id}};

  for (int level = 0; level < plan.depth(); ++level) {
    struct Task {
      std::size_t parent;
      int channel;  // 1-based
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < frontier.size(); ++p) {
      const FilterBank& bank = plan.bank_at(frontier[p].first);
      for (int i = 1; i <= bank.size(); ++i) tasks.push_back({p, i});
    }

    std::vector<Signal> results(tasks.size());
    run_tasks(tasks.size(), options.threads, [&](std::size_t t) {
      const auto& [pidx, channel] = tasks[t];
      const FilterBank& bank = plan.bank_at(frontier[pidx].first);
      const BankItem& it = bank.item(channel - 1);
      results[t] = transition(it.mask, it.matrix, frontier[pidx].second);
    });

    std::vector<std::pair<NodeId, Signal>> next;
    std::vector<std::pair<NodeId, RationalMatrix>> next_acc;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const auto& [pidx, channel] = tasks[t];
      const FilterBank& bank = plan.bank_at(frontier[pidx].first);
      const NodeId child = frontier[pidx].first.child(channel);
      const RationalMatrix acc =
          RationalMatrix::inverse_of(bank.item(channel - 1).matrix) * frontier_acc[pidx].second;
      if (channel <= bank.separator()) {
        next.emplace_back(child, std::move(results[t]));
        next_acc.emplace_back(child, acc);
      } else {
        out.high.emplace(child, std::move(results[t]));
        out.accumulated.emplace(child, acc);
      }
    }
    frontier = std::move(next);
    frontier_acc = std::move(next_acc);
  }

  for (std::size_t i = 0; i < frontier.size(); ++i) {
    out.low.emplace(frontier[i].first, std::move(frontier[i].second));
    out.accumulated.emplace(frontier_acc[i].first, frontier_acc[i].second);
  }
  return out;
}

Signal far(const TreePlan& plan, const Pyramid& p, const RunOptions& options) {
  const LeafSets predicted = plan.predicted_leaves();
  const auto keys_match = [](const std::map<NodeId, Signal>& have,
                             const std::vector<NodeId>& want) {
    if (have.size() != want.size()) return false;
    for (const NodeId& n : want)
      if (!have.count(n)) return false;
    return true;
  };
  if (!keys_match(p.low, predicted.low) || !keys_match(p.high, predicted.high))
    throw std::invalid_argument("pyramid leaves do not match the plan");

  std::map<NodeId, Signal> work(p.low);
  for (int level = plan.depth() - 1; level >= 0; --level) {
    const std::vector<NodeId> parents = plan.low_nodes_at_level(level);
    std::vector<Signal> results(parents.size());
    run_tasks(parents.size(), options.threads, [&](std::size_t t) {
      const NodeId& alpha = parents[t];
      const FilterBank& bank = plan.bank_at(alpha);
      std::vector<Signal> parts;
      parts.reserve(bank.size());
      for (int i = 1; i <= bank.size(); ++i) {
        const NodeId child = alpha.child(i);
        parts.push_back(i <= bank.separator() ? work.at(child) : p.high.at(child));
      }
      results[t] = reconstruct_step(bank, parts);
    });
    std::map<NodeId, Signal> next;
    for (std::size_t t = 0; t < parents.size(); ++t) next.emplace(parents[t], std::move(results[t]));
    work = std::move(next);
  }
  return work.at(NodeId{});
}

TreePlan shearlet_plan(const ShearletPlanSpec& spec) {
  if (spec.dim != 2 && spec.dim != 3)
    throw std::invalid_argument("shearlet plans are provided for dimensions 2 and 3");
  const std::size_t depth = spec.dim == 2 ? spec.shears_2d.size() : spec.shears_3d.size();
  if (depth == 0) throw std::invalid_argument("shearlet plan needs at least one level");
  if (!spec.separators.empty() && spec.separators.size() != depth)
    throw std::invalid_argument("one separator per level expected");

  std::vector<FilterBank> banks;
  for (std::size_t j = 0; j < depth; ++j) {
    FilterBank bank = spec.dim == 2 ? shearlet_bank_2d(spec.shears_2d[j], spec.seed)
                                    : shearlet_bank_3d(spec.shears_3d[j], spec.seed);
    if (!spec.separators.empty() && spec.separators[j] > 0)
      bank = bank.with_separator(spec.separators[j]);
    banks.push_back(std::move(bank));
  }
  return TreePlan(spec.dim, std::move(banks));
}

}  // namespace amra
