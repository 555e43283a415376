#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amra/bankgen.hpp"
#include "amra/filterbank.hpp"
#include "amra/ops.hpp"
#include "amra/uep.hpp"

namespace amra {

/// Tree position: the 1-based channel indices taken from the root. The
/// empty path is the root. Serialized form is zero-padded to the plan
/// depth ("2-1-0").
struct NodeId {
  std::vector<int> path;

  int level() const { return static_cast<int>(path.size()); }
  NodeId child(int channel) const;
  NodeId parent() const;

  /// Zero-padded fixed-length encoding, components joined by '-'.
  std::string padded(int depth) const;
  static NodeId from_padded(const std::string& s, int depth);

  bool operator==(const NodeId& o) const { return path == o.path; }
  bool operator<(const NodeId& o) const;  // by level, then lexicographic
};

struct LeafSets {
  std::vector<NodeId> low;   // low leaves at the finest level
  std::vector<NodeId> high;  // high leaves across all levels
};

struct PlanNodeReport {
  NodeId node;
  UepReport report;
};

struct PlanReport {
  bool certified = true;
  double worst_violation = 0.0;
  std::vector<PlanNodeReport> refuted_nodes;
};

/// Multi-level expansion plan: one default bank per level plus optional
/// per-node overrides (the adaptivity hook). Every low node of level
/// j < depth is expanded by its bank; high outputs are never expanded.
/// Also carries the level-0 refinable pair used by the continuum-side
/// diagnostics (defaults to 2I and the tensor averaging mask).
class TreePlan {
 public:
  TreePlan(int dim, std::vector<FilterBank> level_banks,
           std::map<NodeId, FilterBank> overrides = {});

  int dim() const { return dim_; }
  int depth() const { return static_cast<int>(level_banks_.size()); }

  const FilterBank& bank_at(const NodeId& node) const;
  const std::vector<FilterBank>& level_banks() const { return level_banks_; }
  const std::map<NodeId, FilterBank>& overrides() const { return overrides_; }

  /// Copy of the plan with the bank at one expansion node replaced.
  TreePlan with_override(const NodeId& node, const FilterBank& bank) const;

  /// All low nodes of levels 0..depth-1 (the expansion domain), in order.
  std::vector<NodeId> expansion_nodes() const;
  std::vector<NodeId> low_nodes_at_level(int level) const;
  LeafSets predicted_leaves() const;

  const IntMatrix& base_matrix() const { return base_matrix_; }
  const Mask& base_mask() const { return base_mask_; }
  void set_base_pair(const IntMatrix& m0, const Mask& a);

  /// Stable content digest (used to bind stored coefficient sets to the
  /// plan that produced them).
  std::string digest() const;

 private:
  int dim_;
  std::vector<FilterBank> level_banks_;
  std::map<NodeId, FilterBank> overrides_;
  IntMatrix base_matrix_;
  Mask base_mask_;
};

/// Per-node certification of a plan: every distinct bank is checked once
/// and refutations are mapped back to the nodes using them.
PlanReport validate_plan(const TreePlan& plan, double tol = kDefaultUepTol);

/// Coefficient tree produced by the decomposition. Key sets match the
/// plan's predicted leaf sets exactly. `accumulated` holds, per leaf, the
/// exact product of the inverse dilation matrices along its path.
struct Pyramid {
  std::map<NodeId, Signal> low;
  std::map<NodeId, Signal> high;
  std::map<NodeId, RationalMatrix> accumulated;
  std::string plan_digest;
};

struct RunOptions {
  bool force = false;  // skip plan certification
  int threads = 1;     // sibling-level parallelism; output is identical for any count
};

/// Multi-level decomposition: breadth-first transition of every low node
/// by its bank. Refuses uncertified plans unless options.force is set.
Pyramid fad(const TreePlan& plan, const Signal& v, const RunOptions& options = {});

/// Multi-level reconstruction: level-by-level reconstruct_step in reverse
/// order. Throws if the pyramid's key sets do not match the plan.
Signal far(const TreePlan& plan, const Pyramid& p, const RunOptions& options = {});

struct ShearletPlanSpec {
  int dim = 2;  // 2 or 3
  std::vector<std::vector<std::int64_t>> shears_2d;  // one list per level
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> shears_3d;
  std::vector<int> separators;  // optional; 0 keeps the bank's default split
  SeedName seed = SeedName::haar;
};

/// Plan whose level banks are shearlet banks built from the per-level
/// shear selections.
TreePlan shearlet_plan(const ShearletPlanSpec& spec);

}  // namespace amra
