#ifndef HPXF_PLANNER_H
#define HPXF_PLANNER_H

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"
#include "hpxf/hstate.h"
#include "hpxf/kernel.h"

namespace hpxf {

// A contingent plan: one action set per step, continuing either linearly or
// per sensing outcome. Branch nodes appear only after steps containing a
// sensing action; an absent branch or continuation ends the plan on that
// path.
struct PlanNode {
    std::vector<ActionId> actions; // sorted
    std::unique_ptr<PlanNode> next;
    std::optional<FluentId> branch_fluent;
    std::vector<std::pair<ValueId, std::unique_ptr<PlanNode>>> branches;

    std::unique_ptr<PlanNode> clone() const;
};

using PlanPtr = std::unique_ptr<PlanNode>;

int plan_depth(const PlanNode *plan);

// Chains one step per action set; no branch blocks.
PlanPtr make_linear_plan(const std::vector<std::vector<ActionId>> &steps);

// Plan file format: nested `step { a1, a2 }` and `branch <f>=<v> { ... }`
// blocks.
PlanPtr parse_plan(const std::string &text, const Domain &d);
std::string print_plan(const Domain &d, const PlanNode *plan);

struct TreeNode {
    int level = 0;
    int label = 0;
    int parent_label = -1;
    std::vector<ActionId> applied;         // incoming action set
    std::optional<KnowledgeTriple> sensed; // incoming sensing outcome
    std::optional<HState> state;
    std::string error; // nonempty for an inconsistent branch
    bool leaf = true;
};

// Branch-labelled tree of h-states produced by projecting a plan. Branch
// labels: the first sensing outcome in value-declaration order keeps the
// parent label, the rest get the smallest labels never used before; label 0
// is the root. Labels beyond max_branches exceed the cap.
struct TransitionTree {
    std::map<std::pair<int, int>, TreeNode> nodes;
    int depth = 0;
    bool any_inconsistent = false;

    const TreeNode *find(int level, int label) const;
    std::vector<const TreeNode *> leaves() const;
};

struct PlanSearchConfig {
    int max_steps = 5;    // maxS
    int max_branches = 8; // maxB; branch labels range over 0..maxB
    bool concurrent = false;
};

// Temporal projection: iterates the transition function along the plan,
// routing each sensing outcome to its matching branch. Outcomes excluded by
// the knowledge history do not appear; inconsistent successors are kept as
// marked nodes. Throws BranchCapExceeded and propagates kernel errors.
TransitionTree project(const PlanNode *plan, const Domain &d,
                       const CompiledEffectSet &compiled, int max_branches = 8);

struct GoalReport {
    bool weak_satisfied = false;
    bool strong_satisfied = false;
    std::optional<std::pair<int, int>> weak_witness; // (level, label)
    std::vector<std::string> failures;
};

// Weak goals need one consistent leaf where every weak pair is positively
// known at the leaf's final step; strong goals must be known in every
// consistent leaf. Empty goal sets are satisfied.
GoalReport verify_goals(const TransitionTree &tree, const GoalSet &goals, const Domain &d);

struct PlanSearchResult {
    PlanPtr plan;  // null when no plan exists within bounds
    bool found = false;
};

// Bounded exhaustive contingent plan search: iterative-deepening DFS over
// action choices with memoization. Sequential mode places exactly one action
// per non-goal node; concurrent mode places nonempty executable subsets.
// NoPlan (found == false) proves non-existence within (max_steps,
// max_branches).
PlanSearchResult plan_search(const Domain &d, const CompiledEffectSet &compiled,
                             const PlanSearchConfig &cfg);

// Deterministic dump: `node (n,b)` headers in (level, label) order, each
// followed by the node's h-state dump.
std::string dump_tree(const Domain &d, const TransitionTree &tree);

} // namespace hpxf

#endif
