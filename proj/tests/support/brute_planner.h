#ifndef HPXF_TESTS_BRUTE_PLANNER_H
#define HPXF_TESTS_BRUTE_PLANNER_H

#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"
#include "hpxf/kernel.h"
#include "hpxf/planner.h"

namespace hpxf::testing {

// Exhaustive sequential plan enumeration without pruning heuristics,
// memoization or witness threading: enumerates every complete assignment of
// one executable action per non-goal node up to the horizon, then asks
// project + verify_goals whether any of them satisfies the goals. Microscale
// only.
inline std::vector<PlanPtr> enumerate_plans(const Domain &d,
                                            const CompiledEffectSet &compiled,
                                            const HState &h, int remaining) {
    std::vector<PlanPtr> result;
    auto goals_hold = [&](const HState &state) {
        const Step t = state.now();
        for (const auto &g : d.goals.weak)
            if (!state.kh.knows(g.fluent, g.value, t))
                return false;
        for (const auto &g : d.goals.strong)
            if (!state.kh.knows(g.fluent, g.value, t))
                return false;
        return true;
    };
    if (remaining == 0 || goals_hold(h)) {
        result.push_back(nullptr);
        return result;
    }
    for (size_t ai = 0; ai < d.actions.size(); ++ai) {
        ActionId a{static_cast<int32_t>(ai)};
        if (!executable(a, h, d))
            continue;
        TransitionResult res;
        try {
            res = transition({a}, h, d, compiled);
        } catch (const Error &) {
            continue;
        }
        bool sensing = !res.successors.empty() && res.successors.front().sensed.has_value();
        if (!sensing) {
            if (!res.successors.front().state)
                continue;
            for (auto &sub : enumerate_plans(d, compiled, *res.successors.front().state,
                                             remaining - 1)) {
                auto node = std::make_unique<PlanNode>();
                node->actions = {a};
                node->next = sub ? sub->clone() : nullptr;
                result.push_back(std::move(node));
            }
            continue;
        }
        // Cartesian product of the per-outcome continuations.
        std::vector<std::pair<ValueId, std::vector<PlanPtr>>> per_branch;
        bool dead = false;
        for (const auto &succ : res.successors) {
            if (!succ.state)
                continue; // inconsistent outcome is pruned
            auto subs = enumerate_plans(d, compiled, *succ.state, remaining - 1);
            if (subs.empty())
                dead = true;
            per_branch.emplace_back(succ.sensed->value, std::move(subs));
        }
        if (dead)
            continue;
        std::vector<size_t> cursor(per_branch.size(), 0);
        while (true) {
            auto node = std::make_unique<PlanNode>();
            node->actions = {a};
            node->branch_fluent = res.successors.front().sensed->fluent;
            for (size_t i = 0; i < per_branch.size(); ++i) {
                const PlanPtr &sub = per_branch[i].second[cursor[i]];
                if (sub)
                    node->branches.emplace_back(per_branch[i].first, sub->clone());
            }
            if (node->branches.empty())
                node->branch_fluent.reset();
            result.push_back(std::move(node));
            size_t i = 0;
            for (; i < per_branch.size(); ++i) {
                if (++cursor[i] < per_branch[i].second.size())
                    break;
                cursor[i] = 0;
            }
            if (i == per_branch.size())
                break;
            if (result.size() > 5000)
                break; // enumeration guard for pathological cases
        }
        if (result.size() > 5000)
            break;
    }
    return result;
}

inline bool brute_force_plan_exists(const Domain &d, const CompiledEffectSet &compiled,
                                    int max_steps, int max_branches) {
    HState root = eval(initial_hstate(d), d, compiled);
    for (int horizon = 0; horizon <= max_steps; ++horizon) {
        for (const auto &plan : enumerate_plans(d, compiled, root, horizon)) {
            try {
                TransitionTree tree = project(plan.get(), d, compiled, max_branches);
                GoalReport report = verify_goals(tree, d.goals, d);
                if (report.weak_satisfied && report.strong_satisfied)
                    return true;
            } catch (const Error &) {
                continue;
            }
        }
    }
    return false;
}

} // namespace hpxf::testing

#endif
