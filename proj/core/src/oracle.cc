#include "hpxf/oracle.h"

#include <algorithm>
#include <sstream>

#include "hpxf/errors.h"

namespace hpxf {

namespace {

void enforce_guard(const Domain &d, const OracleScaleGuard &guard) {
    if (d.fluents.size() > guard.max_fluents)
        throw Error("oracle scale guard: domain has " + std::to_string(d.fluents.size()) +
                    " fluents, limit is " + std::to_string(guard.max_fluents));
    for (const auto &f : d.fluents)
        if (f.range.size() > guard.max_values)
            throw Error("oracle scale guard: fluent '" + f.name + "' has " +
                        std::to_string(f.range.size()) + " values, limit is " +
                        std::to_string(guard.max_values));
}

bool holds(const World &w, const std::vector<FluentValue> &pairs) {
    for (const auto &p : pairs)
        if (w.at(p.fluent) != p.value)
            return false;
    return true;
}

// Deterministic world step: all propositions of the applied actions fire
// when their conditions hold. A world where two firing propositions assign
// different values to one fluent has no deterministic successor.
std::optional<World> step_world(const World &w, const std::vector<ActionId> &applied,
                                const Domain &d, const CompiledEffectSet &compiled) {
    World next = w;
    std::vector<bool> written(d.fluents.size(), false);
    for (ActionId a : applied) {
        for (const EffectProposition *ep : compiled.eps_of(a)) {
            if (!holds(w, ep->conditions))
                continue;
            FluentId f = ep->effect.fluent;
            if (written[f.index] && next.at(f) != ep->effect.value)
                return std::nullopt;
            next.values[f.index] = ep->effect.value;
            written[f.index] = true;
        }
    }
    return next;
}

} // namespace

std::vector<World> initial_worlds(const Domain &d, const OracleScaleGuard &guard) {
    enforce_guard(d, guard);

    std::vector<World> worlds;
    World scratch;
    scratch.values.resize(d.fluents.size());

    // Fluents with a value proposition are fixed; the rest enumerate.
    std::vector<size_t> free_fluents;
    std::vector<ValueId> fixed(d.fluents.size(), ValueId{-1});
    for (const auto &vp : d.vps)
        fixed[vp.pair.fluent.index] = vp.pair.value;
    for (size_t i = 0; i < d.fluents.size(); ++i) {
        if (fixed[i].index >= 0)
            scratch.values[i] = fixed[i];
        else
            free_fluents.push_back(i);
    }

    auto scl_closed = [&](const World &w) {
        for (const auto &scl : d.scls)
            if (holds(w, scl.conditions) && w.at(scl.effect.fluent) != scl.effect.value)
                return false;
        return true;
    };

    // Odometer over the free fluents.
    std::vector<size_t> cursor(free_fluents.size(), 0);
    while (true) {
        for (size_t i = 0; i < free_fluents.size(); ++i)
            scratch.values[free_fluents[i]] = d.fluents[free_fluents[i]].range[cursor[i]];
        if (scl_closed(scratch))
            worlds.push_back(scratch);
        size_t i = 0;
        for (; i < free_fluents.size(); ++i) {
            if (++cursor[i] < d.fluents[free_fluents[i]].range.size())
                break;
            cursor[i] = 0;
        }
        if (i == free_fluents.size())
            break;
    }
    return worlds;
}

OracleProjection oracle_project(const TransitionTree &tree, const Domain &d,
                                const CompiledEffectSet &compiled,
                                const OracleScaleGuard &guard) {
    OracleProjection out;
    std::vector<World> roots = initial_worlds(d, guard);
    auto &root_trajs = out[{0, 0}];
    for (const auto &w : roots)
        root_trajs.push_back(WorldTrajectory{{w}});

    // Children grouped by (level, parent label).
    std::map<std::pair<int, int>, std::vector<const TreeNode *>> children;
    for (const auto &[key, node] : tree.nodes)
        if (key.first > 0)
            children[{key.first - 1, node.parent_label}].push_back(&node);

    for (const auto &[key, node] : tree.nodes) {
        auto kids_it = children.find(key);
        if (kids_it == children.end())
            continue;
        const auto &kids = kids_it->second;
        const auto &trajs = out[key];
        const int level = key.first;
        const auto &applied = kids.front()->applied;

        for (const TreeNode *child : kids) {
            auto &child_trajs = out[{child->level, child->label}];
            for (const auto &traj : trajs) {
                const World &current = traj.steps[level];
                if (child->sensed && current.at(child->sensed->fluent) != child->sensed->value)
                    continue;
                auto next = step_world(current, applied, d, compiled);
                if (!next)
                    continue;
                WorldTrajectory extended = traj;
                extended.steps.push_back(*next);
                child_trajs.push_back(std::move(extended));
            }
        }
    }
    return out;
}

std::string SoundnessReport::to_string() const {
    std::ostringstream out;
    for (const auto &v : violations)
        out << "violation " << v << "\n";
    out << "incompleteness " << incompleteness_count << "\n";
    return out.str();
}

SoundnessReport check_soundness(const TransitionTree &tree, const OracleProjection &oracle,
                                const Domain &d) {
    SoundnessReport report;
    for (const auto &[key, node] : tree.nodes) {
        if (!node.state)
            continue;
        auto it = oracle.find(key);
        const std::vector<WorldTrajectory> empty;
        const auto &trajs = it == oracle.end() ? empty : it->second;

        for (const auto &triple : node.state->kh.triples()) {
            for (const auto &traj : trajs) {
                ValueId actual = traj.steps[triple.step].at(triple.fluent);
                bool fails = triple.negative ? actual == triple.value : actual != triple.value;
                if (fails) {
                    report.violations.push_back("node (" + std::to_string(key.first) + "," +
                                                std::to_string(key.second) + ") " +
                                                render_triple(d, triple));
                    break;
                }
            }
        }

        if (trajs.empty())
            continue;
        const Step now = node.state->now();
        for (size_t fi = 0; fi < d.fluents.size(); ++fi) {
            FluentId f{static_cast<int32_t>(fi)};
            for (Step t = 0; t <= now; ++t) {
                for (ValueId v : d.range(f)) {
                    bool all_equal = true;
                    bool none_equal = true;
                    for (const auto &traj : trajs) {
                        if (traj.steps[t].at(f) == v)
                            none_equal = false;
                        else
                            all_equal = false;
                    }
                    if (all_equal && !node.state->kh.knows(f, v, t))
                        ++report.incompleteness_count;
                    if (none_equal && !node.state->kh.knows_not(f, v, t))
                        ++report.incompleteness_count;
                }
            }
        }
    }
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

} // namespace hpxf
