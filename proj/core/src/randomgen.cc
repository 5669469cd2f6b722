#include "hpxf/randomgen.h"

#include <algorithm>
#include <set>
#include <string>

#include "hpxf/validate.h"

namespace hpxf {

namespace {

int pick(std::mt19937_64 &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64 &rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

FluentValue random_pair(std::mt19937_64 &rng, const Domain &d) {
    FluentId f{pick(rng, 0, static_cast<int>(d.fluents.size()) - 1)};
    const auto &range = d.range(f);
    return {f, range[pick(rng, 0, static_cast<int>(range.size()) - 1)]};
}

// Consistent condition set: at most one value per fluent.
std::vector<FluentValue> random_conditions(std::mt19937_64 &rng, const Domain &d,
                                           int max_conditions,
                                           std::optional<FluentId> exclude = {}) {
    std::vector<FluentValue> conds;
    std::set<FluentId> used;
    int n = pick(rng, 0, max_conditions);
    for (int i = 0; i < n; ++i) {
        FluentValue fv = random_pair(rng, d);
        if (used.count(fv.fluent) || (exclude && fv.fluent == *exclude))
            continue;
        used.insert(fv.fluent);
        conds.push_back(fv);
    }
    std::sort(conds.begin(), conds.end());
    return conds;
}

Domain random_domain_once(std::mt19937_64 &rng, const RandomDomainParams &p) {
    Domain d;
    int n_fluents = pick(rng, p.min_fluents, p.max_fluents);
    for (int i = 0; i < n_fluents; ++i) {
        FluentDecl f;
        f.name = "f" + std::to_string(i);
        int n_values = pick(rng, p.min_values, p.max_values);
        for (int j = 0; j < n_values; ++j)
            f.range.push_back(d.intern_value("v" + std::to_string(j)));
        d.fluents.push_back(std::move(f));
    }

    for (int i = 0; i < n_fluents; ++i)
        if (chance(rng, p.init_prob)) {
            FluentId f{i};
            const auto &range = d.range(f);
            d.vps.push_back({FluentValue{f, range[pick(rng, 0, (int)range.size() - 1)]}});
        }

    int n_actions = pick(rng, p.min_actions, p.max_actions);
    bool have_sensing = false;
    for (int i = 0; i < n_actions; ++i) {
        d.actions.push_back("a" + std::to_string(i));
        ActionId a{i};
        if (!have_sensing && chance(rng, p.sensing_prob)) {
            have_sensing = true;
            d.kps.push_back({a, FluentId{pick(rng, 0, n_fluents - 1)}});
        }
        int n_eps = pick(rng, d.kps.size() && d.kps.back().action == a ? 0 : 1,
                         p.max_eps_per_action);
        std::set<FluentValue> used_effects;
        int ep_count = 0;
        for (int j = 0; j < n_eps; ++j) {
            FluentValue effect = random_pair(rng, d);
            if (!used_effects.insert(effect).second)
                continue;
            EffectProposition ep;
            ep.action = a;
            ep.effect = effect;
            ep.conditions = random_conditions(rng, d, p.max_conditions);
            ep.id = d.actions[i] + "_ep" + std::to_string(++ep_count);
            d.eps.push_back(std::move(ep));
        }
        if (chance(rng, p.exec_prob)) {
            ExecutabilityCondition exc;
            exc.action = a;
            exc.required = random_conditions(rng, d, 1);
            if (!exc.required.empty())
                d.excs.push_back(std::move(exc));
        }
    }

    int n_scls = pick(rng, 0, p.max_scls);
    for (int i = 0; i < n_scls; ++i) {
        FluentValue effect = random_pair(rng, d);
        std::vector<FluentValue> conds =
            random_conditions(rng, d, p.max_conditions, effect.fluent);
        if (conds.empty())
            continue;
        bool dup = false;
        for (const auto &other : d.scls)
            dup |= other.conditions == conds && other.effect == effect;
        if (dup)
            continue;
        StaticCausalLaw scl;
        scl.effect = effect;
        scl.conditions = std::move(conds);
        scl.id = "scl" + std::to_string(d.scls.size() + 1);
        d.scls.push_back(std::move(scl));
    }

    if (chance(rng, p.goal_prob))
        d.goals.weak.push_back(random_pair(rng, d));
    if (chance(rng, p.goal_prob / 2))
        d.goals.strong.push_back(random_pair(rng, d));
    std::sort(d.goals.weak.begin(), d.goals.weak.end());
    d.goals.weak.erase(std::unique(d.goals.weak.begin(), d.goals.weak.end()),
                       d.goals.weak.end());
    std::sort(d.goals.strong.begin(), d.goals.strong.end());
    d.goals.strong.erase(std::unique(d.goals.strong.begin(), d.goals.strong.end()),
                         d.goals.strong.end());
    return d;
}

// A domain is usable when compilation never puts two same-effect
// propositions on one action; such actions could never occur.
bool compiled_effects_distinct(const Domain &d) {
    CompiledEffectSet compiled = compile_domain(d);
    for (size_t ai = 0; ai < d.actions.size(); ++ai) {
        std::set<FluentValue> effects;
        for (const EffectProposition *ep : compiled.eps_of(ActionId{(int32_t)ai}))
            if (!effects.insert(ep->effect).second)
                return false;
    }
    return true;
}

} // namespace

Domain random_domain(std::mt19937_64 &rng, const RandomDomainParams &params) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        Domain d = random_domain_once(rng, params);
        if (!validate_domain(d).ok())
            continue;
        if (!compiled_effects_distinct(d))
            continue;
        return d;
    }
    // Deterministic fallback: a minimal always-valid domain.
    Domain d;
    FluentDecl f;
    f.name = "f0";
    f.range.push_back(d.intern_value("v0"));
    f.range.push_back(d.intern_value("v1"));
    d.fluents.push_back(std::move(f));
    d.actions.push_back("a0");
    EffectProposition ep;
    ep.id = "a0_ep1";
    ep.action = ActionId{0};
    ep.effect = FluentValue{FluentId{0}, ValueId{0}};
    d.eps.push_back(std::move(ep));
    return d;
}

std::vector<std::vector<ActionId>> random_plan(std::mt19937_64 &rng, const Domain &d,
                                               int horizon) {
    std::vector<std::vector<ActionId>> plan;
    if (d.actions.empty())
        return plan;
    for (int i = 0; i < horizon; ++i)
        plan.push_back({ActionId{pick(rng, 0, static_cast<int>(d.actions.size()) - 1)}});
    return plan;
}

} // namespace hpxf
