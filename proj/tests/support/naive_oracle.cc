#include "naive_oracle.h"

#include <map>
#include <vector>

namespace hpxf::testing {

namespace {

struct Scratch {
    const Domain &d;
    const CompiledEffectSet &compiled;
    std::set<FlatTriple> &set;
    int now;
    std::map<int, std::vector<const EffectProposition *>> applied;

    bool has(int f, int v, bool neg, int t) const { return set.count({f, v, neg, t}) > 0; }

    bool knows(FluentValue fv, int t) const {
        return has(fv.fluent.index, fv.value.index, false, t);
    }

    bool knows_not(FluentValue fv, int t) const {
        return has(fv.fluent.index, fv.value.index, true, t);
    }

    bool some_condition_known_false(const EffectProposition &ep, int t) const {
        for (const auto &c : ep.conditions)
            if (knows_not(c, t))
                return true;
        return false;
    }

    // No applied proposition at t may move f away from v.
    bool inertial_pos(int f, int v, int t) const {
        auto it = applied.find(t);
        if (it == applied.end())
            return true;
        for (const EffectProposition *ep : it->second)
            if (ep->effect.fluent.index == f && ep->effect.value.index != v &&
                !some_condition_known_false(*ep, t))
                return false;
        return true;
    }

    // No applied proposition at t may set f to v.
    bool inertial_neg(int f, int v, int t) const {
        auto it = applied.find(t);
        if (it == applied.end())
            return true;
        for (const EffectProposition *ep : it->second)
            if (ep->effect.fluent.index == f && ep->effect.value.index == v &&
                !some_condition_known_false(*ep, t))
                return false;
        return true;
    }
};

} // namespace

NaiveResult naive_closure(const Domain &d, const CompiledEffectSet &compiled,
                          const HState &h) {
    NaiveResult result;
    for (const auto &t : h.kh.triples())
        result.triples.insert({t.fluent.index, t.value.index, t.negative, t.step});

    Scratch s{d, compiled, result.triples, h.now(), {}};
    for (const auto &occ : h.ah)
        for (const auto &ep : compiled.eps)
            if (ep.action == occ.action)
                s.applied[occ.step].push_back(&ep);

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<FlatTriple> found;

        for (const auto &[f, v, neg, t] : result.triples) {
            // forward inertia
            if (t + 1 <= s.now) {
                if (!neg && s.inertial_pos(f, v, t))
                    found.push_back({f, v, false, t + 1});
                if (neg && s.inertial_neg(f, v, t))
                    found.push_back({f, v, true, t + 1});
            }
            // backward inertia
            if (t - 1 >= 0) {
                if (!neg && s.inertial_neg(f, v, t - 1))
                    found.push_back({f, v, false, t - 1});
                if (neg && s.inertial_pos(f, v, t - 1))
                    found.push_back({f, v, true, t - 1});
            }
        }

        for (const auto &[t, eps] : s.applied) {
            for (const EffectProposition *ep : eps) {
                const int ef = ep->effect.fluent.index;
                const int ev = ep->effect.value.index;
                // causation
                bool all_conditions = true;
                for (const auto &c : ep->conditions)
                    all_conditions &= s.knows(c, t);
                if (all_conditions)
                    found.push_back({ef, ev, false, t + 1});
                // positive postdiction
                if (s.has(ef, ev, false, t + 1) && s.has(ef, ev, true, t)) {
                    bool unique = true;
                    for (const EffectProposition *other : eps)
                        if (other != ep && other->effect == ep->effect)
                            unique = false;
                    if (unique)
                        for (const auto &c : ep->conditions)
                            found.push_back({c.fluent.index, c.value.index, false, t});
                }
                // negative postdiction
                if (s.has(ef, ev, true, t + 1)) {
                    for (size_t u = 0; u < ep->conditions.size(); ++u) {
                        bool others = true;
                        for (size_t i = 0; i < ep->conditions.size(); ++i)
                            if (i != u)
                                others &= s.knows(ep->conditions[i], t);
                        if (others)
                            found.push_back({ep->conditions[u].fluent.index,
                                             ep->conditions[u].value.index, true, t});
                    }
                }
            }
        }

        for (int f = 0; f < static_cast<int>(d.fluents.size()); ++f) {
            const auto &range = d.fluents[f].range;
            for (int t = 0; t <= s.now; ++t) {
                // positive exclusion
                for (ValueId v : range) {
                    bool others_out = true;
                    for (ValueId other : range)
                        if (other != v)
                            others_out &= s.has(f, other.index, true, t);
                    if (others_out)
                        found.push_back({f, v.index, false, t});
                }
                // negative exclusion
                for (ValueId v : range)
                    if (s.has(f, v.index, false, t))
                        for (ValueId other : range)
                            if (other != v)
                                found.push_back({f, other.index, true, t});
            }
        }

        // static causal consequence
        for (const auto &scl : d.scls) {
            for (int t = 0; t <= s.now; ++t) {
                bool all_conditions = true;
                for (const auto &c : scl.conditions)
                    all_conditions &= s.knows(c, t);
                if (all_conditions)
                    found.push_back(
                        {scl.effect.fluent.index, scl.effect.value.index, false, t});
            }
        }

        for (const auto &triple : found)
            changed |= result.triples.insert(triple).second;
    }

    // Validity of the closure.
    for (const auto &[f, v, neg, t] : result.triples) {
        if (!neg && result.triples.count({f, v, true, t}))
            result.inconsistent = true;
        if (!neg)
            for (const auto &[f2, v2, neg2, t2] : result.triples)
                if (f2 == f && t2 == t && !neg2 && v2 != v)
                    result.inconsistent = true;
    }
    return result;
}

} // namespace hpxf::testing
