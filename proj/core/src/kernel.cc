#include "hpxf/kernel.h"

#include <algorithm>
#include <set>

namespace hpxf {

std::vector<EffectHistoryEntry> effect_history(const HState &h,
                                               const CompiledEffectSet &compiled,
                                               const Domain &d) {
    std::vector<EffectHistoryEntry> out;
    for (const auto &occ : h.ah) {
        if (occ.action.index < 0 || occ.action.index >= static_cast<int32_t>(d.actions.size()))
            throw UnknownAction("action history refers to unknown action id " +
                                std::to_string(occ.action.index));
        for (const auto &ep : compiled.eps)
            if (ep.action == occ.action)
                out.push_back({&ep, occ.step});
    }
    return out;
}

EvalContext::EvalContext(const Domain &d, const CompiledEffectSet &compiled, const HState &h)
    : domain(d), compiled(compiled), now(h.now()) {
    applied.resize(now);
    by_fluent.resize(now);
    for (const auto &entry : effect_history(h, compiled, d)) {
        applied[entry.step].push_back(entry.ep);
        by_fluent[entry.step][entry.ep->effect.fluent].push_back(entry.ep);
    }
}

const std::vector<const EffectProposition *> &EvalContext::applied_at(Step t) const {
    if (t < 0 || t >= static_cast<Step>(applied.size()))
        return empty_list;
    return applied[t];
}

const std::vector<const EffectProposition *> &EvalContext::effects_on(Step t,
                                                                      FluentId f) const {
    if (t < 0 || t >= static_cast<Step>(by_fluent.size()))
        return empty_list;
    auto it = by_fluent[t].find(f);
    if (it == by_fluent[t].end())
        return empty_list;
    return it->second;
}

namespace {

bool condition_known_false(const EffectProposition &ep, Step t, const KnowledgeHistory &kh) {
    for (const auto &cond : ep.conditions)
        if (kh.knows_not(cond.fluent, cond.value, t))
            return true;
    return false;
}

// Batch application of one mechanism: additions are computed against the
// input history, then inserted with validity checking.
class Additions {
public:
    Additions(const char *mechanism, const Domain &d) : mechanism(mechanism), d(d) {}

    void add(FluentId f, ValueId v, bool negative, Step t) {
        triples.push_back({f, v, negative, t});
    }

    size_t apply(HState &h) const {
        size_t added = 0;
        for (const auto &t : triples) {
            KnowledgeTriple conflict;
            switch (h.kh.insert(t, &conflict)) {
            case KnowledgeHistory::InsertResult::Added:
                ++added;
                break;
            case KnowledgeHistory::InsertResult::Present:
                break;
            case KnowledgeHistory::InsertResult::Conflict:
                throw InconsistencyDetected(mechanism, render_triple(d, conflict),
                                            render_triple(d, t));
            }
        }
        return added;
    }

private:
    const char *mechanism;
    const Domain &d;
    std::vector<KnowledgeTriple> triples;
};

// In-place variants used by eval; the public functions wrap them.

size_t fwd_inplace(HState &h, const EvalContext &ctx) {
    Additions out("forward inertia", ctx.domain);
    for (const auto &[key, cell] : h.kh.all_cells()) {
        const auto [f, t_prev] = key;
        Step t = t_prev + 1;
        if (t > ctx.now)
            continue;
        if (cell.positive && inertial(f, *cell.positive, false, t_prev, h, ctx))
            out.add(f, *cell.positive, false, t);
        for (ValueId v : cell.negatives)
            if (inertial(f, v, true, t_prev, h, ctx))
                out.add(f, v, true, t);
    }
    return out.apply(h);
}

size_t back_inplace(HState &h, const EvalContext &ctx) {
    Additions out("backward inertia", ctx.domain);
    for (const auto &[key, cell] : h.kh.all_cells()) {
        const auto [f, t_next] = key;
        Step t = t_next - 1;
        if (t < 0)
            continue;
        // A pair known at t+1 that could not have been set at t must have
        // held at t already; dually for negative knowledge.
        if (cell.positive && inertial(f, *cell.positive, true, t, h, ctx))
            out.add(f, *cell.positive, false, t);
        for (ValueId v : cell.negatives)
            if (inertial(f, v, false, t, h, ctx))
                out.add(f, v, true, t);
    }
    return out.apply(h);
}

size_t cause_inplace(HState &h, const EvalContext &ctx) {
    Additions out("causation", ctx.domain);
    for (Step t = 0; t < ctx.now; ++t) {
        for (const EffectProposition *ep : ctx.applied_at(t)) {
            bool all_known = true;
            for (const auto &cond : ep->conditions)
                all_known &= h.kh.knows(cond.fluent, cond.value, t);
            if (all_known)
                out.add(ep->effect.fluent, ep->effect.value, false, t + 1);
        }
    }
    return out.apply(h);
}

size_t pd_pos_inplace(HState &h, const EvalContext &ctx) {
    Additions out("positive postdiction", ctx.domain);
    for (Step t = 0; t < ctx.now; ++t) {
        for (const EffectProposition *ep : ctx.applied_at(t)) {
            const FluentValue e = ep->effect;
            if (!h.kh.knows(e.fluent, e.value, t + 1) || !h.kh.knows_not(e.fluent, e.value, t))
                continue;
            bool unique_setter = true;
            for (const EffectProposition *other : ctx.effects_on(t, e.fluent))
                if (other != ep && other->effect == e)
                    unique_setter = false;
            if (!unique_setter)
                continue;
            for (const auto &cond : ep->conditions)
                out.add(cond.fluent, cond.value, false, t);
        }
    }
    return out.apply(h);
}

size_t pd_neg_inplace(HState &h, const EvalContext &ctx) {
    Additions out("negative postdiction", ctx.domain);
    for (Step t = 0; t < ctx.now; ++t) {
        for (const EffectProposition *ep : ctx.applied_at(t)) {
            const FluentValue e = ep->effect;
            if (!h.kh.knows_not(e.fluent, e.value, t + 1))
                continue;
            for (size_t u = 0; u < ep->conditions.size(); ++u) {
                bool others_known = true;
                for (size_t i = 0; i < ep->conditions.size(); ++i) {
                    if (i == u)
                        continue;
                    others_known &= h.kh.knows(ep->conditions[i].fluent,
                                               ep->conditions[i].value, t);
                }
                if (others_known)
                    out.add(ep->conditions[u].fluent, ep->conditions[u].value, true, t);
            }
        }
    }
    return out.apply(h);
}

size_t ex_pos_inplace(HState &h, const EvalContext &ctx) {
    Additions out("positive exclusion", ctx.domain);
    for (size_t fi = 0; fi < ctx.domain.fluents.size(); ++fi) {
        FluentId f{static_cast<int32_t>(fi)};
        const auto &range = ctx.domain.range(f);
        for (Step t = 0; t <= ctx.now; ++t) {
            for (ValueId v : range) {
                bool others_excluded = true;
                for (ValueId other : range)
                    if (other != v)
                        others_excluded &= h.kh.knows_not(f, other, t);
                if (others_excluded && !h.kh.knows(f, v, t))
                    out.add(f, v, false, t);
            }
        }
    }
    return out.apply(h);
}

size_t ex_neg_inplace(HState &h, const EvalContext &ctx) {
    Additions out("negative exclusion", ctx.domain);
    for (const auto &[key, cell] : h.kh.all_cells()) {
        if (!cell.positive)
            continue;
        const auto [f, t] = key;
        for (ValueId v : ctx.domain.range(f))
            if (v != *cell.positive)
                out.add(f, v, true, t);
    }
    return out.apply(h);
}

size_t scl_inplace(HState &h, const EvalContext &ctx) {
    Additions out("static causal consequence", ctx.domain);
    for (Step t = 0; t <= ctx.now; ++t) {
        for (const auto &scl : ctx.domain.scls) {
            bool all_known = true;
            for (const auto &cond : scl.conditions)
                all_known &= h.kh.knows(cond.fluent, cond.value, t);
            if (all_known)
                out.add(scl.effect.fluent, scl.effect.value, false, t);
        }
    }
    return out.apply(h);
}

using InplaceFn = size_t (*)(HState &, const EvalContext &);

InplaceFn inplace_fn(Im im) {
    switch (im) {
    case Im::Fwd:
        return fwd_inplace;
    case Im::Back:
        return back_inplace;
    case Im::Cause:
        return cause_inplace;
    case Im::PdPos:
        return pd_pos_inplace;
    case Im::PdNeg:
        return pd_neg_inplace;
    case Im::ExPos:
        return ex_pos_inplace;
    case Im::ExNeg:
        return ex_neg_inplace;
    case Im::Scl:
        return scl_inplace;
    }
    return nullptr;
}

} // namespace

bool inertial(FluentId f, ValueId v, bool negative, Step t, const HState &h,
              const EvalContext &ctx) {
    for (const EffectProposition *ep : ctx.effects_on(t, f)) {
        bool threatens = negative ? ep->effect.value == v : ep->effect.value != v;
        if (threatens && !condition_known_false(*ep, t, h.kh))
            return false;
    }
    return true;
}

#define HPXF_DEFINE_IM(name, fn)                                                        \
    HState name(const HState &h, const EvalContext &ctx) {                              \
        HState result = h;                                                              \
        fn(result, ctx);                                                                \
        return result;                                                                  \
    }

HPXF_DEFINE_IM(im_fwd, fwd_inplace)
HPXF_DEFINE_IM(im_back, back_inplace)
HPXF_DEFINE_IM(im_cause, cause_inplace)
HPXF_DEFINE_IM(im_pd_pos, pd_pos_inplace)
HPXF_DEFINE_IM(im_pd_neg, pd_neg_inplace)
HPXF_DEFINE_IM(im_ex_pos, ex_pos_inplace)
HPXF_DEFINE_IM(im_ex_neg, ex_neg_inplace)
HPXF_DEFINE_IM(im_scl, scl_inplace)

#undef HPXF_DEFINE_IM

ImOrder ImOrder::standard() {
    return ImOrder{{Im::Fwd, Im::Back, Im::Cause, Im::PdPos, Im::PdNeg, Im::ExPos,
                    Im::ExNeg, Im::Scl}};
}

HState eval_once(const HState &h, const Domain &d, const CompiledEffectSet &compiled,
                 const ImOrder &order) {
    HState result = h;
    EvalContext ctx(d, compiled, result);
    for (Im im : order.order)
        inplace_fn(im)(result, ctx);
    return result;
}

HState eval(const HState &h, const Domain &d, const CompiledEffectSet &compiled,
            const ImOrder &order) {
    HState result = h;
    EvalContext ctx(d, compiled, result);
    size_t added;
    do {
        added = 0;
        for (Im im : order.order)
            added += inplace_fn(im)(result, ctx);
    } while (added > 0);
    return result;
}

std::vector<SensingOutcome> sense(const std::vector<ActionId> &actions, const HState &h,
                                  const Domain &d) {
    std::vector<KnowledgeProposition> active;
    for (const auto &kp : d.kps)
        if (std::find(actions.begin(), actions.end(), kp.action) != actions.end())
            active.push_back(kp);
    if (active.empty())
        return {SensingOutcome{}};
    if (active.size() > 1) {
        std::string names;
        for (const auto &kp : active)
            names += (names.empty() ? "" : ", ") + d.action_name(kp.action) + "/" +
                     d.fluent_name(kp.fluent);
        throw MultipleSensingActions("only one fluent can be sensed per transition: " + names);
    }

    const FluentId f = active.front().fluent;
    const Step t_s = h.now();
    std::vector<SensingOutcome> outcomes;
    for (ValueId v : d.range(f))
        if (!h.kh.knows_not(f, v, t_s))
            outcomes.push_back({KnowledgeTriple{f, v, false, t_s}});
    if (outcomes.empty())
        throw AllOutcomesExcluded("every value of sensed fluent '" + d.fluent_name(f) +
                                  "' is known not to hold at step " + std::to_string(t_s));
    return outcomes;
}

bool executable(ActionId a, const HState &h, const Domain &d) {
    const Step t = h.now();
    for (const auto &fv : d.executability(a))
        if (!h.kh.knows(fv.fluent, fv.value, t))
            return false;
    return true;
}

TransitionResult transition(const std::vector<ActionId> &actions, const HState &h,
                            const Domain &d, const CompiledEffectSet &compiled) {
    TransitionResult result;
    for (ActionId a : actions)
        if (executable(a, h, d))
            result.applied.push_back(a);
    std::sort(result.applied.begin(), result.applied.end());
    result.applied.erase(std::unique(result.applied.begin(), result.applied.end()),
                         result.applied.end());

    // No two applied propositions may share an effect pair; positive
    // postdiction is unsound otherwise.
    std::vector<const EffectProposition *> applied_eps;
    for (ActionId a : result.applied)
        for (const EffectProposition *ep : compiled.eps_of(a))
            applied_eps.push_back(ep);
    for (size_t i = 0; i < applied_eps.size(); ++i)
        for (size_t j = i + 1; j < applied_eps.size(); ++j)
            if (applied_eps[i]->effect == applied_eps[j]->effect)
                throw ConcurrentSimilarEPs("propositions " + applied_eps[i]->id + " and " +
                                           applied_eps[j]->id +
                                           " share the effect pair " +
                                           d.render(applied_eps[i]->effect));

    const Step t = h.now();
    HState stamped = h;
    for (ActionId a : result.applied)
        stamped.add_occurrence(a, t);

    for (const SensingOutcome &outcome : sense(result.applied, h, d)) {
        TransitionSuccessor succ;
        if (!outcome.empty())
            succ.sensed = outcome.front();
        HState next = stamped;
        try {
            for (const auto &triple : outcome) {
                KnowledgeTriple conflict;
                if (next.kh.insert(triple, &conflict) ==
                    KnowledgeHistory::InsertResult::Conflict)
                    throw InconsistencyDetected("sensing", render_triple(d, conflict),
                                                render_triple(d, triple));
            }
            succ.state = eval(next, d, compiled);
        } catch (const InconsistencyDetected &e) {
            succ.state.reset();
            succ.error = e.what();
        }
        result.successors.push_back(std::move(succ));
    }
    return result;
}

std::vector<HState> transition_states(const std::vector<ActionId> &actions, const HState &h,
                                      const Domain &d, const CompiledEffectSet &compiled) {
    TransitionResult r = transition(actions, h, d, compiled);
    std::vector<HState> out;
    for (auto &succ : r.successors) {
        if (!succ.state)
            throw InconsistencyDetected("transition", "successor", succ.error);
        out.push_back(std::move(*succ.state));
    }
    return out;
}

} // namespace hpxf
