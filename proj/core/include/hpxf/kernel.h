#ifndef HPXF_KERNEL_H
#define HPXF_KERNEL_H

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"
#include "hpxf/errors.h"
#include "hpxf/hstate.h"

namespace hpxf {

struct EffectHistoryEntry {
    const EffectProposition *ep;
    Step step;
};

// The effect history derived from an action history: every proposition of
// every occurred action, stamped with the occurrence step. Throws
// UnknownAction for history entries outside the domain's action table.
std::vector<EffectHistoryEntry> effect_history(const HState &h,
                                               const CompiledEffectSet &compiled,
                                               const Domain &d);

// Per-evaluation index over the effect history. The action history is fixed
// during an evaluation, so this is built once per eval call.
class EvalContext {
public:
    EvalContext(const Domain &d, const CompiledEffectSet &compiled, const HState &h);

    const Domain &domain;
    const CompiledEffectSet &compiled;
    Step now;

    const std::vector<const EffectProposition *> &applied_at(Step t) const;
    // Propositions applied at t whose effect concerns the fluent.
    const std::vector<const EffectProposition *> &effects_on(Step t, FluentId f) const;

private:
    std::vector<std::vector<const EffectProposition *>> applied;
    std::vector<std::map<FluentId, std::vector<const EffectProposition *>>> by_fluent;
    std::vector<const EffectProposition *> empty_list;
};

// Whether the signed pair persists across step t: positively, no applied
// proposition can move the fluent to a different value; negatively, no
// applied proposition can set the fluent to this value. A proposition is
// discounted when one of its conditions is known not to hold at t.
bool inertial(FluentId f, ValueId v, bool negative, Step t, const HState &h,
              const EvalContext &ctx);

// The eight inference mechanisms. Each is pure: it returns a new state with
// the knowledge history extended and the action history untouched. All throw
// InconsistencyDetected when an addition contradicts existing knowledge.
HState im_fwd(const HState &h, const EvalContext &ctx);    // forward inertia
HState im_back(const HState &h, const EvalContext &ctx);   // backward inertia
HState im_cause(const HState &h, const EvalContext &ctx);  // causation
HState im_pd_pos(const HState &h, const EvalContext &ctx); // positive postdiction
HState im_pd_neg(const HState &h, const EvalContext &ctx); // negative postdiction
HState im_ex_pos(const HState &h, const EvalContext &ctx); // positive exclusion
HState im_ex_neg(const HState &h, const EvalContext &ctx); // negative exclusion
HState im_scl(const HState &h, const EvalContext &ctx);    // static causal consequence

enum class Im { Fwd, Back, Cause, PdPos, PdNeg, ExPos, ExNeg, Scl };

// Application order of the mechanisms within one evaluation pass. The
// default is forward inertia, backward inertia, causation, positive and
// negative postdiction, positive and negative exclusion, static causal
// consequence. The eval fixpoint is order independent.
struct ImOrder {
    std::array<Im, 8> order;
    static ImOrder standard();
};

// One pass applying all eight mechanisms in order.
HState eval_once(const HState &h, const Domain &d, const CompiledEffectSet &compiled,
                 const ImOrder &order = ImOrder::standard());

// Least fixpoint of eval_once containing h.
HState eval(const HState &h, const Domain &d, const CompiledEffectSet &compiled,
            const ImOrder &order = ImOrder::standard());

// One sensing outcome: the triples added to the knowledge history (empty
// when no sensing action occurs).
using SensingOutcome = std::vector<KnowledgeTriple>;

// All possible sensing outcomes of the given occurring actions. At most one
// sensed fluent per transition (MultipleSensingActions otherwise); when some
// action senses f, one outcome per range value of f not already excluded at
// the current step (AllOutcomesExcluded when none remains); otherwise the
// single empty outcome.
std::vector<SensingOutcome> sense(const std::vector<ActionId> &actions, const HState &h,
                                  const Domain &d);

// Whether all executability pairs of the action are positively known now.
bool executable(ActionId a, const HState &h, const Domain &d);

struct TransitionSuccessor {
    std::optional<KnowledgeTriple> sensed; // sensing outcome, if any
    std::optional<HState> state;           // absent when evaluation failed
    std::string error;                     // nonempty when evaluation failed
};

struct TransitionResult {
    std::vector<ActionId> applied; // the executable subset, sorted
    std::vector<TransitionSuccessor> successors;
};

// The transition function: filters the action set to the executable subset,
// stamps it into the action history, branches over sensing outcomes and
// evaluates each successor. Inconsistent successors are reported, never
// silently dropped. Throws ConcurrentSimilarEPs when two applied
// propositions share an effect pair.
TransitionResult transition(const std::vector<ActionId> &actions, const HState &h,
                            const Domain &d, const CompiledEffectSet &compiled);

// Convenience wrapper returning only the successor states; rethrows the
// first successor error.
std::vector<HState> transition_states(const std::vector<ActionId> &actions, const HState &h,
                                      const Domain &d, const CompiledEffectSet &compiled);

} // namespace hpxf

#endif
