#ifndef HPXF_COMPILE_H
#define HPXF_COMPILE_H

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hpxf/domain.h"

namespace hpxf {

// Records how a generated effect proposition came to be: which source EP
// triggered which law, through which fluent-value pair.
struct Provenance {
    std::string source_ep;
    std::string scl;
    FluentValue trigger;
};

// Closure of the effect propositions under static causal law triggering.
// Original EPs come first, generated ones follow in derivation order.
struct CompiledEffectSet {
    std::vector<EffectProposition> eps;
    std::map<std::string, Provenance> provenance;
    size_t original_count = 0;

    bool is_generated(const EffectProposition &ep) const {
        return provenance.count(ep.id) > 0;
    }

    std::vector<const EffectProposition *> eps_of(ActionId a) const {
        std::vector<const EffectProposition *> out;
        for (const auto &ep : eps)
            if (ep.action == a)
                out.push_back(&ep);
        return out;
    }
};

// One triggering pass. Returns exactly the propositions
//   <a, (c(scl) u c(ep)) \ {trigger}, e(scl)>
// for every ep and scl where e(ep) is a condition of the law, minus any
// proposition already present up to (action, conditions, effect) equality.
// Empty result means the input is a fixpoint.
std::vector<EffectProposition> add_ep(const std::vector<EffectProposition> &eps,
                                      const std::vector<StaticCausalLaw> &scls);

// Least fixpoint of add_ep. Generated ids compose the source EP and law ids
// as "(ep,scl)". Throws IterationBudgetExceeded when more than `cap`
// propositions would be generated.
CompiledEffectSet gen_ep(const std::vector<EffectProposition> &eps,
                         const std::vector<StaticCausalLaw> &scls,
                         size_t cap = 100000);

inline CompiledEffectSet compile_domain(const Domain &d, size_t cap = 100000) {
    return gen_ep(d.eps, d.scls, cap);
}

} // namespace hpxf

#endif
