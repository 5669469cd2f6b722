#include "hpxf/compile.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "hpxf/errors.h"

namespace hpxf {

namespace {

using ContentKey = std::tuple<ActionId, std::vector<FluentValue>, FluentValue>;

ContentKey key_of(const EffectProposition &ep) {
    return {ep.action, ep.conditions, ep.effect};
}

} // namespace

std::vector<EffectProposition> add_ep(const std::vector<EffectProposition> &eps,
                                      const std::vector<StaticCausalLaw> &scls) {
    std::set<ContentKey> present;
    for (const auto &ep : eps)
        present.insert(key_of(ep));

    std::vector<EffectProposition> fresh;
    for (const auto &ep : eps) {
        for (const auto &scl : scls) {
            const FluentValue trigger = ep.effect;
            if (std::find(scl.conditions.begin(), scl.conditions.end(), trigger) ==
                scl.conditions.end())
                continue;
            EffectProposition gen;
            gen.action = ep.action;
            gen.effect = scl.effect;
            gen.conditions = scl.conditions;
            gen.conditions.insert(gen.conditions.end(), ep.conditions.begin(),
                                  ep.conditions.end());
            std::sort(gen.conditions.begin(), gen.conditions.end());
            gen.conditions.erase(std::unique(gen.conditions.begin(), gen.conditions.end()),
                                 gen.conditions.end());
            // Singleton removal of the trigger pair only.
            gen.conditions.erase(
                std::remove(gen.conditions.begin(), gen.conditions.end(), trigger),
                gen.conditions.end());
            if (!present.insert(key_of(gen)).second)
                continue;
            gen.id = "(" + ep.id + "," + scl.id + ")";
            fresh.push_back(std::move(gen));
        }
    }
    return fresh;
}

CompiledEffectSet gen_ep(const std::vector<EffectProposition> &eps,
                         const std::vector<StaticCausalLaw> &scls, size_t cap) {
    CompiledEffectSet result;
    result.eps = eps;
    result.original_count = eps.size();

    std::map<std::string, const StaticCausalLaw *> scl_by_id;
    for (const auto &scl : scls)
        scl_by_id[scl.id] = &scl;

    while (true) {
        std::vector<EffectProposition> fresh = add_ep(result.eps, scls);
        if (fresh.empty())
            break;
        if (result.eps.size() + fresh.size() - result.original_count > cap)
            throw IterationBudgetExceeded(
                "static causal law compilation exceeded the generated-EP cap of " +
                std::to_string(cap));
        for (auto &gen : fresh) {
            // The id has the shape "(source,scl)"; recover both parts for
            // the provenance record.
            const std::string &id = gen.id;
            size_t comma = id.rfind(',');
            std::string source = id.substr(1, comma - 1);
            std::string scl_id = id.substr(comma + 1, id.size() - comma - 2);
            FluentValue trigger{};
            for (const auto &ep : result.eps)
                if (ep.id == source)
                    trigger = ep.effect;
            result.provenance[id] = Provenance{source, scl_id, trigger};
            result.eps.push_back(std::move(gen));
        }
    }
    return result;
}

} // namespace hpxf
