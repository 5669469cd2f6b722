#include "hpxf/domain.h"

#include <algorithm>

namespace hpxf {

bool FluentDecl::in_range(ValueId v) const {
    return std::find(range.begin(), range.end(), v) != range.end();
}

std::optional<FluentId> Domain::find_fluent(const std::string &name) const {
    for (size_t i = 0; i < fluents.size(); ++i)
        if (fluents[i].name == name)
            return FluentId{static_cast<int32_t>(i)};
    return std::nullopt;
}

std::optional<ValueId> Domain::find_value(const std::string &name) const {
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i] == name)
            return ValueId{static_cast<int32_t>(i)};
    return std::nullopt;
}

std::optional<ActionId> Domain::find_action(const std::string &name) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i] == name)
            return ActionId{static_cast<int32_t>(i)};
    return std::nullopt;
}

ValueId Domain::intern_value(const std::string &name) {
    if (auto v = find_value(name))
        return *v;
    values.push_back(name);
    return ValueId{static_cast<int32_t>(values.size() - 1)};
}

std::optional<FluentId> Domain::sensed_fluent(ActionId a) const {
    for (const auto &kp : kps)
        if (kp.action == a)
            return kp.fluent;
    return std::nullopt;
}

std::vector<FluentValue> Domain::executability(ActionId a) const {
    std::vector<FluentValue> result;
    for (const auto &exc : excs)
        if (exc.action == a)
            result.insert(result.end(), exc.required.begin(), exc.required.end());
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

size_t Domain::max_range_size() const {
    size_t m = 0;
    for (const auto &f : fluents)
        m = std::max(m, f.range.size());
    return m;
}

bool Domain::operator==(const Domain &other) const {
    auto decl_eq = [](const FluentDecl &a, const FluentDecl &b) {
        return a.name == b.name && a.range == b.range;
    };
    if (fluents.size() != other.fluents.size())
        return false;
    for (size_t i = 0; i < fluents.size(); ++i)
        if (!decl_eq(fluents[i], other.fluents[i]))
            return false;
    auto ep_eq = [](const EffectProposition &a, const EffectProposition &b) {
        return a.id == b.id && a.action == b.action &&
               a.conditions == b.conditions && a.effect == b.effect;
    };
    if (eps.size() != other.eps.size())
        return false;
    for (size_t i = 0; i < eps.size(); ++i)
        if (!ep_eq(eps[i], other.eps[i]))
            return false;
    auto scl_eq = [](const StaticCausalLaw &a, const StaticCausalLaw &b) {
        return a.id == b.id && a.conditions == b.conditions && a.effect == b.effect;
    };
    if (scls.size() != other.scls.size())
        return false;
    for (size_t i = 0; i < scls.size(); ++i)
        if (!scl_eq(scls[i], other.scls[i]))
            return false;
    auto exc_eq = [](const ExecutabilityCondition &a, const ExecutabilityCondition &b) {
        return a.action == b.action && a.required == b.required;
    };
    if (excs.size() != other.excs.size())
        return false;
    for (size_t i = 0; i < excs.size(); ++i)
        if (!exc_eq(excs[i], other.excs[i]))
            return false;
    return values == other.values && actions == other.actions &&
           vps == other.vps && kps == other.kps &&
           goals.strong == other.goals.strong && goals.weak == other.goals.weak;
}

} // namespace hpxf
