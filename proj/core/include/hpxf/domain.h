#ifndef HPXF_DOMAIN_H
#define HPXF_DOMAIN_H

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hpxf {

// Interned identifiers. Ids index into the owning Domain's symbol tables.
struct FluentId {
    int32_t index = -1;
    auto operator<=>(const FluentId &) const = default;
};

struct ValueId {
    int32_t index = -1;
    auto operator<=>(const ValueId &) const = default;
};

struct ActionId {
    int32_t index = -1;
    auto operator<=>(const ActionId &) const = default;
};

// A fluent-value pair, the atomic proposition of the language.
struct FluentValue {
    FluentId fluent;
    ValueId value;
    auto operator<=>(const FluentValue &) const = default;
};

// Range declaration of one fluent. Value order is declaration order and is
// significant: sensing outcomes and branch labels follow it.
struct FluentDecl {
    std::string name;
    std::vector<ValueId> range;
    bool in_range(ValueId v) const;
};

// Initial knowledge: fluent has this value at step 0.
struct ValueProposition {
    FluentValue pair;
    auto operator<=>(const ValueProposition &) const = default;
};

// Conditional action effect. Conditions are kept sorted and deduplicated.
struct EffectProposition {
    std::string id;
    ActionId action;
    std::vector<FluentValue> conditions;
    FluentValue effect;

    // Identity for set semantics ignores the id.
    bool same_content(const EffectProposition &other) const {
        return action == other.action && conditions == other.conditions &&
               effect == other.effect;
    }
};

struct StaticCausalLaw {
    std::string id;
    std::vector<FluentValue> conditions; // sorted, nonempty
    FluentValue effect;
};

// Sensing declaration: the action determines the fluent's value.
struct KnowledgeProposition {
    ActionId action;
    FluentId fluent;
    auto operator<=>(const KnowledgeProposition &) const = default;
};

struct ExecutabilityCondition {
    ActionId action;
    std::vector<FluentValue> required; // sorted
};

struct GoalSet {
    std::vector<FluentValue> strong; // sorted
    std::vector<FluentValue> weak;   // sorted
};

// A grounded reasoning domain. Immutable after construction; shareable
// across threads.
class Domain {
public:
    std::vector<FluentDecl> fluents;
    std::vector<std::string> values;  // value symbol table
    std::vector<std::string> actions; // action symbol table

    std::vector<ValueProposition> vps;
    std::vector<EffectProposition> eps;
    std::vector<StaticCausalLaw> scls;
    std::vector<KnowledgeProposition> kps;
    std::vector<ExecutabilityCondition> excs;
    GoalSet goals;

    const std::string &fluent_name(FluentId f) const { return fluents[f.index].name; }
    const std::string &value_name(ValueId v) const { return values[v.index]; }
    const std::string &action_name(ActionId a) const { return actions[a.index]; }

    std::optional<FluentId> find_fluent(const std::string &name) const;
    std::optional<ValueId> find_value(const std::string &name) const;
    std::optional<ActionId> find_action(const std::string &name) const;

    ValueId intern_value(const std::string &name);

    const std::vector<ValueId> &range(FluentId f) const { return fluents[f.index].range; }
    bool in_range(FluentValue fv) const { return fluents[fv.fluent.index].in_range(fv.value); }

    // Sensing and executability lookups.
    std::optional<FluentId> sensed_fluent(ActionId a) const;
    std::vector<FluentValue> executability(ActionId a) const;

    // Largest range size, used for complexity bounds.
    size_t max_range_size() const;

    std::string render(FluentValue fv) const {
        return fluent_name(fv.fluent) + "=" + value_name(fv.value);
    }

    bool operator==(const Domain &other) const;
};

} // namespace hpxf

#endif
