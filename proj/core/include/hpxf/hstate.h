#ifndef HPXF_HSTATE_H
#define HPXF_HSTATE_H

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpxf/domain.h"

namespace hpxf {

using Step = int;

// One signed knowledge entry: fluent has / does not have the value at step.
struct KnowledgeTriple {
    FluentId fluent;
    ValueId value;
    bool negative = false;
    Step step = 0;
    auto operator<=>(const KnowledgeTriple &) const = default;
};

std::string render_triple(const Domain &d, const KnowledgeTriple &t);

// Knowledge history: a set of signed triples stored per (fluent, step) cell.
// The cell structure makes the validity clauses structural: a cell holds at
// most one positive value and never a value both positively and negatively.
class KnowledgeHistory {
public:
    struct Cell {
        std::optional<ValueId> positive;
        std::vector<ValueId> negatives; // sorted
        bool operator==(const Cell &) const = default;
    };

    enum class InsertResult { Added, Present, Conflict };

    // Attempts to add a triple. On Conflict nothing is modified and
    // `conflicting` (if given) receives the existing contradictory triple.
    InsertResult insert(const KnowledgeTriple &t, KnowledgeTriple *conflicting = nullptr);

    bool knows(FluentId f, ValueId v, Step t) const;
    bool knows_not(FluentId f, ValueId v, Step t) const;
    std::optional<ValueId> known_value(FluentId f, Step t) const;

    size_t size() const { return triple_count; }
    bool empty() const { return triple_count == 0; }

    const std::map<std::pair<FluentId, Step>, Cell> &all_cells() const { return cells; }
    std::vector<KnowledgeTriple> triples() const;

    bool operator==(const KnowledgeHistory &) const = default;

private:
    std::map<std::pair<FluentId, Step>, Cell> cells;
    size_t triple_count = 0;
};

struct ActionOccurrence {
    ActionId action;
    Step step = 0;
    auto operator<=>(const ActionOccurrence &) const = default;
};

// Historical knowledge state: the pair of action history and knowledge
// history. Values are immutable in use; the kernel returns new states.
struct HState {
    std::vector<ActionOccurrence> ah; // sorted
    KnowledgeHistory kh;

    Step now() const;
    void add_occurrence(ActionId a, Step t);
    bool operator==(const HState &) const = default;

    // Stable byte encoding, usable as an exact memoization key.
    std::string key() const;
};

// Initial h-state: the value propositions as step-0 knowledge, no actions.
HState initial_hstate(const Domain &d);

// Deterministic dump: `occ a @t` lines sorted by step, then one line per
// triple `knows f=v @t` / `knows f!=v @t` sorted lexicographically by the
// rendered pair and then by step.
std::string dump_hstate(const Domain &d, const HState &h);

} // namespace hpxf

#endif
