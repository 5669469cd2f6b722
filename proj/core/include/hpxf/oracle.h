#ifndef HPXF_ORACLE_H
#define HPXF_ORACLE_H

#include <map>
#include <string>
#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"
#include "hpxf/planner.h"

namespace hpxf {

// A total assignment of one value per fluent.
struct World {
    std::vector<ValueId> values; // indexed by fluent

    ValueId at(FluentId f) const { return values[f.index]; }
    auto operator<=>(const World &) const = default;
};

// One world per step along a projected path.
struct WorldTrajectory {
    std::vector<World> steps;
    auto operator<=>(const WorldTrajectory &) const = default;
};

// Brute-force reference semantics at desk scale. Refuses domains with more
// than `max_fluents` fluents or `max_values` values per fluent.
struct OracleScaleGuard {
    size_t max_fluents = 6;
    size_t max_values = 4;
};

// All total assignments extending the value propositions and closed under
// the static causal laws read as implications. Empty result means the
// initial description is inconsistent.
std::vector<World> initial_worlds(const Domain &d,
                                  const OracleScaleGuard &guard = OracleScaleGuard{});

// Trajectory sets per tree node. Worlds evolve deterministically: every
// proposition of an occurring action fires when its conditions hold in the
// current world; unaffected fluents persist. Sensing partitions trajectories
// by the sensed fluent's value. Executability is epistemic, so the oracle
// replays the kernel's executable subset recorded on the tree edges.
using OracleProjection = std::map<std::pair<int, int>, std::vector<WorldTrajectory>>;

OracleProjection oracle_project(const TransitionTree &tree, const Domain &d,
                                const CompiledEffectSet &compiled,
                                const OracleScaleGuard &guard = OracleScaleGuard{});

struct SoundnessReport {
    // Triples claimed by some node's knowledge history that fail in at
    // least one surviving trajectory of that node. Expected empty.
    std::vector<std::string> violations;
    // Facts entailed by all surviving trajectories but absent from the
    // knowledge history. Informational.
    size_t incompleteness_count = 0;

    bool sound() const { return violations.empty(); }
    std::string to_string() const;
};

// Checks every consistent tree node against the oracle's trajectories.
SoundnessReport check_soundness(const TransitionTree &tree, const OracleProjection &oracle,
                                const Domain &d);

} // namespace hpxf

#endif
