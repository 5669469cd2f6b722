#ifndef HPXF_ASPEMIT_H
#define HPXF_ASPEMIT_H

#include <string>

#include "hpxf/domain.h"

namespace hpxf {

struct EmitConfig {
    int max_steps = 3;
    int max_branches = 2;
    bool concurrent = false;
};

struct ProgramText {
    std::string world_part;
    std::string foundational_part;
    int max_steps = 0;
    int max_branches = 0;

    std::string full_text() const { return world_part + "\n" + foundational_part; }
};

// Domain-specific facts: one fact per range pair, value proposition, effect
// proposition element, law element, knowledge proposition and goal pair, and
// one integrity constraint per executability pair. Identifiers are emitted
// verbatim when they are valid constant terms and quoted otherwise.
std::string emit_world(const Domain &d);

// Domain-independent rules with the two constants substituted. The
// concurrent flag picks the plan-generation choice rule variant; exactly one
// of the two is emitted. Deterministic text; see EMITTER-NOTES.md for the
// normalization decisions.
std::string emit_foundational(int max_steps, int max_branches, bool concurrent);

ProgramText emit_lp(const Domain &d, const EmitConfig &cfg);

} // namespace hpxf

#endif
