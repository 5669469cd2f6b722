#ifndef HPXF_VALIDATE_H
#define HPXF_VALIDATE_H

#include <string>
#include <vector>

#include "hpxf/domain.h"

namespace hpxf {

struct Finding {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    size_t error_count() const;
    size_t warning_count() const;
    bool ok() const { return error_count() == 0; }
    std::string to_string() const;
};

// Checks every type invariant of the domain. Findings are data; nothing
// throws. A report with zero errors means all invariants hold.
ValidationReport validate_domain(const Domain &d);

// Warns about unsatisfiable condition sets in a compiled effect set (a
// fluent required to hold two values at once). Used for compilation output;
// such propositions can never fire but are kept.
ValidationReport validate_effect_conditions(const Domain &d,
                                            const std::vector<EffectProposition> &eps);

} // namespace hpxf

#endif
