#include "hpxf/validate.h"

#include <map>
#include <set>
#include <sstream>

namespace hpxf {

size_t ValidationReport::error_count() const {
    size_t n = 0;
    for (const auto &f : findings)
        n += f.severity == Finding::Severity::Error;
    return n;
}

size_t ValidationReport::warning_count() const {
    return findings.size() - error_count();
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto &f : findings)
        out << (f.severity == Finding::Severity::Error ? "error" : "warning") << " ["
            << f.where << "]: " << f.message << "\n";
    return out.str();
}

namespace {

class Checker {
public:
    Checker(const Domain &d, ValidationReport &report) : d(d), report(report) {}

    void error(const std::string &where, const std::string &msg) {
        report.findings.push_back({Finding::Severity::Error, where, msg});
    }

    void warn(const std::string &where, const std::string &msg) {
        report.findings.push_back({Finding::Severity::Warning, where, msg});
    }

    bool indices_ok(FluentValue fv) const {
        return fv.fluent.index >= 0 &&
               fv.fluent.index < static_cast<int32_t>(d.fluents.size()) &&
               fv.value.index >= 0 &&
               fv.value.index < static_cast<int32_t>(d.values.size());
    }

    // Returns false if the pair cannot be used at all.
    bool check_pair(const std::string &where, FluentValue fv) {
        if (!indices_ok(fv)) {
            error(where, "dangling fluent or value reference");
            return false;
        }
        if (!d.in_range(fv)) {
            error(where, "value '" + d.value_name(fv.value) + "' not in range of fluent '" +
                             d.fluent_name(fv.fluent) + "'");
            return false;
        }
        return true;
    }

    // One value per fluent within a condition set.
    void check_consistent(const std::string &where, const std::vector<FluentValue> &pairs,
                          bool as_error) {
        for (size_t i = 0; i + 1 < pairs.size(); ++i) {
            if (pairs[i].fluent == pairs[i + 1].fluent && pairs[i].value != pairs[i + 1].value) {
                std::string msg = "conditions require two values for fluent '" +
                                  d.fluent_name(pairs[i].fluent) + "'; they can never fire";
                if (as_error)
                    error(where, msg);
                else
                    warn(where, msg + " (kept)");
            }
        }
    }

    const Domain &d;
    ValidationReport &report;
};

} // namespace

ValidationReport validate_domain(const Domain &d) {
    ValidationReport report;
    Checker c(d, report);

    std::set<std::string> fluent_names;
    for (const auto &f : d.fluents) {
        if (f.range.empty())
            c.error("fluent " + f.name, "declares no values");
        if (!fluent_names.insert(f.name).second)
            c.error("fluent " + f.name, "duplicate fluent declaration");
        std::set<ValueId> seen;
        for (ValueId v : f.range)
            if (!seen.insert(v).second)
                c.error("fluent " + f.name, "duplicate value in range");
    }

    std::map<FluentId, ValueId> initial;
    for (const auto &vp : d.vps) {
        std::string where = "init";
        if (c.indices_ok(vp.pair))
            where = "init " + d.render(vp.pair);
        if (!c.check_pair(where, vp.pair))
            continue;
        auto [it, inserted] = initial.emplace(vp.pair.fluent, vp.pair.value);
        if (!inserted && it->second != vp.pair.value)
            c.error(where, "fluent '" + d.fluent_name(vp.pair.fluent) +
                               "' already initialized to '" + d.value_name(it->second) + "'");
    }

    for (const auto &ep : d.eps) {
        std::string where = "effect proposition " + ep.id;
        if (ep.action.index < 0 || ep.action.index >= static_cast<int32_t>(d.actions.size())) {
            c.error(where, "dangling action reference");
            continue;
        }
        c.check_pair(where, ep.effect);
        for (const auto &cond : ep.conditions)
            c.check_pair(where, cond);
        c.check_consistent(where, ep.conditions, /*as_error=*/true);
    }

    for (const auto &scl : d.scls) {
        std::string where = "static causal law " + scl.id;
        if (scl.conditions.empty())
            c.error(where, "condition set is empty");
        c.check_pair(where, scl.effect);
        for (const auto &cond : scl.conditions) {
            c.check_pair(where, cond);
            if (c.indices_ok(cond) && cond.fluent == scl.effect.fluent)
                c.error(where, "effect fluent '" + d.fluent_name(scl.effect.fluent) +
                                   "' appears in its own conditions");
        }
        c.check_consistent(where, scl.conditions, /*as_error=*/true);
    }

    for (const auto &kp : d.kps) {
        if (kp.action.index < 0 || kp.action.index >= static_cast<int32_t>(d.actions.size()) ||
            kp.fluent.index < 0 || kp.fluent.index >= static_cast<int32_t>(d.fluents.size()))
            c.error("senses", "dangling action or fluent reference");
    }

    for (const auto &exc : d.excs) {
        if (exc.action.index < 0 || exc.action.index >= static_cast<int32_t>(d.actions.size())) {
            c.error("executable", "dangling action reference");
            continue;
        }
        std::string where = "executable " + d.action_name(exc.action);
        for (const auto &p : exc.required)
            c.check_pair(where, p);
        c.check_consistent(where, exc.required, /*as_error=*/false);
    }

    for (const auto &g : d.goals.weak)
        c.check_pair("goal weak", g);
    for (const auto &g : d.goals.strong)
        c.check_pair("goal strong", g);

    for (size_t ai = 0; ai < d.actions.size(); ++ai) {
        ActionId a{static_cast<int32_t>(ai)};
        bool used = false;
        for (const auto &ep : d.eps)
            used |= ep.action == a;
        for (const auto &kp : d.kps)
            used |= kp.action == a;
        for (const auto &exc : d.excs)
            used |= exc.action == a;
        if (!used)
            c.warn("action " + d.actions[ai], "has no effects, sensing or executability");
    }

    return report;
}

ValidationReport validate_effect_conditions(const Domain &d,
                                            const std::vector<EffectProposition> &eps) {
    ValidationReport report;
    Checker c(d, report);
    for (const auto &ep : eps)
        c.check_consistent("effect proposition " + ep.id, ep.conditions, /*as_error=*/false);
    return report;
}

} // namespace hpxf
