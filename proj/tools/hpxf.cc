#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hpxf/aspemit.h"
#include "hpxf/compile.h"
#include "hpxf/errors.h"
#include "hpxf/kernel.h"
#include "hpxf/oracle.h"
#include "hpxf/parser.h"
#include "hpxf/planner.h"
#include "hpxf/randomgen.h"
#include "hpxf/validate.h"

namespace {

// Exit codes: 0 ok, 1 invalid domain or failed comparison, 2 I/O or parse
// error, 3 inconsistent branch, 4 no plan, 5 resource cap exceeded.
enum ExitCode {
    kOk = 0,
    kInvalid = 1,
    kIoOrParse = 2,
    kInconsistent = 3,
    kNoPlan = 4,
    kResourceCap = 5,
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hpxf::Error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw hpxf::Error("cannot write file '" + path + "'");
    out << text;
}

hpxf::Domain load_domain(const std::string &path) {
    return hpxf::parse_domain(read_file(path));
}

std::string describe(const hpxf::Domain &d, const hpxf::CompiledEffectSet &compiled) {
    std::ostringstream out;
    size_t generated = compiled.eps.size() - compiled.original_count;
    out << d.fluents.size() << " fluents, " << d.actions.size() << " actions, "
        << compiled.original_count << " EPs, " << d.scls.size() << " SCLs, " << generated
        << " generated EP" << (generated == 1 ? "" : "s");
    return out.str();
}

std::string show_compiled(const hpxf::Domain &d, const hpxf::CompiledEffectSet &compiled) {
    std::ostringstream out;
    out << "# compiled effect propositions\n";
    for (size_t ai = 0; ai < d.actions.size(); ++ai) {
        hpxf::ActionId a{static_cast<int32_t>(ai)};
        out << "action " << d.actions[ai] << " {\n";
        for (const hpxf::EffectProposition *ep : compiled.eps_of(a)) {
            out << "  effect " << d.render(ep->effect);
            if (!ep->conditions.empty()) {
                out << " if ";
                for (size_t i = 0; i < ep->conditions.size(); ++i)
                    out << (i ? ", " : "") << d.render(ep->conditions[i]);
            }
            auto prov = compiled.provenance.find(ep->id);
            if (prov != compiled.provenance.end())
                out << "  # generated " << ep->id << ": from " << prov->second.source_ep
                    << " via " << prov->second.scl << ", trigger "
                    << d.render(prov->second.trigger);
            out << "\n";
        }
        out << "}\n";
    }
    auto warnings = hpxf::validate_effect_conditions(d, compiled.eps);
    if (!warnings.findings.empty())
        out << "# warnings\n" << warnings.to_string();
    return out.str();
}

int run_check(const std::string &domain_path, bool show) {
    hpxf::Domain d = load_domain(domain_path);
    hpxf::ValidationReport report = hpxf::validate_domain(d);
    std::cout << report.to_string();
    if (!report.ok()) {
        std::cout << "invalid: " << report.error_count() << " error(s)\n";
        return kInvalid;
    }
    hpxf::CompiledEffectSet compiled = hpxf::compile_domain(d);
    std::cout << "ok: " << describe(d, compiled) << "\n";
    if (show)
        std::cout << show_compiled(d, compiled);
    return kOk;
}

int run_project(const std::string &domain_path, const std::string &plan_path,
                int max_branches) {
    hpxf::Domain d = load_domain(domain_path);
    hpxf::ValidationReport report = hpxf::validate_domain(d);
    if (!report.ok()) {
        std::cerr << report.to_string();
        return kInvalid;
    }
    hpxf::CompiledEffectSet compiled = hpxf::compile_domain(d);
    hpxf::PlanPtr plan = hpxf::parse_plan(read_file(plan_path), d);
    hpxf::TransitionTree tree = hpxf::project(plan.get(), d, compiled, max_branches);
    std::cout << hpxf::dump_tree(d, tree);
    return tree.any_inconsistent ? kInconsistent : kOk;
}

int run_plan(const std::string &domain_path, int max_steps, int max_branches,
             const std::string &mode, const std::string &out_path) {
    hpxf::Domain d = load_domain(domain_path);
    hpxf::ValidationReport report = hpxf::validate_domain(d);
    if (!report.ok()) {
        std::cerr << report.to_string();
        return kInvalid;
    }
    hpxf::CompiledEffectSet compiled = hpxf::compile_domain(d);
    hpxf::PlanSearchConfig cfg;
    cfg.max_steps = max_steps;
    cfg.max_branches = max_branches;
    cfg.concurrent = mode == "conc";
    hpxf::PlanSearchResult result = hpxf::plan_search(d, compiled, cfg);
    if (!result.found) {
        std::cerr << "no plan within " << max_steps << " step(s)\n";
        return kNoPlan;
    }
    write_output(out_path, hpxf::print_plan(d, result.plan.get()));
    return kOk;
}

int run_emit(const std::string &domain_path, int max_steps, int max_branches,
             const std::string &mode, const std::string &out_path) {
    hpxf::Domain d = load_domain(domain_path);
    hpxf::ValidationReport report = hpxf::validate_domain(d);
    if (!report.ok()) {
        std::cerr << report.to_string();
        return kInvalid;
    }
    hpxf::EmitConfig cfg;
    cfg.max_steps = max_steps;
    cfg.max_branches = max_branches;
    cfg.concurrent = mode == "conc";
    write_output(out_path, hpxf::emit_lp(d, cfg).full_text());
    return kOk;
}

int compare_one(const hpxf::Domain &d, const hpxf::PlanNode *plan, int max_branches,
                size_t &incompleteness) {
    hpxf::CompiledEffectSet compiled = hpxf::compile_domain(d);
    hpxf::TransitionTree tree = hpxf::project(plan, d, compiled, max_branches);
    hpxf::OracleProjection oracle = hpxf::oracle_project(tree, d, compiled);
    hpxf::SoundnessReport report = hpxf::check_soundness(tree, oracle, d);
    incompleteness += report.incompleteness_count;
    if (!report.sound()) {
        std::cout << report.to_string();
        return kInvalid;
    }
    return kOk;
}

int run_oracle_compare(const std::string &domain_path, const std::string &plan_path,
                       int random_count, uint64_t seed, int max_branches) {
    size_t incompleteness = 0;
    if (random_count > 0) {
        std::mt19937_64 rng(seed);
        hpxf::RandomDomainParams params;
        int failures = 0;
        int checked = 0;
        for (int i = 0; i < random_count; ++i) {
            hpxf::Domain d = hpxf::random_domain(rng, params);
            auto plan = hpxf::make_linear_plan(
                hpxf::random_plan(rng, d, 1 + static_cast<int>(rng() % 4)));
            try {
                failures += compare_one(d, plan.get(), max_branches, incompleteness) != kOk;
                ++checked;
            } catch (const hpxf::Error &) {
                // Domains whose projection errors out are skipped.
            }
        }
        std::cout << "checked " << checked << "/" << random_count << " random cases, "
                  << failures << " soundness violation(s), incompleteness "
                  << incompleteness << "\n";
        return failures == 0 ? kOk : kInvalid;
    }
    hpxf::Domain d = load_domain(domain_path);
    hpxf::PlanPtr plan = hpxf::parse_plan(read_file(plan_path), d);
    int rc = compare_one(d, plan.get(), max_branches, incompleteness);
    std::cout << (rc == kOk ? "sound" : "unsound") << ", incompleteness " << incompleteness
              << "\n";
    return rc;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"hpxf: reasoning engine for epistemic action domains"};
    app.require_subcommand(1);

    std::string domain_path;
    std::string plan_path;
    std::string out_path;
    std::string mode = "seq";
    int max_steps = 5;
    int max_branches = 8;
    bool show = false;
    int random_count = 0;
    uint64_t seed = 1;

    auto *check = app.add_subcommand("check", "parse, validate and compile a domain");
    check->add_option("--domain", domain_path)->required();
    check->add_flag("--show-compiled", show);

    auto *project = app.add_subcommand("project", "project a plan into a transition tree");
    project->add_option("--domain", domain_path)->required();
    project->add_option("--plan", plan_path)->required();
    project->add_option("--max-branches", max_branches);

    auto *plan = app.add_subcommand("plan", "search for a contingent plan");
    plan->add_option("--domain", domain_path)->required();
    plan->add_option("--max-steps", max_steps);
    plan->add_option("--max-branches", max_branches);
    plan->add_option("--mode", mode)->check(CLI::IsMember({"seq", "conc"}));
    plan->add_option("-o,--output", out_path);

    auto *emit = app.add_subcommand("emit-asp", "emit the equivalent logic program");
    emit->add_option("--domain", domain_path)->required();
    emit->add_option("--max-steps", max_steps);
    emit->add_option("--max-branches", max_branches);
    emit->add_option("--mode", mode)->check(CLI::IsMember({"seq", "conc"}));
    emit->add_option("-o,--output", out_path);

    auto *oracle = app.add_subcommand("oracle-compare",
                                      "check soundness against the possible-worlds oracle");
    oracle->add_option("--domain", domain_path);
    oracle->add_option("--plan", plan_path);
    oracle->add_option("--random", random_count);
    oracle->add_option("--seed", seed);
    oracle->add_option("--max-branches", max_branches);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed())
            return run_check(domain_path, show);
        if (project->parsed())
            return run_project(domain_path, plan_path, max_branches);
        if (plan->parsed())
            return run_plan(domain_path, max_steps, max_branches, mode, out_path);
        if (emit->parsed())
            return run_emit(domain_path, max_steps, max_branches, mode, out_path);
        if (oracle->parsed()) {
            if (random_count == 0 && (domain_path.empty() || plan_path.empty())) {
                std::cerr << "oracle-compare needs --domain and --plan, or --random N\n";
                return kIoOrParse;
            }
            return run_oracle_compare(domain_path, plan_path, random_count, seed,
                                      max_branches);
        }
    } catch (const hpxf::BranchCapExceeded &e) {
        std::cerr << e.what() << "\n";
        return kResourceCap;
    } catch (const hpxf::IterationBudgetExceeded &e) {
        std::cerr << e.what() << "\n";
        return kResourceCap;
    } catch (const hpxf::ParseError &e) {
        std::cerr << e.what() << "\n";
        return kIoOrParse;
    } catch (const hpxf::InconsistencyDetected &e) {
        std::cerr << e.what() << "\n";
        return kInconsistent;
    } catch (const hpxf::MultipleSensingActions &e) {
        std::cerr << e.what() << "\n";
        return kInconsistent;
    } catch (const hpxf::ConcurrentSimilarEPs &e) {
        std::cerr << e.what() << "\n";
        return kInconsistent;
    } catch (const hpxf::AllOutcomesExcluded &e) {
        std::cerr << e.what() << "\n";
        return kInconsistent;
    } catch (const hpxf::Error &e) {
        std::cerr << e.what() << "\n";
        return kIoOrParse;
    }
    return kOk;
}
