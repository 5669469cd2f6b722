#include <doctest.h>

#include <random>

#include "hpxf/compile.h"
#include "hpxf/parser.h"
#include "hpxf/planner.h"
#include "hpxf/randomgen.h"
#include "support/brute_planner.h"
#include "support/test_util.h"

using namespace hpxf;
using namespace hpxf::testing;

TEST_SUITE_BEGIN("planner");

namespace {

struct Wheelchair {
    Domain d = wheelchair_domain();
    CompiledEffectSet compiled = compile_domain(d);

    PlanPtr example_plan() const {
        return parse_plan("step { sit }\nstep { drv }\nstep { senseLoc }\n", d);
    }
};

} // namespace

TEST_CASE("plan text round-trips") {
    Wheelchair w;
    PlanPtr plan = parse_plan("step { sit }\n"
                              "step { senseLoc }\n"
                              "branch pAt = bath {\n  step { drv }\n}\n"
                              "branch pAt = kit {\n}\n",
                              w.d);
    REQUIRE(plan);
    CHECK(plan_depth(plan.get()) == 3);
    std::string printed = print_plan(w.d, plan.get());
    PlanPtr again = parse_plan(printed, w.d);
    CHECK(print_plan(w.d, again.get()) == printed);

    CHECK(parse_plan("", w.d) == nullptr);
    CHECK_THROWS_AS(parse_plan("step { fly }", w.d), ParseError);
    CHECK_THROWS_AS(parse_plan("branch pAt = bath { }", w.d), ParseError);
}

TEST_CASE("projection of the worked plan has the 1-1-1-2 shape") {
    Wheelchair w;
    TransitionTree tree = project(w.example_plan().get(), w.d, w.compiled, 2);
    CHECK(tree.depth == 3);
    CHECK(tree.nodes.size() == 5);
    CHECK(tree.find(0, 0) != nullptr);
    CHECK(tree.find(1, 0) != nullptr);
    CHECK(tree.find(2, 0) != nullptr);
    REQUIRE(tree.find(3, 0) != nullptr);
    REQUIRE(tree.find(3, 1) != nullptr);
    CHECK(!tree.any_inconsistent);

    // The bath branch keeps the parent label and carries the postdiction.
    const TreeNode *bath = tree.find(3, 0);
    REQUIRE(bath->sensed.has_value());
    CHECK(render_triple(w.d, *bath->sensed) == "pAt=bath @2");
    CHECK(bath->state->kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), 3));
}

TEST_CASE("empty plan projects to the evaluated initial node") {
    Wheelchair w;
    TransitionTree tree = project(nullptr, w.d, w.compiled, 2);
    CHECK(tree.depth == 0);
    CHECK(tree.nodes.size() == 1);
    const TreeNode *root = tree.find(0, 0);
    REQUIRE(root != nullptr);
    CHECK(root->leaf);
    CHECK(root->state->kh.size() == 6);
}

TEST_CASE("never-executable actions leave evaluated copies") {
    Domain d = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                            "action x { effect f = a\n executable if g = a }\n");
    CompiledEffectSet compiled = compile_domain(d);
    PlanPtr plan = parse_plan("step { x }\nstep { x }\n", d);
    TransitionTree tree = project(plan.get(), d, compiled, 2);
    CHECK(tree.depth == 2);
    for (const auto &[key, node] : tree.nodes) {
        REQUIRE(node.state.has_value());
        CHECK(node.state->ah.empty());
    }
}

TEST_CASE("projection is deterministic") {
    Wheelchair w;
    TransitionTree a = project(w.example_plan().get(), w.d, w.compiled, 2);
    TransitionTree b = project(w.example_plan().get(), w.d, w.compiled, 2);
    CHECK(dump_tree(w.d, a) == dump_tree(w.d, b));
}

TEST_CASE("branch cap") {
    Domain d = parse_domain("fluent f { a, b, c }\naction s { senses f }\n");
    CompiledEffectSet compiled = compile_domain(d);
    PlanPtr plan = parse_plan("step { s }", d);
    CHECK_THROWS_AS(project(plan.get(), d, compiled, 1), BranchCapExceeded);
    CHECK_NOTHROW(project(plan.get(), d, compiled, 2));
}

TEST_CASE("goal verification on the worked tree") {
    Wheelchair w;
    TransitionTree tree = project(w.example_plan().get(), w.d, w.compiled, 2);

    SUBCASE("weak abnormality goal met on the bath leaf") {
        GoalReport report = verify_goals(tree, w.d.goals, w.d);
        CHECK(report.weak_satisfied);
        CHECK(report.strong_satisfied); // no strong goals declared
        REQUIRE(report.weak_witness.has_value());
        CHECK(*report.weak_witness == std::pair<int, int>{3, 0});
    }

    SUBCASE("empty goal sets are satisfied") {
        GoalReport report = verify_goals(tree, GoalSet{}, w.d);
        CHECK(report.weak_satisfied);
        CHECK(report.strong_satisfied);
    }

    SUBCASE("strong kitchen goal fails on the bath leaf") {
        GoalSet goals;
        goals.strong = {fv(w.d, "pAt", "kit")};
        GoalReport report = verify_goals(tree, goals, w.d);
        CHECK(!report.strong_satisfied);
        REQUIRE(report.failures.size() == 1);
        CHECK(report.failures[0] == "leaf (3,0) misses strong goal pAt=kit");
    }
}

TEST_CASE("depth-one search reaches the kitchen") {
    Wheelchair w;
    Domain d = w.d;
    d.goals.weak = {fv(d, "wcAt", "kit")};
    d.goals.strong.clear();
    PlanSearchConfig cfg;
    cfg.max_steps = 1;
    cfg.max_branches = 2;
    PlanSearchResult result = plan_search(d, w.compiled, cfg);
    REQUIRE(result.found);
    CHECK(print_plan(d, result.plan.get()) == "step { drv }\n");
}

TEST_CASE("three-step search finds the sensing plan") {
    Wheelchair w;
    PlanSearchConfig cfg;
    cfg.max_steps = 3;
    cfg.max_branches = 2;
    PlanSearchResult result = plan_search(w.d, w.compiled, cfg);
    REQUIRE(result.found);
    CHECK(print_plan(w.d, result.plan.get()) ==
          "step { sit }\nstep { drv }\nstep { senseLoc }\n");

    // Search soundness: the returned plan re-verifies.
    TransitionTree tree = project(result.plan.get(), w.d, w.compiled, cfg.max_branches);
    GoalReport report = verify_goals(tree, w.d.goals, w.d);
    CHECK(report.weak_satisfied);
    CHECK(report.strong_satisfied);
}

TEST_CASE("unsatisfiable and under-horizon goals yield no plan") {
    Wheelchair w;

    SUBCASE("no mechanism ever produces the goal value") {
        Domain d = parse_domain("fluent f { a, b }\nfluent goalf { x, y }\n"
                                "init f = a\n"
                                "action t { effect f = b }\n"
                                "goal weak goalf = x\n");
        CompiledEffectSet compiled = compile_domain(d);
        PlanSearchConfig cfg;
        cfg.max_steps = 3;
        PlanSearchResult result = plan_search(d, compiled, cfg);
        CHECK(!result.found);
    }

    SUBCASE("horizon too small for the postdiction chain") {
        PlanSearchConfig cfg;
        cfg.max_steps = 2;
        cfg.max_branches = 2;
        CHECK(!plan_search(w.d, w.compiled, cfg).found);
    }

    SUBCASE("horizon zero with an unmet goal") {
        PlanSearchConfig cfg;
        cfg.max_steps = 0;
        CHECK(!plan_search(w.d, w.compiled, cfg).found);
    }
}

TEST_CASE("concurrent mode can combine actions in one step") {
    // Both effects are needed at step 1; only a concurrent step does it.
    Domain d = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                            "init f = b\ninit g = b\n"
                            "action x { effect f = a }\n"
                            "action y { effect g = a }\n"
                            "goal weak f = a\ngoal weak g = a\n");
    CompiledEffectSet compiled = compile_domain(d);
    PlanSearchConfig cfg;
    cfg.max_steps = 1;
    cfg.concurrent = true;
    PlanSearchResult result = plan_search(d, compiled, cfg);
    REQUIRE(result.found);
    CHECK(print_plan(d, result.plan.get()) == "step { x, y }\n");
    cfg.concurrent = false;
    CHECK(!plan_search(d, compiled, cfg).found);
}

TEST_CASE("search agrees with brute-force enumeration on micro domains") {
    std::mt19937_64 rng(2024);
    RandomDomainParams params;
    params.max_fluents = 3;
    params.max_actions = 3;
    params.goal_prob = 0.9;
    int checked = 0;
    for (int round = 0; round < 60; ++round) {
        Domain d = random_domain(rng, params);
        if (d.goals.weak.empty() && d.goals.strong.empty())
            continue;
        CompiledEffectSet compiled = compile_domain(d);
        PlanSearchConfig cfg;
        cfg.max_steps = 2;
        cfg.max_branches = 8;
        bool found = plan_search(d, compiled, cfg).found;
        bool brute = brute_force_plan_exists(d, compiled, cfg.max_steps, cfg.max_branches);
        CHECK(found == brute);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_SUITE_END();
