#include <doctest.h>

#include <random>

#include "hpxf/compile.h"
#include "hpxf/kernel.h"
#include "hpxf/parser.h"
#include "hpxf/randomgen.h"
#include "support/naive_oracle.h"
#include "support/test_util.h"

using namespace hpxf;
using namespace hpxf::testing;

TEST_SUITE_BEGIN("kernel");

namespace {

struct Wheelchair {
    Domain d = wheelchair_domain();
    CompiledEffectSet compiled = compile_domain(d);

    HState h0() const { return eval(initial_hstate(d), d, compiled); }

    HState after(const std::vector<std::string> &names) const {
        HState h = h0();
        for (const auto &name : names) {
            auto succs = transition_states({act(d, name)}, h, d, compiled);
            REQUIRE(succs.size() == 1);
            h = succs.front();
        }
        return h;
    }
};

KnowledgeTriple triple(const Domain &d, const std::string &fluent, const std::string &value,
                       bool negative, Step t) {
    return {*d.find_fluent(fluent), *d.find_value(value), negative, t};
}

} // namespace

TEST_CASE("now counts transitions") {
    Wheelchair w;
    HState h;
    CHECK(h.now() == 0);
    h.add_occurrence(act(w.d, "sit"), 0);
    CHECK(h.now() == 1);
    h.add_occurrence(act(w.d, "drv"), 1);
    h.add_occurrence(act(w.d, "senseLoc"), 2);
    CHECK(h.now() == 3);
}

TEST_CASE("effect history collects the occurred actions' propositions") {
    Wheelchair w;
    HState h;
    CHECK(effect_history(h, w.compiled, w.d).empty());

    h.add_occurrence(act(w.d, "drv"), 1);
    auto eh = effect_history(h, w.compiled, w.d);
    CHECK(eh.size() == 2); // original and generated drive proposition
    for (const auto &entry : eh)
        CHECK(entry.step == 1);

    HState sensing;
    sensing.add_occurrence(act(w.d, "senseLoc"), 2);
    CHECK(effect_history(sensing, w.compiled, w.d).empty());

    HState bad;
    bad.add_occurrence(ActionId{99}, 0);
    CHECK_THROWS_AS(effect_history(bad, w.compiled, w.d), UnknownAction);
}

TEST_CASE("inertial pairs") {
    Wheelchair w;
    HState h1 = w.after({"sit"});
    EvalContext ctx(w.d, w.compiled, h1);

    // No proposition at step 0 touches ab_sit.
    CHECK(inertial(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), false, 0, h1, ctx));
    CHECK(inertial(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), true, 0, h1, ctx));

    // sit's proposition may set sitting=true and no condition is known
    // false, so neither sitting=false nor "not sitting=true" is inertial.
    CHECK(!inertial(*w.d.find_fluent("sitting"), *w.d.find_value("true"), true, 0, h1, ctx));
    CHECK(!inertial(*w.d.find_fluent("sitting"), *w.d.find_value("false"), false, 0, h1, ctx));
    CHECK(!h1.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("false"), 1));

    // An unconditional proposition can never be discounted.
    Domain d2 = parse_domain("fluent f { a, b }\naction x { effect f = a }\n");
    CompiledEffectSet c2 = compile_domain(d2);
    HState h2;
    h2.add_occurrence(act(d2, "x"), 0);
    EvalContext ctx2(d2, c2, h2);
    CHECK(!inertial(*d2.find_fluent("f"), *d2.find_value("a"), true, 0, h2, ctx2));
    CHECK(inertial(*d2.find_fluent("f"), *d2.find_value("a"), false, 0, h2, ctx2));
}

TEST_CASE("forward inertia carries persisting knowledge") {
    Wheelchair w;
    HState h1 = w.after({"sit"});
    CHECK(h1.kh.knows(*w.d.find_fluent("pAt"), *w.d.find_value("bath"), 1));
    CHECK(h1.kh.knows(*w.d.find_fluent("wcAt"), *w.d.find_value("bath"), 1));

    SUBCASE("empty knowledge propagates nothing") {
        HState h;
        h.add_occurrence(act(w.d, "sit"), 0);
        EvalContext ctx(w.d, w.compiled, h);
        CHECK(im_fwd(h, ctx) == h);
    }
}

TEST_CASE("backward inertia recovers earlier knowledge from sensing") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    HState sensed = h2;
    sensed.add_occurrence(act(w.d, "senseLoc"), 2);
    sensed.kh.insert(triple(w.d, "pAt", "bath", false, 2));
    HState h3 = eval(sensed, w.d, w.compiled);
    // No proposition at step 1 can set pAt=bath, so the sensed value
    // reaches back.
    CHECK(h3.kh.knows(*w.d.find_fluent("pAt"), *w.d.find_value("bath"), 1));
    CHECK(h3.kh.knows(*w.d.find_fluent("pAt"), *w.d.find_value("bath"), 0));
}

TEST_CASE("causation adds effects of propositions with known conditions") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    CHECK(h2.kh.knows(*w.d.find_fluent("wcAt"), *w.d.find_value("kit"), 2));
    // The generated drive proposition has sitting=true unknown: no effect.
    CHECK(!h2.kh.knows(*w.d.find_fluent("pAt"), *w.d.find_value("kit"), 2));
    CHECK(!h2.kh.knows_not(*w.d.find_fluent("pAt"), *w.d.find_value("kit"), 2));

    SUBCASE("unconditional proposition always fires") {
        Domain d2 = parse_domain("fluent f { a, b }\naction x { effect f = a }\n");
        CompiledEffectSet c2 = compile_domain(d2);
        HState h = eval(initial_hstate(d2), d2, c2);
        auto succs = transition_states({act(d2, "x")}, h, d2, c2);
        REQUIRE(succs.size() == 1);
        CHECK(succs[0].kh.knows(*d2.find_fluent("f"), *d2.find_value("a"), 1));
    }
}

TEST_CASE("negative postdiction on the generated drive proposition") {
    // Person sensed at bath after the drive: the generated proposition's
    // effect pAt=kit is excluded at 2, its conditions wcAt=bath and pAt=bath
    // are known at 1, so sitting=true must have been false at 1.
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    HState sensed = h2;
    sensed.add_occurrence(act(w.d, "senseLoc"), 2);
    sensed.kh.insert(triple(w.d, "pAt", "bath", false, 2));
    HState h3 = eval(sensed, w.d, w.compiled);
    CHECK(h3.kh.knows_not(*w.d.find_fluent("sitting"), *w.d.find_value("true"), 1));
    // which chains into the abnormality postdiction on the sit proposition:
    CHECK(h3.kh.knows_not(*w.d.find_fluent("ab_sit"), *w.d.find_value("false"), 0));
    CHECK(h3.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), 0));
    CHECK(h3.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), 2));
    CHECK(h3.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("false"), 2));
}

TEST_CASE("positive postdiction on the sensed kitchen branch") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    HState sensed = h2;
    sensed.add_occurrence(act(w.d, "senseLoc"), 2);
    sensed.kh.insert(triple(w.d, "pAt", "kit", false, 2));
    HState h3 = eval(sensed, w.d, w.compiled);
    // Only the generated drive proposition can explain pAt=kit.
    CHECK(h3.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("true"), 1));
    CHECK(h3.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("false"), 0));
}

TEST_CASE("postdiction mechanisms do nothing without applied propositions") {
    Wheelchair w;
    HState h = w.h0();
    EvalContext ctx(w.d, w.compiled, h);
    CHECK(im_pd_pos(h, ctx) == h);
    CHECK(im_pd_neg(h, ctx) == h);
}

TEST_CASE("exclusion mechanisms") {
    Wheelchair w;
    HState h = w.h0();
    // sitting=false initially excludes sitting=true; and pAt=bath excludes
    // pAt=kit (direct instantiation of negative exclusion).
    CHECK(h.kh.knows_not(*w.d.find_fluent("sitting"), *w.d.find_value("true"), 0));
    CHECK(h.kh.knows_not(*w.d.find_fluent("pAt"), *w.d.find_value("kit"), 0));

    SUBCASE("positive exclusion from a fully excluded range") {
        HState g;
        g.kh.insert(triple(w.d, "sitting", "true", true, 0));
        HState out = eval(g, w.d, w.compiled);
        CHECK(out.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("false"), 0));
    }

    SUBCASE("singleton range is always positively known") {
        Domain d2 = parse_domain("fluent solo { only }\nfluent f { a, b }\n"
                                 "action x { effect f = a }\n");
        CompiledEffectSet c2 = compile_domain(d2);
        HState h2 = eval(initial_hstate(d2), d2, c2);
        CHECK(h2.kh.knows(*d2.find_fluent("solo"), *d2.find_value("only"), 0));
        auto succs = transition_states({act(d2, "x")}, h2, d2, c2);
        CHECK(succs[0].kh.knows(*d2.find_fluent("solo"), *d2.find_value("only"), 1));
    }
}

TEST_CASE("static causal consequence applies to initial knowledge") {
    // Knowledge alone triggers the law at step 0; compilation cannot cover
    // this because no action occurred.
    Domain d = parse_domain("fluent wcAt { bath, kit }\nfluent pAt { bath, kit }\n"
                            "fluent sitting { true, false }\n"
                            "init wcAt = bath\ninit sitting = true\n"
                            "action noop { effect sitting = true }\n"
                            "scl pAt = bath if wcAt = bath, sitting = true\n");
    CompiledEffectSet compiled = compile_domain(d);
    HState h = eval(initial_hstate(d), d, compiled);
    CHECK(h.kh.knows(*d.find_fluent("pAt"), *d.find_value("bath"), 0));

    SUBCASE("partially unknown condition adds nothing") {
        Domain d2 = wheelchair_domain();
        CompiledEffectSet c2 = compile_domain(d2);
        HState h2 = eval(initial_hstate(d2), d2, c2);
        // sitting=false initially: neither law fires.
        CHECK(!h2.kh.knows(*d2.find_fluent("pAt"), *d2.find_value("kit"), 0));
    }
}

TEST_CASE("eval_once is the identity on a converged state") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    CHECK(eval_once(h2, w.d, w.compiled) == h2);
    CHECK(eval(h2, w.d, w.compiled) == h2);
}

TEST_CASE("eval_once grows strictly toward the eval fixpoint after sensing") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    HState sensed = h2;
    sensed.add_occurrence(act(w.d, "senseLoc"), 2);
    sensed.kh.insert(triple(w.d, "pAt", "bath", false, 2));
    HState once = eval_once(sensed, w.d, w.compiled);
    HState fix = eval(sensed, w.d, w.compiled);
    CHECK(once.kh.size() > sensed.kh.size());
    CHECK(once.kh.size() < fix.kh.size());
    for (const auto &t : once.kh.triples())
        CHECK((t.negative ? fix.kh.knows_not(t.fluent, t.value, t.step)
                          : fix.kh.knows(t.fluent, t.value, t.step)));
}

TEST_CASE("eval on an empty state is the identity") {
    Wheelchair w;
    HState h;
    CHECK(eval(h, w.d, w.compiled) == h);
}

TEST_CASE("eval agrees with the naive saturation oracle") {
    std::mt19937_64 rng(42);
    RandomDomainParams params;
    params.max_fluents = 3;
    for (int round = 0; round < 150; ++round) {
        Domain d = random_domain(rng, params);
        CompiledEffectSet compiled = compile_domain(d);
        HState h = initial_hstate(d);
        auto plan = random_plan(rng, d, 1 + static_cast<int>(rng() % 3));
        bool skipped = false;
        try {
            h = eval(h, d, compiled);
            for (const auto &step : plan) {
                auto succs = transition(step, h, d, compiled);
                if (!succs.successors.front().state) {
                    skipped = true;
                    break;
                }
                h = *succs.successors.front().state;
            }
        } catch (const Error &) {
            skipped = true;
        }
        if (skipped)
            continue;
        NaiveResult expected = naive_closure(d, compiled, h);
        REQUIRE(!expected.inconsistent);
        std::set<FlatTriple> actual;
        for (const auto &t : h.kh.triples())
            actual.insert({t.fluent.index, t.value.index, t.negative, t.step});
        CHECK(actual == expected.triples);
    }
}

TEST_CASE("sensing outcome generation") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});

    SUBCASE("unknown fluent branches over the whole range") {
        auto outcomes = sense({act(w.d, "senseLoc")}, h2, w.d);
        REQUIRE(outcomes.size() == 2);
        CHECK(render_triple(w.d, outcomes[0][0]) == "pAt=bath @2");
        CHECK(render_triple(w.d, outcomes[1][0]) == "pAt=kit @2");
    }

    SUBCASE("excluded values do not branch") {
        HState h0 = w.h0(); // pAt=bath known, pAt=kit excluded at 0
        auto outcomes = sense({act(w.d, "senseLoc")}, h0, w.d);
        REQUIRE(outcomes.size() == 1);
        CHECK(render_triple(w.d, outcomes[0][0]) == "pAt=bath @0");
    }

    SUBCASE("non-sensing action set yields the single empty outcome") {
        auto outcomes = sense({act(w.d, "drv")}, h2, w.d);
        REQUIRE(outcomes.size() == 1);
        CHECK(outcomes[0].empty());
    }

    SUBCASE("two sensing actions are rejected") {
        Domain d2 = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                                 "action s1 { senses f }\naction s2 { senses g }\n");
        HState h;
        CHECK_THROWS_AS(sense({act(d2, "s1"), act(d2, "s2")}, h, d2),
                        MultipleSensingActions);
    }

    SUBCASE("fully excluded sensed fluent is contradictory") {
        Domain d2 = parse_domain("fluent f { a, b }\naction s { senses f }\n");
        HState h;
        h.kh.insert(triple(d2, "f", "a", true, 0));
        h.kh.insert(triple(d2, "f", "b", true, 0));
        CHECK_THROWS_AS(sense({act(d2, "s")}, h, d2), AllOutcomesExcluded);
    }
}

TEST_CASE("transition after sit matches the worked scenario") {
    Wheelchair w;
    HState h1 = w.after({"sit"});
    CHECK(h1.ah == std::vector<ActionOccurrence>{{act(w.d, "sit"), 0}});
    CHECK(positive_triples(w.d, h1) ==
          std::set<std::string>{"pAt=bath@0", "pAt=bath@1", "wcAt=bath@0", "wcAt=bath@1",
                                "sitting=false@0"});
}

TEST_CASE("sensing transition branches and the bath branch postdicts") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    TransitionResult res = transition({act(w.d, "senseLoc")}, h2, w.d, w.compiled);
    REQUIRE(res.successors.size() == 2);
    REQUIRE(res.successors[0].state.has_value());
    REQUIRE(res.successors[1].state.has_value());

    const HState &bath = *res.successors[0].state;
    CHECK(bath.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), 2));
    CHECK(bath.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("true"), 3));
    CHECK(bath.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("false"), 2));
    CHECK(bath.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("false"), 3));

    const HState &kit = *res.successors[1].state;
    CHECK(kit.kh.knows(*w.d.find_fluent("sitting"), *w.d.find_value("true"), 1));
    CHECK(kit.kh.knows(*w.d.find_fluent("ab_sit"), *w.d.find_value("false"), 0));
}

TEST_CASE("non-executable actions are filtered") {
    Domain d = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                            "action x { effect f = a\n executable if g = a }\n");
    CompiledEffectSet compiled = compile_domain(d);
    HState h = eval(initial_hstate(d), d, compiled); // g unknown
    TransitionResult res = transition({act(d, "x")}, h, d, compiled);
    CHECK(res.applied.empty());
    REQUIRE(res.successors.size() == 1);
    CHECK(*res.successors[0].state == h); // no occurrence recorded
}

TEST_CASE("concurrent propositions with one effect pair are rejected") {
    Domain d = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                            "action x { effect f = a if g = a }\n"
                            "action y { effect f = a if g = b }\n");
    CompiledEffectSet compiled = compile_domain(d);
    HState h = eval(initial_hstate(d), d, compiled);
    CHECK_THROWS_AS(transition({act(d, "x"), act(d, "y")}, h, d, compiled),
                    ConcurrentSimilarEPs);
    CHECK_NOTHROW(transition({act(d, "x")}, h, d, compiled));
}

TEST_CASE("every mechanism only grows knowledge and never touches history") {
    Wheelchair w;
    HState h2 = w.after({"sit", "drv"});
    HState sensed = h2;
    sensed.add_occurrence(act(w.d, "senseLoc"), 2);
    sensed.kh.insert(triple(w.d, "pAt", "bath", false, 2));
    EvalContext ctx(w.d, w.compiled, sensed);

    using ImFn = HState (*)(const HState &, const EvalContext &);
    for (ImFn fn : {im_fwd, im_back, im_cause, im_pd_pos, im_pd_neg, im_ex_pos, im_ex_neg,
                    im_scl}) {
        HState out = fn(sensed, ctx);
        CHECK(out.ah == sensed.ah);
        CHECK(out.kh.size() >= sensed.kh.size());
        for (const auto &t : sensed.kh.triples())
            CHECK((t.negative ? out.kh.knows_not(t.fluent, t.value, t.step)
                              : out.kh.knows(t.fluent, t.value, t.step)));
        // Step bound: nothing beyond the current step.
        for (const auto &t : out.kh.triples())
            CHECK(t.step <= sensed.now());
    }
}

TEST_CASE("inconsistent sensing is reported per successor") {
    // Sensing contradicts what backward postdiction will derive: the
    // successor is reported as inconsistent rather than dropped.
    Domain d = parse_domain("fluent f { a, b }\nfluent g { a, b }\n"
                            "init g = a\n"
                            "action x { effect f = a if g = a }\n"
                            "action s { senses f }\n");
    CompiledEffectSet compiled = compile_domain(d);
    HState h = eval(initial_hstate(d), d, compiled);
    auto succs = transition_states({act(d, "x")}, h, d, compiled);
    REQUIRE(succs.size() == 1);
    // f=a is caused at 1; sensing f at 1 yields only the f=a branch because
    // f=b is already excluded.
    TransitionResult res = transition({act(d, "s")}, succs[0], d, compiled);
    REQUIRE(res.successors.size() == 1);
    CHECK(res.successors[0].state.has_value());
}

TEST_SUITE_END();
