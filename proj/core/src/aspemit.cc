#include "hpxf/aspemit.h"

#include <cctype>
#include <sstream>

namespace hpxf {

namespace {

bool plain_constant(const std::string &name) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::string atomize(const std::string &name) {
    if (plain_constant(name))
        return name;
    return "\"" + name + "\"";
}

// Generated proposition ids have the shape "(source,scl)" and are emitted
// as compound terms; plain ids are emitted as constants.
std::string ep_term(const std::string &id) {
    if (!id.empty() && id.front() == '(')
        return id;
    return atomize(id);
}

} // namespace

std::string emit_world(const Domain &d) {
    std::ostringstream out;
    out << "% domain-specific part\n";

    out << "\n% fluent ranges\n";
    for (const auto &f : d.fluents)
        for (ValueId v : f.range)
            out << "possVal(" << atomize(f.name) << "," << atomize(d.value_name(v)) << ").\n";

    out << "\n% initial knowledge\n";
    for (const auto &vp : d.vps)
        out << "knows(" << atomize(d.fluent_name(vp.pair.fluent)) << ","
            << atomize(d.value_name(vp.pair.value)) << ",0,0,0).\n";

    out << "\n% actions and effect propositions\n";
    for (const auto &name : d.actions)
        out << "act(" << atomize(name) << ").\n";
    for (const auto &ep : d.eps) {
        const std::string a = atomize(d.action_name(ep.action));
        const std::string id = ep_term(ep.id);
        out << "hasEP(" << a << "," << id << ").\n";
        out << "hasEff(" << id << "," << atomize(d.fluent_name(ep.effect.fluent)) << ","
            << atomize(d.value_name(ep.effect.value)) << ").\n";
        for (const auto &c : ep.conditions)
            out << "hasCond(" << id << "," << atomize(d.fluent_name(c.fluent)) << ","
                << atomize(d.value_name(c.value)) << ").\n";
    }

    out << "\n% static causal laws\n";
    for (const auto &scl : d.scls) {
        const std::string id = atomize(scl.id);
        out << "sclHasEff(" << id << "," << atomize(d.fluent_name(scl.effect.fluent)) << ","
            << atomize(d.value_name(scl.effect.value)) << ").\n";
        for (const auto &c : scl.conditions)
            out << "sclHasCond(" << id << "," << atomize(d.fluent_name(c.fluent)) << ","
                << atomize(d.value_name(c.value)) << ").\n";
    }

    out << "\n% knowledge propositions\n";
    for (const auto &kp : d.kps)
        out << "hasKP(" << atomize(d.action_name(kp.action)) << ","
            << atomize(d.fluent_name(kp.fluent)) << ").\n";

    out << "\n% executability conditions\n";
    for (const auto &exc : d.excs)
        for (const auto &p : exc.required)
            out << ":- occ(" << atomize(d.action_name(exc.action)) << ",N,B), not knows("
                << atomize(d.fluent_name(p.fluent)) << "," << atomize(d.value_name(p.value))
                << ",N,N,B).\n";

    out << "\n% goals\n";
    for (const auto &g : d.goals.weak)
        out << "wGoal(" << atomize(d.fluent_name(g.fluent)) << ","
            << atomize(d.value_name(g.value)) << ").\n";
    for (const auto &g : d.goals.strong)
        out << "sGoal(" << atomize(d.fluent_name(g.fluent)) << ","
            << atomize(d.value_name(g.value)) << ").\n";
    return out.str();
}

std::string emit_foundational(int max_steps, int max_branches, bool concurrent) {
    const std::string S = std::to_string(max_steps);
    const std::string B = std::to_string(max_branches);
    std::ostringstream out;

    out << "% foundational part\n";
    out << "\n% auxiliaries\n";
    out << "s(0.." << S << "). br(0.." << B << ").\n";

    out << "\n% concurrency\n";
    out << "apply(EP,N,N,B) :- hasEP(A,EP), occ(A,N,B).\n";
    out << ":- apply(EP1,T,N,B), hasEff(EP1,F,V), apply(EP2,T,N,B), hasEff(EP2,F,V), "
           "EP1 != EP2, possVal(F,V).\n";
    out << "apply(EP,T,N+1,B) :- apply(EP,T,N,B), N < " << S << ".\n";

    out << "\n% inertia\n";
    out << "kMaySet(F,V,T,N,B) :- apply(EP,T,N,B), hasEff(EP,F,V).\n";
    out << "kInertial(F,neg(V),T,N,B) :- not kMaySet(F,V,T,N,B), uBr(N,B), s(T), "
           "possVal(F,V).\n";
    out << "kInertial(F,neg(V),T,N,B) :- apply(EP,T,N,B), hasEff(EP,F,V), "
           "hasCond(EP,F1,V1), knowsNot(F1,V1,T,N,B), s(T).\n";
    out << "kInertial(F,V,T,N,B) :- NV = #count{ V1 : kInertial(F,neg(V1),T,N,B), "
           "possVal(F,V1), V1 != V }, uBr(N,B), s(T), numPossVal(F,NV+1), possVal(F,V).\n";
    out << "knows(F,V,T,N,B) :- knows(F,V,T-1,N,B), kInertial(F,V,T-1,N,B), T <= N, s(T), "
           "possVal(F,V).\n";
    out << "knows(F,V,T,N,B) :- knows(F,V,T+1,N,B), kInertial(F,neg(V),T,N,B), T < N, "
           "possVal(F,V).\n";
    out << "knowsNot(F,V,T,N,B) :- knowsNot(F,V,T-1,N,B), kInertial(F,neg(V),T-1,N,B), "
           "T <= N, s(T), possVal(F,V).\n";
    out << "knowsNot(F,V,T,N,B) :- knowsNot(F,V,T+1,N,B), kInertial(F,V,T,N,B), T < N, "
           "possVal(F,V).\n";
    out << "knows(F,V,T,N,B) :- knows(F,V,T,N-1,B), s(N).\n";
    out << "knowsNot(F,V,T,N,B) :- knowsNot(F,V,T,N-1,B), s(N).\n";

    out << "\n% causation and postdiction\n";
    out << "numKnownCond(EP,C,T,N,B) :- C = #count{ F,V : knows(F,V,T,N,B), "
           "hasCond(EP,F,V) }, uBr(N,B), apply(EP,T,N,B).\n";
    out << "hasNumCond(EP,C) :- C = #count{ F,V : hasCond(EP,F,V) }, hasCond(EP,_,_).\n";
    out << "kCause(F,V,T+1,N,B) :- apply(EP,T,N,B), numKnownCond(EP,C,T,N,B), "
           "hasNumCond(EP,C), hasEff(EP,F,V), uBr(N,B), N > T.\n";
    out << "kPosPost(F,V,T,N,B) :- apply(EP,T,N,B), uBr(N,B), hasCond(EP,F,V), "
           "hasEff(EP,F1,V1), knows(F1,V1,T+1,N,B), knowsNot(F1,V1,T,N,B), "
           "not knowsNot(F,V,T,N,B), N > T.\n";
    out << "kNotNegPost(F,V,T,N,B) :- apply(EP,T,N,B), hasEff(EP,F1,V1), "
           "knowsNot(F1,V1,T+1,N,B), uBr(N,B), N > T, hasCond(EP,F,V), "
           "hasNumCond(EP,C+1), numKnownCond(EP,C,T,N,B), not knows(F,V,T,N,B).\n";
    out << "knows(F,V,T,N,B) :- kCause(F,V,T,N,B).\n";
    out << "knows(F,V,T,N,B) :- kPosPost(F,V,T,N,B).\n";
    out << "knowsNot(F,V,T,N,B) :- kNotNegPost(F,V,T,N,B).\n";

    out << "\n% knowledge by exclusion\n";
    out << "numKNF(F,KN,T,N,B) :- KN = #count{ V : knowsNot(F,V,T,N,B), possVal(F,V) }, "
           "uBr(N,B), s(T), possVal(F,_).\n";
    out << "numPossVal(F,NV) :- NV = #count{ V : possVal(F,V) }, possVal(F,_).\n";
    out << "kPosEx(F,V,T,N,B) :- numKNF(F,KN,T,N,B), numPossVal(F,KN+1), "
           "not knowsNot(F,V,T,N,B), possVal(F,V).\n";
    out << "kNotNegEx(F,V,T,N,B) :- knows(F,V1,T,N,B), V != V1, possVal(F,V1), "
           "possVal(F,V).\n";
    out << "knows(F,V,T,N,B) :- kPosEx(F,V,T,N,B).\n";
    out << "knowsNot(F,V,T,N,B) :- kNotNegEx(F,V,T,N,B).\n";

    out << "\n% sensing and branching\n";
    out << "uBr(0,0).\n";
    out << "sNextBr(N,B1) :- sRes(_,_,N,B1,_).\n";
    out << "uBr(N,B) :- uBr(N-1,B), not sNextBr(N-1,B), s(N).\n";
    out << "1{ sRes(F,V,N,B1,B2) : br(B2) }1 :- occ(A,N,B1), hasKP(A,F), s(N), "
           "possVal(F,V), not knowsNot(F,V,N,N,B1).\n";
    out << ":- 2 <= #count{ V : sRes(F,V,N,B1,B2) }, br(B1), br(B2), s(N), possVal(F,_).\n";
    out << ":- sRes(F,V,N,B1,B2), uBr(N,B2), B1 != B2.\n";
    out << ":- sRes(F,V,N,B1,BC), sRes(F2,V2,N,B2,BC), B1 != B2.\n";
    out << ":- occ(A,N,B), hasKP(A,F), s(N), 0 = #count{ V : sRes(F,V,N,B,B) }.\n";
    out << "uBr(N,B2) :- sRes(F,V,N-1,B1,B2), s(N).\n";
    out << "knows(F,V,N-1,N,B2) :- sRes(F,V,N-1,B1,B2), s(N).\n";
    out << ":- 2 <= #count{ A : occ(A,N,B), hasKP(A,_) }, br(B), s(N).\n";
    out << "knows(F,V,T,N,B2) :- sRes(_,_,N-1,B1,B2), knows(F,V,T,N-1,B1), N >= T, s(N).\n";
    out << "apply(EP,T,N,B2) :- sRes(_,_,N,B1,B2), apply(EP,T,N,B1), N >= T, s(N).\n";

    out << "\n% static causal laws\n";
    out << "hasEP(A,(EP,SCL)) :- hasEP(A,EP), hasEff(EP,FT,VT), sclHasCond(SCL,FT,VT).\n";
    out << "hasEff((EP,SCL),FE,VE) :- hasEP(A,EP), hasEff(EP,FT,VT), "
           "sclHasCond(SCL,FT,VT), sclHasEff(SCL,FE,VE).\n";
    out << "hasCond((EP,SCL),FC,VC) :- hasEff(EP,FT,VT), hasCond(EP,FC,VC), "
           "sclHasCond(SCL,FT,VT).\n";
    out << "hasCond((EP,SCL),FC,VC) :- hasEff(EP,FT,VT), sclHasCond(SCL,FC,VC), "
           "sclHasCond(SCL,FT,VT), (FT,VT) != (FC,VC).\n";
    out << "sclNumKnownCond(SCL,C,T,N,B) :- C = #count{ F,V : knows(F,V,T,N,B), "
           "sclHasCond(SCL,F,V) }, uBr(N,B), s(T), sclHasEff(SCL,_,_), T <= N.\n";
    out << "sclNumCond(SCL,C) :- C = #count{ F,V : sclHasCond(SCL,F,V) }, "
           "sclHasEff(SCL,_,_).\n";
    out << "knows(F,V,T,N,B) :- sclHasEff(SCL,F,V), sclNumKnownCond(SCL,C,T,N,B), "
           "sclNumCond(SCL,C).\n";

    out << "\n% plan verification\n";
    out << "notWG(N,B) :- wGoal(F,V), uBr(N,B), not knows(F,V,N,N,B), possVal(F,V).\n";
    out << "allWGAchieved(N) :- not notWG(N,B), uBr(N,B).\n";
    out << ":- not allWGAchieved(" << S << ").\n";
    out << "notSG(N,B) :- sGoal(F,V), uBr(N,B), not knows(F,V,N,N,B), possVal(F,V).\n";
    out << ":- notSG(" << S << ",B), uBr(" << S << ",B).\n";
    out << "notGoal(N,B) :- notWG(N,B).\n";
    out << "notGoal(N,B) :- notSG(N,B).\n";

    out << "\n% plan generation\n";
    if (concurrent)
        out << "1{ occ(A,N,B) : act(A) } :- uBr(N,B), notWG(N,B), N < " << S << ".\n";
    else
        out << "1{ occ(A,N,B) : act(A) }1 :- uBr(N,B), notGoal(N,B), N < " << S << ".\n";
    return out.str();
}

ProgramText emit_lp(const Domain &d, const EmitConfig &cfg) {
    ProgramText p;
    p.world_part = emit_world(d);
    p.foundational_part = emit_foundational(cfg.max_steps, cfg.max_branches, cfg.concurrent);
    p.max_steps = cfg.max_steps;
    p.max_branches = cfg.max_branches;
    return p;
}

} // namespace hpxf
