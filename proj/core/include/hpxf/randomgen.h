#ifndef HPXF_RANDOMGEN_H
#define HPXF_RANDOMGEN_H

#include <cstdint>
#include <random>
#include <vector>

#include "hpxf/compile.h"
#include "hpxf/domain.h"

namespace hpxf {

// Parameters for seeded random reasoning domains, used by the randomized
// property suites and `hpxf oracle-compare --random`.
struct RandomDomainParams {
    int min_fluents = 2;
    int max_fluents = 4;
    int min_values = 2;
    int max_values = 3;
    int min_actions = 1;
    int max_actions = 3;
    int max_eps_per_action = 2;
    int max_conditions = 2;
    int max_scls = 2;
    double sensing_prob = 0.5;
    double init_prob = 0.6;
    double exec_prob = 0.2;
    double goal_prob = 0.4;
};

// Generates a validation-clean domain whose compiled effect set never puts
// two same-effect propositions on one action (rejection sampling, bounded).
Domain random_domain(std::mt19937_64 &rng, const RandomDomainParams &params);

// A linear plan: one action per step.
std::vector<std::vector<ActionId>> random_plan(std::mt19937_64 &rng, const Domain &d,
                                               int horizon);

} // namespace hpxf

#endif
