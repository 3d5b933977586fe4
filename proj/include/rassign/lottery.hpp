#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/profile.hpp"
#include "rassign/rational.hpp"

namespace rassign {

struct RoundRecord {
    ItemSet remaining_items;
    AgentSet active_agents;
    std::vector<AgentSet> applicants;  // indexed by item; empty for items nobody applies to
    std::vector<std::pair<ItemIndex, AgentIndex>> winners;  // (item, winner), items in input order
};

struct WorldTrace {
    std::vector<RoundRecord> rounds;
    Rational probability = 1;
};

struct LotterySeed {
    std::uint64_t value = 0;
};

// One eager-Boston run; lotteries drawn from a seeded std::mt19937_64.
std::pair<DeterministicAssignment, WorldTrace> ebm_sample(const PreferenceProfile& profile, LotterySeed seed);

// Visits every world of the eager-Boston lottery tree in enumeration order.
// Throws ResourceError once more than budget.max_world_nodes tree nodes are expanded.
void for_each_ebm_world(const PreferenceProfile& profile,
                        const std::function<void(const DeterministicAssignment&, const WorldTrace&)>& visit,
                        const Budget& budget = {});

struct EbmExpectation {
    RandomAssignment assignment;
    Rational total_probability;
    std::uint64_t worlds = 0;
};

EbmExpectation ebm_expectation_detail(const PreferenceProfile& profile, const Budget& budget = {});
RandomAssignment ebm_expectation(const PreferenceProfile& profile, const Budget& budget = {});

DeterministicAssignment abm_run(const PreferenceProfile& profile, const PriorityOrder& priority);
RandomAssignment abm_expectation(const PreferenceProfile& profile, const PriorityDistribution& dist);

// Non-adaptive Boston: round r targets the r-th ranked item, taken items waste the round.
DeterministicAssignment bm_run(const PreferenceProfile& profile, const PriorityOrder& priority);
RandomAssignment bm_expectation(const PreferenceProfile& profile, const PriorityDistribution& dist);

// Serial dictatorship under the priority.
DeterministicAssignment rp_run(const PreferenceProfile& profile, const PriorityOrder& priority);
RandomAssignment rp_expectation(const PreferenceProfile& profile, const Budget& budget = {});

}  // namespace rassign
