#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/profile.hpp"

namespace rassign::fixtures {

// Sparse row description: (item id, share) pairs, unspecified entries are zero.
using SparseRow = std::vector<std::pair<std::string, std::string>>;
RandomAssignment table(const PreferenceProfile& profile, const std::vector<SparseRow>& rows);
DeterministicAssignment bijection(const PreferenceProfile& profile, const std::vector<std::string>& item_of);

// Six agents over a..f: two agents with distinct tops and four agents contesting c.
PreferenceProfile running_example();
// Respects eagerness but gives d to agent 6 over the three agents ranking d higher.
DeterministicAssignment running_example_eager();
// Favours higher ranks but hands agent 5 an item that is not its top among the leftovers.
DeterministicAssignment running_example_rank_favoring();
// Beats running_example_eager in a majority vote.
DeterministicAssignment running_example_popular_rival();
RandomAssignment running_example_upre();
RandomAssignment running_example_ps();
// Symmetric among the equal agents, favours higher ranks ex post, yet agent 6 is weakly envious.
RandomAssignment running_example_sete_table();

// Three agents where serial dictatorship can miss a first choice.
PreferenceProfile three_agent();
RandomAssignment three_agent_ps();
DeterministicAssignment three_agent_serial_outcome();
DeterministicAssignment three_agent_first_choice_rival();

// Four agents: three share top a, one wants b.
PreferenceProfile four_agent_envy();
// Same, with agent 3 reporting agent 4's ranking.
PreferenceProfile four_agent_envy_misreport();

// Five agents separating the eager lottery from the uniform adaptive priority.
PreferenceProfile lottery_gap();

// Eight agents where agent 8 gains under uniform eating by promoting e.
PreferenceProfile eight_agent_manipulation();
Ranking eight_agent_misreport(const PreferenceProfile& profile);

// Eighteen agents in three blocks plus a crossover agent x.
PreferenceProfile eighteen_agent();

// Ten agents whose eager-lottery expectation holds an item cycle between x and y.
PreferenceProfile tau_cycle();
DeterministicAssignment tau_cycle_first_outcome();
DeterministicAssignment tau_cycle_second_outcome();

struct NamedProfile {
    std::string name;
    PreferenceProfile profile;
};

struct NamedAssignment {
    std::string name;
    std::string profile;
    RandomAssignment assignment;
};

std::vector<NamedProfile> profile_corpus();
std::vector<NamedAssignment> assignment_corpus();

}  // namespace rassign::fixtures
