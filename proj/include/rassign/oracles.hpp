#pragma once

#include <optional>
#include <set>
#include <string>

#include "rassign/assignment.hpp"
#include "rassign/hull.hpp"
#include "rassign/profile.hpp"
#include "rassign/properties.hpp"

namespace rassign {

struct AssignmentSet {
    enum class Generator { all, property_filtered, abm_image, support_restricted };

    std::set<DeterministicAssignment> members;
    Generator generator = Generator::all;

    std::vector<DeterministicAssignment> as_vector() const { return {members.begin(), members.end()}; }
};

AssignmentSet enumerate_assignments(const PreferenceProfile& profile, const Budget& budget = {});
AssignmentSet enumerate_satisfying(const PreferenceProfile& profile, DeterministicProperty prop,
                                   const Budget& budget = {});
AssignmentSet abm_image(const PreferenceProfile& profile, const Budget& budget = {});
// Holds iff the priority-image of the adaptive mechanism equals the set of eagerness-respecting bijections.
PropertyVerdict verify_abm_characterization(const PreferenceProfile& profile, const Budget& budget = {});

std::optional<ConvexDecomposition> exact_feasibility(const RandomAssignment& target, const AssignmentSet& generators);

// Every eagerness-respecting bijection A with allowed[j] containing A(j) for all agents j. Explores the
// adaptive lottery tree and cuts any branch that hands an agent a disallowed item, so no full n! scan.
AssignmentSet enumerate_feri_within(const PreferenceProfile& profile, const std::vector<ItemSet>& allowed,
                                    const Budget& budget = {});

}  // namespace rassign
