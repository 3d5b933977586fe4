#include "rassign/oracles.hpp"

#include <sstream>

#include "rassign/errors.hpp"
#include "rassign/lottery.hpp"

namespace rassign {

AssignmentSet enumerate_assignments(const PreferenceProfile& profile, const Budget& budget) {
    require_factorial_budget(profile.size(), budget, "assignment enumeration");
    AssignmentSet out;
    for_each_permutation(profile.size(), [&](std::span<const std::size_t> perm) {
        out.members.emplace(std::vector<ItemIndex>(perm.begin(), perm.end()));
        return true;
    });
    return out;
}

AssignmentSet enumerate_satisfying(const PreferenceProfile& profile, DeterministicProperty prop, const Budget& budget) {
    AssignmentSet all = enumerate_assignments(profile, budget);
    AssignmentSet out;
    out.generator = AssignmentSet::Generator::property_filtered;
    if (prop == DeterministicProperty::rm) {
        RankSignature best;
        for (const auto& a : all.members) best = std::max(best, rank_signature(a, profile));
        for (const auto& a : all.members)
            if (rank_signature(a, profile) == best) out.members.insert(a);
        return out;
    }
    for (const auto& a : all.members)
        if (satisfies(prop, a, profile, budget)) out.members.insert(a);
    return out;
}

AssignmentSet abm_image(const PreferenceProfile& profile, const Budget& budget) {
    require_factorial_budget(profile.size(), budget, "priority enumeration");
    AssignmentSet out;
    out.generator = AssignmentSet::Generator::abm_image;
    for_each_permutation(profile.size(), [&](std::span<const std::size_t> perm) {
        out.members.insert(abm_run(profile, PriorityOrder(std::vector<AgentIndex>(perm.begin(), perm.end()))));
        return true;
    });
    return out;
}

PropertyVerdict verify_abm_characterization(const PreferenceProfile& profile, const Budget& budget) {
    AssignmentSet image = abm_image(profile, budget);
    AssignmentSet feri = enumerate_satisfying(profile, DeterministicProperty::feri, budget);
    for (const auto& a : image.members)
        if (!feri.members.contains(a)) return PropertyVerdict::fail(BetterAssignment{a, 0, 0});
    for (const auto& a : feri.members)
        if (!image.members.contains(a)) return PropertyVerdict::fail(BetterAssignment{a, 0, 0});
    return PropertyVerdict::pass();
}

std::optional<ConvexDecomposition> exact_feasibility(const RandomAssignment& target, const AssignmentSet& generators) {
    std::vector<DeterministicAssignment> list = generators.as_vector();
    return hull_membership(target, list).decomposition;
}

namespace {

class RestrictedFeriSearch {
public:
    RestrictedFeriSearch(const PreferenceProfile& profile, const std::vector<ItemSet>& allowed, const Budget& budget)
        : profile_(profile), allowed_(allowed), budget_(budget), item_of_(profile.size()) {}

    AssignmentSet run() {
        round(ItemSet::full(profile_.size()), AgentSet::full(profile_.size()));
        out_.generator = AssignmentSet::Generator::support_restricted;
        return std::move(out_);
    }

private:
    void round(ItemSet remaining, AgentSet active) {
        if (++nodes_ > budget_.max_world_nodes)
            throw ResourceError("restricted search exceeds the bound of " + std::to_string(budget_.max_world_nodes) +
                                " nodes");
        if (remaining.empty()) {
            out_.members.emplace(item_of_);
            return;
        }
        std::vector<std::pair<ItemIndex, std::vector<AgentIndex>>> contests;
        std::vector<AgentSet> applicants(profile_.size());
        for (AgentIndex j : active.members()) applicants[top_among(profile_.ranking(j), remaining)].insert(j);
        for (ItemIndex o = 0; o < profile_.size(); ++o) {
            if (applicants[o].empty()) continue;
            std::vector<AgentIndex> eligible;
            for (AgentIndex j : applicants[o].members())
                if (allowed_[j].contains(o)) eligible.push_back(j);
            if (eligible.empty()) return;  // whoever wins o breaks the restriction
            contests.emplace_back(o, std::move(eligible));
        }
        choose(contests, 0, remaining, active);
    }

    void choose(const std::vector<std::pair<ItemIndex, std::vector<AgentIndex>>>& contests, std::size_t k,
                ItemSet remaining, AgentSet active) {
        if (k == contests.size()) {
            round(remaining, active);
            return;
        }
        const auto& [o, eligible] = contests[k];
        for (AgentIndex j : eligible) {
            item_of_[j] = o;
            ItemSet r = remaining;
            AgentSet a = active;
            r.erase(o);
            a.erase(j);
            choose(contests, k + 1, r, a);
        }
    }

    const PreferenceProfile& profile_;
    const std::vector<ItemSet>& allowed_;
    Budget budget_;
    std::vector<ItemIndex> item_of_;
    AssignmentSet out_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

AssignmentSet enumerate_feri_within(const PreferenceProfile& profile, const std::vector<ItemSet>& allowed,
                                    const Budget& budget) {
    if (allowed.size() != profile.size()) throw InputError("one allowed item set per agent required");
    return RestrictedFeriSearch(profile, allowed, budget).run();
}

}  // namespace rassign
