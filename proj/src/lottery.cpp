#include "rassign/lottery.hpp"

#include <optional>
#include <random>

#include "rassign/errors.hpp"

namespace rassign {

namespace {

std::vector<AgentSet> applicant_sets(const PreferenceProfile& profile, ItemSet remaining, AgentSet active) {
    std::vector<AgentSet> applicants(profile.size());
    for (AgentIndex j : active.members()) applicants[top_among(profile.ranking(j), remaining)].insert(j);
    return applicants;
}

RoundRecord open_round(const PreferenceProfile& profile, ItemSet remaining, AgentSet active) {
    return RoundRecord{remaining, active, applicant_sets(profile, remaining, active), {}};
}

// Runs adaptive rounds, resolving each applicant set with pick(item, applicants).
template <typename Pick>
std::pair<DeterministicAssignment, WorldTrace> run_adaptive(const PreferenceProfile& profile, Pick pick) {
    const std::size_t n = profile.size();
    ItemSet remaining = ItemSet::full(n);
    AgentSet active = AgentSet::full(n);
    std::vector<ItemIndex> item_of(n);
    WorldTrace trace;
    while (!remaining.empty()) {
        RoundRecord round = open_round(profile, remaining, active);
        for (ItemIndex o = 0; o < n; ++o) {
            const AgentSet& applicants = round.applicants[o];
            if (applicants.empty()) continue;
            AgentIndex winner = pick(o, applicants);
            if (applicants.size() > 1) trace.probability *= Rational(1, static_cast<std::int64_t>(applicants.size()));
            round.winners.emplace_back(o, winner);
        }
        for (auto [o, j] : round.winners) {
            item_of[j] = o;
            remaining.erase(o);
            active.erase(j);
        }
        trace.rounds.push_back(std::move(round));
    }
    return {DeterministicAssignment(std::move(item_of)), std::move(trace)};
}

class WorldEnumerator {
public:
    WorldEnumerator(const PreferenceProfile& profile,
                    const std::function<void(const DeterministicAssignment&, const WorldTrace&)>& visit,
                    const Budget& budget)
        : profile_(profile), visit_(visit), budget_(budget), item_of_(profile.size()) {}

    void run() { start_round(ItemSet::full(profile_.size()), AgentSet::full(profile_.size())); }

private:
    void count_node() {
        if (++nodes_ > budget_.max_world_nodes)
            throw ResourceError("world tree exceeds the bound of " + std::to_string(budget_.max_world_nodes) +
                                " nodes");
    }

    void start_round(ItemSet remaining, AgentSet active) {
        count_node();
        if (remaining.empty()) {
            visit_(DeterministicAssignment(item_of_), trace_);
            return;
        }
        trace_.rounds.push_back(open_round(profile_, remaining, active));
        std::vector<ItemIndex> contested;
        for (ItemIndex o = 0; o < profile_.size(); ++o)
            if (!trace_.rounds.back().applicants[o].empty()) contested.push_back(o);
        choose(contested, 0, remaining, active);
        trace_.rounds.pop_back();
    }

    void choose(const std::vector<ItemIndex>& contested, std::size_t k, ItemSet remaining, AgentSet active) {
        if (k == contested.size()) {
            start_round(remaining, active);
            return;
        }
        ItemIndex o = contested[k];
        AgentSet applicants = trace_.rounds.back().applicants[o];
        Rational share(1, static_cast<std::int64_t>(applicants.size()));
        Rational saved = trace_.probability;
        for (AgentIndex j : applicants.members()) {
            if (applicants.size() > 1) count_node();
            trace_.rounds.back().winners.emplace_back(o, j);
            trace_.probability = saved * share;
            item_of_[j] = o;
            ItemSet r = remaining;
            AgentSet a = active;
            r.erase(o);
            a.erase(j);
            choose(contested, k + 1, r, a);
            trace_.rounds.back().winners.pop_back();
        }
        trace_.probability = saved;
    }

    const PreferenceProfile& profile_;
    const std::function<void(const DeterministicAssignment&, const WorldTrace&)>& visit_;
    Budget budget_;
    std::vector<ItemIndex> item_of_;
    WorldTrace trace_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::pair<DeterministicAssignment, WorldTrace> ebm_sample(const PreferenceProfile& profile, LotterySeed seed) {
    std::mt19937_64 rng(seed.value);
    return run_adaptive(profile, [&](ItemIndex, AgentSet applicants) {
        std::vector<AgentIndex> sorted = applicants.members();
        if (sorted.size() == 1) return sorted.front();
        return sorted[rng() % sorted.size()];
    });
}

void for_each_ebm_world(const PreferenceProfile& profile,
                        const std::function<void(const DeterministicAssignment&, const WorldTrace&)>& visit,
                        const Budget& budget) {
    WorldEnumerator(profile, visit, budget).run();
}

EbmExpectation ebm_expectation_detail(const PreferenceProfile& profile, const Budget& budget) {
    EbmExpectation out{RandomAssignment(profile.size()), Rational(), 0};
    for_each_ebm_world(
        profile,
        [&](const DeterministicAssignment& a, const WorldTrace& w) {
            out.assignment.add_scaled(a, w.probability);
            out.total_probability += w.probability;
            ++out.worlds;
        },
        budget);
    return out;
}

RandomAssignment ebm_expectation(const PreferenceProfile& profile, const Budget& budget) {
    return ebm_expectation_detail(profile, budget).assignment;
}

DeterministicAssignment abm_run(const PreferenceProfile& profile, const PriorityOrder& priority) {
    if (priority.size() != profile.size()) throw InputError("priority size does not match profile");
    return run_adaptive(profile,
                        [&](ItemIndex, AgentSet applicants) {
                            std::vector<AgentIndex> members = applicants.members();
                            AgentIndex best = members.front();
                            for (AgentIndex j : members)
                                if (priority.ranks_higher(j, best)) best = j;
                            return best;
                        })
        .first;
}

namespace {

template <typename Run>
RandomAssignment expectation_over(const PreferenceProfile& profile, const PriorityDistribution& dist, Run run) {
    RandomAssignment out(profile.size());
    for (const auto& [order, weight] : dist.weights())
        if (weight.sign() > 0) out.add_scaled(run(profile, order), weight);
    return out;
}

}  // namespace

RandomAssignment abm_expectation(const PreferenceProfile& profile, const PriorityDistribution& dist) {
    return expectation_over(profile, dist, abm_run);
}

DeterministicAssignment bm_run(const PreferenceProfile& profile, const PriorityOrder& priority) {
    const std::size_t n = profile.size();
    if (priority.size() != n) throw InputError("priority size does not match profile");
    std::vector<ItemIndex> item_of(n);
    ItemSet taken;
    AgentSet assigned;
    for (std::size_t round = 0; round < n; ++round) {
        // Highest-priority applicant per target item this round.
        std::vector<std::optional<AgentIndex>> best(n);
        for (AgentIndex j = 0; j < n; ++j) {
            if (assigned.contains(j)) continue;
            ItemIndex target = profile.ranking(j).at(round);
            if (taken.contains(target)) continue;
            if (!best[target] || priority.ranks_higher(j, *best[target])) best[target] = j;
        }
        for (ItemIndex o = 0; o < n; ++o) {
            if (!best[o]) continue;
            item_of[*best[o]] = o;
            taken.insert(o);
            assigned.insert(*best[o]);
        }
    }
    return DeterministicAssignment(std::move(item_of));
}

RandomAssignment bm_expectation(const PreferenceProfile& profile, const PriorityDistribution& dist) {
    return expectation_over(profile, dist, bm_run);
}

DeterministicAssignment rp_run(const PreferenceProfile& profile, const PriorityOrder& priority) {
    const std::size_t n = profile.size();
    if (priority.size() != n) throw InputError("priority size does not match profile");
    std::vector<ItemIndex> item_of(n);
    ItemSet remaining = ItemSet::full(n);
    for (AgentIndex j : priority.order()) {
        item_of[j] = top_among(profile.ranking(j), remaining);
        remaining.erase(item_of[j]);
    }
    return DeterministicAssignment(std::move(item_of));
}

RandomAssignment rp_expectation(const PreferenceProfile& profile, const Budget& budget) {
    require_factorial_budget(profile.size(), budget, "rp_expectation");
    return expectation_over(profile, PriorityDistribution::uniform(profile.size(), budget), rp_run);
}

}  // namespace rassign
