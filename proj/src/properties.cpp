#include "rassign/properties.hpp"

#include <algorithm>
#include <stdexcept>

#include "rassign/errors.hpp"
#include "rassign/hull.hpp"

namespace rassign {

namespace {

void require_sizes(std::size_t assignment_size, const PreferenceProfile& profile) {
    if (assignment_size != profile.size()) throw InputError("assignment size does not match profile");
}

// Finds a directed cycle; edge(u, v) says whether u -> v. Returns vertices in cycle order.
template <typename Edge>
std::optional<std::vector<std::size_t>> find_cycle(std::size_t n, Edge edge) {
    enum class Mark { fresh, open, done };
    std::vector<Mark> mark(n, Mark::fresh);
    std::vector<std::size_t> parent(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (mark[root] != Mark::fresh) continue;
        // Iterative DFS keeping the next neighbour to try per open vertex.
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        mark[root] = Mark::open;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next == n) {
                mark[u] = Mark::done;
                stack.pop_back();
                continue;
            }
            std::size_t v = next++;
            if (!edge(u, v)) continue;
            if (mark[v] == Mark::open) {
                std::vector<std::size_t> cycle;
                for (std::size_t w = u; w != v; w = parent[w]) cycle.push_back(w);
                cycle.push_back(v);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (mark[v] == Mark::fresh) {
                mark[v] = Mark::open;
                parent[v] = u;
                stack.emplace_back(v, 0);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

PropertyVerdict is_pe(const DeterministicAssignment& a, const PreferenceProfile& profile) {
    require_sizes(a.size(), profile);
    auto cycle = find_cycle(profile.size(), [&](std::size_t j, std::size_t k) {
        return j != k && profile.ranking(j).prefers(a.item_of(k), a.item_of(j));
    });
    if (!cycle) return PropertyVerdict::pass();
    return PropertyVerdict::fail(TradingCycle{*cycle});
}

PropertyVerdict is_fcm(const DeterministicAssignment& a, const PreferenceProfile& profile) {
    require_sizes(a.size(), profile);
    const std::size_t n = profile.size();
    std::vector<std::optional<AgentIndex>> first_fan(n);
    std::size_t at_top = 0;
    for (AgentIndex j = 0; j < n; ++j) {
        ItemIndex top = profile.ranking(j).top();
        if (!first_fan[top]) first_fan[top] = j;
        if (a.item_of(j) == top) ++at_top;
    }
    std::size_t distinct = static_cast<std::size_t>(std::count_if(
        first_fan.begin(), first_fan.end(), [](const auto& f) { return f.has_value(); }));
    if (at_top == distinct) return PropertyVerdict::pass();

    std::vector<std::optional<ItemIndex>> item_of(n);
    ItemSet used;
    for (ItemIndex o = 0; o < n; ++o)
        if (first_fan[o]) {
            item_of[*first_fan[o]] = o;
            used.insert(o);
        }
    std::vector<ItemIndex> rest = ItemSet::full(n).minus(used).members();
    std::size_t next = 0;
    std::vector<ItemIndex> full(n);
    for (AgentIndex j = 0; j < n; ++j) full[j] = item_of[j] ? *item_of[j] : rest[next++];
    return PropertyVerdict::fail(BetterAssignment{DeterministicAssignment(std::move(full)), at_top, distinct});
}

PropertyVerdict is_fhr(const DeterministicAssignment& a, const PreferenceProfile& profile) {
    require_sizes(a.size(), profile);
    const std::size_t n = profile.size();
    for (AgentIndex j = 0; j < n; ++j) {
        ItemIndex o = a.item_of(j);
        for (AgentIndex k = 0; k < n; ++k) {
            const Ranking& rk = profile.ranking(k);
            if (rk.rank_of(o) < profile.ranking(j).rank_of(o) && rk.prefers(o, a.item_of(k)))
                return PropertyVerdict::fail(RankViolation{j, k, o});
        }
    }
    return PropertyVerdict::pass();
}

std::pair<PropertyVerdict, FeriTiers> is_feri(const DeterministicAssignment& a, const PreferenceProfile& profile) {
    require_sizes(a.size(), profile);
    const std::size_t n = profile.size();
    FeriTiers tiers;
    std::optional<TierViolation> violation;
    ItemSet removed;
    while (removed != ItemSet::full(n)) {
        ItemSet left = ItemSet::full(n).minus(removed);
        ItemSet tier;
        for (AgentIndex j = 0; j < n; ++j)
            if (!removed.contains(a.item_of(j))) tier.insert(top_among(profile.ranking(j), left));
        for (ItemIndex o : tier.members()) {
            AgentIndex holder = a.holder_of(o);
            ItemIndex holder_top = top_among(profile.ranking(holder), left);
            if (holder_top != o && !violation)
                violation = TierViolation{o, tiers.tiers.size() + 1, holder, holder_top};
        }
        tiers.tiers.push_back(tier);
        removed = removed | tier;
    }
    if (violation) return {PropertyVerdict::fail(*violation), std::move(tiers)};
    return {PropertyVerdict::pass(), std::move(tiers)};
}

RankSignature rank_signature(const DeterministicAssignment& a, const PreferenceProfile& profile) {
    require_sizes(a.size(), profile);
    RankSignature sig(profile.size(), 0);
    for (AgentIndex j = 0; j < profile.size(); ++j) ++sig[profile.ranking(j).rank_of(a.item_of(j)) - 1];
    return sig;
}

PropertyVerdict is_rm(const DeterministicAssignment& a, const PreferenceProfile& profile, const Budget& budget) {
    require_sizes(a.size(), profile);
    require_factorial_budget(profile.size(), budget, "rank-maximality check");
    RankSignature mine = rank_signature(a, profile);
    std::optional<DeterministicAssignment> best;
    RankSignature best_sig = mine;
    for_each_permutation(profile.size(), [&](std::span<const std::size_t> perm) {
        DeterministicAssignment candidate(std::vector<ItemIndex>(perm.begin(), perm.end()));
        RankSignature sig = rank_signature(candidate, profile);
        if (sig > best_sig) {
            best_sig = std::move(sig);
            best = std::move(candidate);
        }
        return true;
    });
    if (!best) return PropertyVerdict::pass();
    return PropertyVerdict::fail(SignatureDominance{*best, mine, best_sig});
}

std::pair<std::size_t, std::size_t> popularity_votes(const DeterministicAssignment& a, const DeterministicAssignment& b,
                                                     const PreferenceProfile& profile) {
    std::size_t for_a = 0, for_b = 0;
    for (AgentIndex j = 0; j < profile.size(); ++j) {
        const Ranking& r = profile.ranking(j);
        if (r.prefers(a.item_of(j), b.item_of(j))) ++for_a;
        if (r.prefers(b.item_of(j), a.item_of(j))) ++for_b;
    }
    return {for_a, for_b};
}

PropertyVerdict is_pop(const DeterministicAssignment& a, const PreferenceProfile& profile, const Budget& budget) {
    require_sizes(a.size(), profile);
    const std::size_t n = profile.size();
    ItemSet firsts;
    for (AgentIndex j = 0; j < n; ++j) firsts.insert(profile.ranking(j).top());
    ItemSet others = ItemSet::full(n).minus(firsts);
    bool characterized = true;
    for (AgentIndex j = 0; j < n && characterized; ++j) {
        const Ranking& r = profile.ranking(j);
        ItemIndex held = a.item_of(j);
        bool ok = held == r.top() || (!others.empty() && held == top_among(r, others));
        characterized = ok;
    }
    if (characterized) return PropertyVerdict::pass();

    require_factorial_budget(n, budget, "popularity witness search");
    std::optional<PropertyVerdict> verdict;
    for_each_permutation(n, [&](std::span<const std::size_t> perm) {
        DeterministicAssignment candidate(std::vector<ItemIndex>(perm.begin(), perm.end()));
        auto [for_a, for_candidate] = popularity_votes(a, candidate, profile);
        if (for_candidate > for_a) {
            verdict = PropertyVerdict::fail(BetterAssignment{candidate, for_a, for_candidate});
            return false;
        }
        return true;
    });
    if (!verdict) throw std::logic_error("popularity characterization disagrees with brute force");
    return *verdict;
}

PropertyVerdict is_sd_pe(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    const std::size_t n = profile.size();
    // supporter[a][b]: lowest agent witnessing a tau b
    std::vector<std::vector<std::optional<AgentIndex>>> supporter(n, std::vector<std::optional<AgentIndex>>(n));
    for (AgentIndex j = 0; j < n; ++j) {
        const Ranking& r = profile.ranking(j);
        for (ItemIndex b = 0; b < n; ++b) {
            if (p.at(j, b).sign() <= 0) continue;
            for (std::size_t pos = 0; pos + 1 < r.rank_of(b); ++pos) {
                ItemIndex better = r.at(pos);
                if (!supporter[better][b]) supporter[better][b] = j;
            }
        }
    }
    auto cycle = find_cycle(n, [&](std::size_t x, std::size_t y) { return supporter[x][y].has_value(); });
    if (!cycle) return PropertyVerdict::pass();
    ItemCycle witness{*cycle, {}};
    for (std::size_t i = 0; i < cycle->size(); ++i)
        witness.agents.push_back(*supporter[(*cycle)[i]][(*cycle)[(i + 1) % cycle->size()]]);
    return PropertyVerdict::fail(std::move(witness));
}

PropertyVerdict is_ea_feri(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    if (auto v = find_ea_feri_violation(p, profile)) return PropertyVerdict::fail(*v);
    return PropertyVerdict::pass();
}

PropertyVerdict is_ea_fhr(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    const std::size_t n = profile.size();
    for (AgentIndex j = 0; j < n; ++j)
        for (ItemIndex o = 0; o < n; ++o) {
            if (p.at(j, o).sign() <= 0) continue;
            for (AgentIndex k = 0; k < n; ++k) {
                if (profile.ranking(k).rank_of(o) >= profile.ranking(j).rank_of(o)) continue;
                Rational c = cumulative_share(p.row(k), profile.ranking(k), o);
                if (!c.is_one()) return PropertyVerdict::fail(UnsatisfiedPriority{j, o, k, c});
            }
        }
    return PropertyVerdict::pass();
}

PropertyVerdict is_sete(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    const std::size_t n = profile.size();
    for (AgentIndex j = 0; j < n; ++j)
        for (AgentIndex k = j + 1; k < n; ++k)
            for (ItemIndex o : common_prefix(profile.ranking(j), profile.ranking(k)))
                if (p.at(j, o) != p.at(k, o))
                    return PropertyVerdict::fail(PairViolation{j, k, o, p.at(j, o), p.at(k, o)});
    return PropertyVerdict::pass();
}

std::vector<EntryConstraint> sete_constraints(const PreferenceProfile& profile) {
    std::vector<EntryConstraint> out;
    for (AgentIndex j = 0; j < profile.size(); ++j)
        for (AgentIndex k = j + 1; k < profile.size(); ++k)
            for (ItemIndex o : common_prefix(profile.ranking(j), profile.ranking(k)))
                out.push_back(equal_entries(j, k, o));
    return out;
}

PropertyVerdict is_sd_ef(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    const std::size_t n = profile.size();
    for (AgentIndex j = 0; j < n; ++j)
        for (AgentIndex k = 0; k < n; ++k) {
            if (j == k) continue;
            Rational mine, theirs;
            for (ItemIndex o : profile.ranking(j).order()) {
                mine += p.at(j, o);
                theirs += p.at(k, o);
                if (mine < theirs) return PropertyVerdict::fail(PairViolation{j, k, o, mine, theirs});
            }
        }
    return PropertyVerdict::pass();
}

PropertyVerdict is_sd_wef(const RandomAssignment& p, const PreferenceProfile& profile) {
    require_sizes(p.size(), profile);
    const std::size_t n = profile.size();
    for (AgentIndex j = 0; j < n; ++j)
        for (AgentIndex k = 0; k < n; ++k) {
            if (j == k) continue;
            const Ranking& r = profile.ranking(j);
            if (!sd_dominates(p.row(k), p.row(j), r)) continue;
            Rational mine, theirs;
            for (ItemIndex o : r.order()) {
                mine += p.at(j, o);
                theirs += p.at(k, o);
                if (theirs > mine) return PropertyVerdict::fail(PairViolation{j, k, o, mine, theirs});
            }
        }
    return PropertyVerdict::pass();
}

std::string_view to_string(DeterministicProperty prop) {
    switch (prop) {
        case DeterministicProperty::pe: return "pe";
        case DeterministicProperty::fcm: return "fcm";
        case DeterministicProperty::fhr: return "fhr";
        case DeterministicProperty::feri: return "feri";
        case DeterministicProperty::rm: return "rm";
        case DeterministicProperty::pop: return "pop";
    }
    return "?";
}

std::optional<DeterministicProperty> parse_deterministic_property(std::string_view name) {
    for (auto prop : {DeterministicProperty::pe, DeterministicProperty::fcm, DeterministicProperty::fhr,
                      DeterministicProperty::feri, DeterministicProperty::rm, DeterministicProperty::pop})
        if (to_string(prop) == name) return prop;
    return std::nullopt;
}

bool satisfies(DeterministicProperty prop, const DeterministicAssignment& a, const PreferenceProfile& profile,
               const Budget& budget) {
    switch (prop) {
        case DeterministicProperty::pe: return is_pe(a, profile).holds;
        case DeterministicProperty::fcm: return is_fcm(a, profile).holds;
        case DeterministicProperty::fhr: return is_fhr(a, profile).holds;
        case DeterministicProperty::feri: return is_feri(a, profile).first.holds;
        case DeterministicProperty::rm: return is_rm(a, profile, budget).holds;
        case DeterministicProperty::pop: return is_pop(a, profile, budget).holds;
    }
    return false;
}

PropertyVerdict is_ep(const RandomAssignment& p, const PreferenceProfile& profile, DeterministicProperty base,
                      const Budget& budget) {
    require_sizes(p.size(), profile);
    validate_doubly_stochastic(p);
    if (base == DeterministicProperty::pop)
        throw InputError("ex-post popularity is not supported");
    require_factorial_budget(profile.size(), budget, "ex-post check");
    std::vector<DeterministicAssignment> generators;
    // Rank-maximal bijections share one signature, so filter once instead of re-running the brute force.
    std::optional<RankSignature> best;
    for_each_permutation(profile.size(), [&](std::span<const std::size_t> perm) {
        DeterministicAssignment a(std::vector<ItemIndex>(perm.begin(), perm.end()));
        if (base == DeterministicProperty::rm) {
            RankSignature sig = rank_signature(a, profile);
            if (!best || sig > *best) {
                best = sig;
                generators.clear();
            }
            if (sig == *best) generators.push_back(std::move(a));
        } else if (satisfies(base, a, profile, budget)) {
            generators.push_back(std::move(a));
        }
        return true;
    });
    HullResult hull = hull_membership(p, generators);
    if (hull.decomposition) {
        PropertyVerdict v;
        v.certificate = std::move(hull.decomposition);
        return v;
    }
    return PropertyVerdict::fail(Infeasibility{std::move(hull.farkas), generators.size()});
}

}  // namespace rassign
