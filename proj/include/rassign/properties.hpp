#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/eating.hpp"
#include "rassign/hull.hpp"
#include "rassign/profile.hpp"
#include "rassign/rational.hpp"

namespace rassign {

// Agents j0 -> j1 -> ... -> j0 where each agent prefers the next agent's item to its own.
struct TradingCycle {
    std::vector<AgentIndex> agents;
};

// An assignment that the checked one fails to match (more first choices, a better signature, more popular).
struct BetterAssignment {
    DeterministicAssignment assignment;
    std::size_t checked_score = 0;  // first choices, or votes for the checked assignment
    std::size_t better_score = 0;   // first choices, or votes for the witness
};

// holder keeps item although other ranks it strictly higher and is not served better.
struct RankViolation {
    AgentIndex holder = 0;
    AgentIndex other = 0;
    ItemIndex item = 0;
};

// item sits in tier `tier` but its holder's favourite among the remaining items is `holder_top`.
struct TierViolation {
    ItemIndex item = 0;
    std::size_t tier = 0;  // 1-based
    AgentIndex holder = 0;
    ItemIndex holder_top = 0;
};

struct SignatureDominance {
    DeterministicAssignment assignment;
    std::vector<std::size_t> checked_signature;
    std::vector<std::size_t> better_signature;
};

// Items o0 tau o1 tau ... tau o0; agents[i] prefers items[i] to items[i+1] while holding a share of items[i+1].
struct ItemCycle {
    std::vector<ItemIndex> items;
    std::vector<AgentIndex> agents;
};

// agent holds a share of item that `other` ranks higher while other is not yet saturated at item.
struct UnsatisfiedPriority {
    AgentIndex holder = 0;
    ItemIndex item = 0;
    AgentIndex other = 0;
    Rational cumulative;
};

// Pairwise comparison failing at item.
struct PairViolation {
    AgentIndex agent = 0;
    AgentIndex other = 0;
    ItemIndex item = 0;
    Rational agent_value;
    Rational other_value;
};

struct Infeasibility {
    std::vector<Rational> farkas;  // certificate over the rows of the ex-post program
    std::size_t generators = 0;
};

using Witness = std::variant<TradingCycle, BetterAssignment, RankViolation, TierViolation, SignatureDominance,
                             ItemCycle, EaFeriViolation, UnsatisfiedPriority, PairViolation, Infeasibility>;

struct PropertyVerdict {
    bool holds = true;
    std::optional<Witness> witness;
    std::optional<ConvexDecomposition> certificate;

    static PropertyVerdict pass() { return {}; }
    static PropertyVerdict fail(Witness w) { return {false, std::move(w), std::nullopt}; }
};

struct FeriTiers {
    std::vector<ItemSet> tiers;
};

using RankSignature = std::vector<std::size_t>;

PropertyVerdict is_pe(const DeterministicAssignment& a, const PreferenceProfile& profile);
PropertyVerdict is_fcm(const DeterministicAssignment& a, const PreferenceProfile& profile);
PropertyVerdict is_fhr(const DeterministicAssignment& a, const PreferenceProfile& profile);
std::pair<PropertyVerdict, FeriTiers> is_feri(const DeterministicAssignment& a, const PreferenceProfile& profile);
RankSignature rank_signature(const DeterministicAssignment& a, const PreferenceProfile& profile);
PropertyVerdict is_rm(const DeterministicAssignment& a, const PreferenceProfile& profile, const Budget& budget = {});
// (agents preferring a, agents preferring b)
std::pair<std::size_t, std::size_t> popularity_votes(const DeterministicAssignment& a, const DeterministicAssignment& b,
                                                     const PreferenceProfile& profile);
PropertyVerdict is_pop(const DeterministicAssignment& a, const PreferenceProfile& profile, const Budget& budget = {});

PropertyVerdict is_sd_pe(const RandomAssignment& p, const PreferenceProfile& profile);
PropertyVerdict is_ea_feri(const RandomAssignment& p, const PreferenceProfile& profile);
PropertyVerdict is_ea_fhr(const RandomAssignment& p, const PreferenceProfile& profile);
PropertyVerdict is_sete(const RandomAssignment& p, const PreferenceProfile& profile);
// Linear equalities that say the same as is_sete, for use in polytope queries.
std::vector<EntryConstraint> sete_constraints(const PreferenceProfile& profile);
PropertyVerdict is_sd_ef(const RandomAssignment& p, const PreferenceProfile& profile);
PropertyVerdict is_sd_wef(const RandomAssignment& p, const PreferenceProfile& profile);

enum class DeterministicProperty { pe, fcm, fhr, feri, rm, pop };

std::string_view to_string(DeterministicProperty prop);
std::optional<DeterministicProperty> parse_deterministic_property(std::string_view name);
bool satisfies(DeterministicProperty prop, const DeterministicAssignment& a, const PreferenceProfile& profile,
               const Budget& budget = {});

// Ex-post version of a deterministic property: convex hull membership over all satisfying bijections.
PropertyVerdict is_ep(const RandomAssignment& p, const PreferenceProfile& profile, DeterministicProperty base,
                      const Budget& budget = {});

}  // namespace rassign
