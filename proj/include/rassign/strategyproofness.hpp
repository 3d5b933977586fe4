#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/eating.hpp"
#include "rassign/profile.hpp"

namespace rassign {

struct Deviation {
    AgentIndex agent = 0;
    Ranking truthful;
    Ranking misreport;
    std::vector<Rational> truthful_row;
    std::vector<Rational> deviating_row;
};

enum class MechanismKind { ebm, abm_uniform, bm_uniform, rp, ps, upre, pre };

// A mechanism resolved to its exact expected outcome.
class MechanismHandle {
public:
    explicit MechanismHandle(MechanismKind kind, Budget budget = {});
    static MechanismHandle pre(EatingSpeedProfile speeds);
    // "ebm", "abm-uniform", "bm-uniform", "rp", "ps", "upre"; nullopt otherwise.
    static std::optional<MechanismHandle> parse(const std::string& id, Budget budget = {});

    MechanismKind kind() const { return kind_; }
    const Budget& budget() const { return budget_; }
    std::string name() const;
    RandomAssignment operator()(const PreferenceProfile& profile) const;

private:
    MechanismKind kind_;
    Budget budget_;
    std::optional<EatingSpeedProfile> speeds_;
};

// All n!-1 rankings other than `ranking`, in lexicographic order of item indices.
std::vector<Ranking> enumerate_misreports(const Ranking& ranking);

// First deviation (agents ascending, misreports lexicographic) whose row strictly improves under
// the truthful ranking in the stochastic-dominance sense.
std::optional<Deviation> find_sd_wsp_violation(const MechanismHandle& mech, const PreferenceProfile& profile);
// First deviation whose row is not dominated by the truthful row.
std::optional<Deviation> find_sd_sp_violation(const MechanismHandle& mech, const PreferenceProfile& profile);

}  // namespace rassign
