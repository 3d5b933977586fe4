#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/profile.hpp"
#include "rassign/rational.hpp"

namespace rassign {

// Constant rate on the half-open interval [from, to).
struct SpeedPiece {
    Rational from;
    Rational to;
    Rational rate;

    friend bool operator==(const SpeedPiece&, const SpeedPiece&) = default;
};

// Piecewise-constant eating speeds, one list of pieces per agent, each partitioning [0, 1].
class EatingSpeedProfile {
public:
    EatingSpeedProfile() = default;
    // Throws InputError unless every agent's pieces partition [0,1], rates are nonnegative and integrate to 1.
    explicit EatingSpeedProfile(std::vector<std::vector<SpeedPiece>> pieces);
    static EatingSpeedProfile uniform(std::size_t n);

    std::size_t size() const { return pieces_.size(); }
    std::span<const SpeedPiece> pieces(AgentIndex j) const { return pieces_[j]; }
    Rational rate_at(AgentIndex j, const Rational& t) const;
    Rational integral(AgentIndex j, const Rational& from, const Rational& to) const;

    friend bool operator==(const EatingSpeedProfile&, const EatingSpeedProfile&) = default;

private:
    std::vector<std::vector<SpeedPiece>> pieces_;
};

struct ConsumptionRecord {
    std::size_t round = 0;  // 1-based
    ItemIndex item = 0;
    AgentSet eaters;
    Rational duration;
    std::vector<std::pair<AgentIndex, Rational>> consumed;
};

struct EatingState {
    std::vector<Rational> supplies;
    std::vector<Rational> elapsed;
    std::vector<ConsumptionRecord> log;
};

// Smallest duration after which the eaters have consumed min(supply, their total remaining demand).
Rational gamma(AgentSet eaters, std::span<const Rational> elapsed, const Rational& supply,
               const EatingSpeedProfile& speeds);

std::pair<RandomAssignment, EatingState> pre_run(const PreferenceProfile& profile, const EatingSpeedProfile& speeds);
RandomAssignment upre_run(const PreferenceProfile& profile);
RandomAssignment ps_run(const PreferenceProfile& profile);

struct EaFeriRound {
    ItemSet remaining;                     // items with positive residual supply
    std::vector<AgentSet> eager;           // by item; empty outside `remaining`
    std::vector<Rational> residual_supply;  // by item
    std::vector<Rational> residual_demand;  // by agent
};

struct EaFeriTrace {
    std::vector<EaFeriRound> rounds;
};

EaFeriTrace ea_feri_trace(const RandomAssignment& p, const PreferenceProfile& profile);

struct EaFeriViolation {
    AgentIndex agent = 0;
    ItemIndex item = 0;
    std::size_t round = 0;  // 1-based round in which the item still has supply
    Rational cumulative;    // the agent's share over its upper contour set at the item, below 1
};

std::optional<EaFeriViolation> find_ea_feri_violation(const RandomAssignment& p, const PreferenceProfile& profile);

// Speeds under which pre_run reproduces q; PreconditionError when q is not ex-ante eagerness respecting.
EatingSpeedProfile recover_speeds(const RandomAssignment& q, const PreferenceProfile& profile);

}  // namespace rassign
