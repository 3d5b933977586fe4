#include "rassign/eating.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rassign/errors.hpp"

namespace rassign {

EatingSpeedProfile::EatingSpeedProfile(std::vector<std::vector<SpeedPiece>> pieces) : pieces_(std::move(pieces)) {
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const auto& list = pieces_[j];
        if (list.empty()) throw InputError("agent " + std::to_string(j) + " has no speed pieces");
        Rational cursor;
        Rational total;
        for (const SpeedPiece& piece : list) {
            if (piece.from != cursor || piece.to <= piece.from)
                throw InputError("speed pieces of agent " + std::to_string(j) + " do not partition [0,1]");
            if (piece.rate.sign() < 0) throw InputError("negative eating rate for agent " + std::to_string(j));
            total += piece.rate * (piece.to - piece.from);
            cursor = piece.to;
        }
        if (!cursor.is_one())
            throw InputError("speed pieces of agent " + std::to_string(j) + " do not end at 1");
        if (!total.is_one())
            throw InputError("eating speed of agent " + std::to_string(j) + " integrates to " + total.to_string() +
                             ", expected 1");
    }
}

EatingSpeedProfile EatingSpeedProfile::uniform(std::size_t n) {
    return EatingSpeedProfile(std::vector<std::vector<SpeedPiece>>(n, {SpeedPiece{0, 1, 1}}));
}

Rational EatingSpeedProfile::rate_at(AgentIndex j, const Rational& t) const {
    for (const SpeedPiece& piece : pieces_[j])
        if (piece.from <= t && t < piece.to) return piece.rate;
    return 0;
}

Rational EatingSpeedProfile::integral(AgentIndex j, const Rational& from, const Rational& to) const {
    Rational total;
    for (const SpeedPiece& piece : pieces_[j]) {
        Rational lo = max(from, piece.from);
        Rational hi = min(to, piece.to);
        if (lo < hi && !piece.rate.is_zero()) total += piece.rate * (hi - lo);
    }
    return total;
}

Rational gamma(AgentSet eaters, std::span<const Rational> elapsed, const Rational& supply,
               const EatingSpeedProfile& speeds) {
    if (eaters.empty()) throw InputError("gamma needs at least one eater");
    if (supply.sign() < 0) throw InputError("negative supply");
    const std::vector<AgentIndex> members = eaters.members();
    Rational demand;
    for (AgentIndex k : members) demand += speeds.integral(k, elapsed[k], 1);
    const Rational target = min(supply, demand);
    if (target.is_zero()) return 0;

    // Durations at which some eater's rate may change.
    std::vector<Rational> cuts{Rational(0)};
    for (AgentIndex k : members)
        for (const SpeedPiece& piece : speeds.pieces(k))
            if (piece.to > elapsed[k]) cuts.push_back(piece.to - elapsed[k]);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rational eaten;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational slope;
        for (AgentIndex k : members) slope += speeds.rate_at(k, elapsed[k] + cuts[i]);
        if (slope.is_zero()) continue;
        Rational next = eaten + slope * (cuts[i + 1] - cuts[i]);
        if (next >= target) return cuts[i] + (target - eaten) / slope;
        eaten = std::move(next);
    }
    throw std::logic_error("gamma: consumption never reaches its target");
}

std::pair<RandomAssignment, EatingState> pre_run(const PreferenceProfile& profile, const EatingSpeedProfile& speeds) {
    const std::size_t n = profile.size();
    if (speeds.size() != n) throw InputError("speed profile size does not match profile");
    RandomAssignment p(n);
    EatingState state{std::vector<Rational>(n, Rational(1)), std::vector<Rational>(n), {}};
    ItemSet remaining = ItemSet::full(n);
    for (std::size_t round = 1; !remaining.empty(); ++round) {
        std::vector<AgentSet> eaters(n);
        for (AgentIndex j = 0; j < n; ++j)
            if (speeds.integral(j, state.elapsed[j], 1).sign() > 0)
                eaters[top_among(profile.ranking(j), remaining)].insert(j);
        bool progressed = false;
        for (ItemIndex o : remaining.members()) {
            if (eaters[o].empty()) continue;
            progressed = true;
            Rational rho = gamma(eaters[o], state.elapsed, state.supplies[o], speeds);
            ConsumptionRecord record{round, o, eaters[o], rho, {}};
            for (AgentIndex j : eaters[o].members()) {
                Rational amount = speeds.integral(j, state.elapsed[j], state.elapsed[j] + rho);
                p.at(j, o) += amount;
                state.supplies[o] -= amount;
                state.elapsed[j] = min(Rational(1), state.elapsed[j] + rho);
                record.consumed.emplace_back(j, std::move(amount));
            }
            state.log.push_back(std::move(record));
        }
        if (!progressed) throw std::logic_error("pre_run: supply left but no agent can eat");
        for (ItemIndex o : remaining.members())
            if (state.supplies[o].is_zero()) remaining.erase(o);
    }
    return {std::move(p), std::move(state)};
}

RandomAssignment upre_run(const PreferenceProfile& profile) {
    return pre_run(profile, EatingSpeedProfile::uniform(profile.size())).first;
}

RandomAssignment ps_run(const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    RandomAssignment p(n);
    std::vector<Rational> supply(n, Rational(1));
    ItemSet available = ItemSet::full(n);
    Rational now;
    while (now < 1) {
        std::vector<ItemIndex> target(n);
        std::vector<std::int64_t> eaters(n, 0);
        for (AgentIndex j = 0; j < n; ++j) {
            target[j] = top_among(profile.ranking(j), available);
            ++eaters[target[j]];
        }
        Rational step = Rational(1) - now;
        for (ItemIndex o : available.members())
            if (eaters[o] > 0) step = min(step, supply[o] / eaters[o]);
        for (AgentIndex j = 0; j < n; ++j) {
            p.at(j, target[j]) += step;
            supply[target[j]] -= step;
        }
        now += step;
        for (ItemIndex o : available.members())
            if (supply[o].is_zero()) available.erase(o);
    }
    return p;
}

EaFeriTrace ea_feri_trace(const RandomAssignment& p, const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    if (p.size() != n) throw InputError("assignment size does not match profile");
    EaFeriTrace trace;
    std::vector<AgentSet> earlier(n);  // agents eager for the item in some previous round
    ItemSet remaining = ItemSet::full(n);
    std::vector<ItemIndex> previous_top;
    while (!remaining.empty()) {
        EaFeriRound round{remaining, std::vector<AgentSet>(n), std::vector<Rational>(n), std::vector<Rational>(n)};
        for (ItemIndex o = 0; o < n; ++o) {
            Rational taken;
            for (AgentIndex k : earlier[o].members()) taken += p.at(k, o);
            round.residual_supply[o] = Rational(1) - taken;
        }
        std::vector<ItemIndex> top(n);
        for (AgentIndex j = 0; j < n; ++j) {
            top[j] = top_among(profile.ranking(j), remaining);
            round.eager[top[j]].insert(j);
            round.residual_demand[j] =
                previous_top.empty() ? Rational(1)
                                     : Rational(1) - cumulative_share(p.row(j), profile.ranking(j), previous_top[j]);
        }
        for (ItemIndex o = 0; o < n; ++o) earlier[o] = earlier[o] | round.eager[o];
        trace.rounds.push_back(std::move(round));

        ItemSet next;
        for (ItemIndex o : remaining.members()) {
            Rational taken;
            for (AgentIndex k : earlier[o].members()) taken += p.at(k, o);
            if (taken < 1) next.insert(o);
        }
        if (next == remaining) break;  // fixpoint: later rounds would repeat this one
        remaining = next;
        previous_top = std::move(top);
    }
    return trace;
}

std::optional<EaFeriViolation> find_ea_feri_violation(const RandomAssignment& p, const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    EaFeriTrace trace = ea_feri_trace(p, profile);
    std::vector<AgentSet> earlier(n);
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        const EaFeriRound& round = trace.rounds[r];
        for (ItemIndex o : round.remaining.members())
            for (AgentIndex j : earlier[o].members()) {
                Rational c = cumulative_share(p.row(j), profile.ranking(j), o);
                if (!c.is_one()) return EaFeriViolation{j, o, r + 1, c};
            }
        for (ItemIndex o = 0; o < n; ++o) earlier[o] = earlier[o] | round.eager[o];
    }
    // At a fixpoint the last round repeats forever with its own eager sets counted as earlier.
    if (!trace.rounds.empty()) {
        const EaFeriRound& last = trace.rounds.back();
        for (ItemIndex o : last.remaining.members())
            for (AgentIndex j : earlier[o].members()) {
                Rational c = cumulative_share(p.row(j), profile.ranking(j), o);
                if (!c.is_one()) return EaFeriViolation{j, o, trace.rounds.size() + 1, c};
            }
    }
    return std::nullopt;
}

EatingSpeedProfile recover_speeds(const RandomAssignment& q, const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    validate_doubly_stochastic(q);
    if (auto v = find_ea_feri_violation(q, profile)) {
        std::ostringstream msg;
        msg << "assignment is not ex-ante eagerness respecting: agent " << profile.agent_name(v->agent) << ", item "
            << profile.item_name(v->item) << ", round " << v->round << ", cumulative share " << v->cumulative;
        throw PreconditionError(msg.str());
    }
    EaFeriTrace trace = ea_feri_trace(q, profile);
    const Rational width(1, static_cast<std::int64_t>(n));
    std::vector<std::vector<SpeedPiece>> pieces(n);
    std::vector<ItemSet> seen(n);  // items each agent has already been eager for
    for (std::size_t r = 0; r < n; ++r) {
        Rational from = width * static_cast<std::int64_t>(r);
        Rational to = width * static_cast<std::int64_t>(r + 1);
        for (AgentIndex j = 0; j < n; ++j) {
            Rational rate;
            if (r < trace.rounds.size()) {
                ItemIndex o = top_among(profile.ranking(j), trace.rounds[r].remaining);
                if (!seen[j].contains(o)) {
                    rate = q.at(j, o) * static_cast<std::int64_t>(n);
                    seen[j].insert(o);
                }
            }
            pieces[j].push_back(SpeedPiece{from, to, rate});
        }
    }
    return EatingSpeedProfile(std::move(pieces));
}

}  // namespace rassign
