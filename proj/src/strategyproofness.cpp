#include "rassign/strategyproofness.hpp"

#include <algorithm>
#include <numeric>

#include "rassign/errors.hpp"
#include "rassign/lottery.hpp"

namespace rassign {

MechanismHandle::MechanismHandle(MechanismKind kind, Budget budget) : kind_(kind), budget_(budget) {
    if (kind == MechanismKind::pre) throw InputError("pre needs a speed profile; use MechanismHandle::pre");
}

MechanismHandle MechanismHandle::pre(EatingSpeedProfile speeds) {
    MechanismHandle h(MechanismKind::upre);
    h.kind_ = MechanismKind::pre;
    h.speeds_ = std::move(speeds);
    return h;
}

std::optional<MechanismHandle> MechanismHandle::parse(const std::string& id, Budget budget) {
    if (id == "ebm") return MechanismHandle(MechanismKind::ebm, budget);
    if (id == "abm-uniform") return MechanismHandle(MechanismKind::abm_uniform, budget);
    if (id == "bm-uniform") return MechanismHandle(MechanismKind::bm_uniform, budget);
    if (id == "rp") return MechanismHandle(MechanismKind::rp, budget);
    if (id == "ps") return MechanismHandle(MechanismKind::ps, budget);
    if (id == "upre") return MechanismHandle(MechanismKind::upre, budget);
    return std::nullopt;
}

std::string MechanismHandle::name() const {
    switch (kind_) {
        case MechanismKind::ebm: return "ebm";
        case MechanismKind::abm_uniform: return "abm-uniform";
        case MechanismKind::bm_uniform: return "bm-uniform";
        case MechanismKind::rp: return "rp";
        case MechanismKind::ps: return "ps";
        case MechanismKind::upre: return "upre";
        case MechanismKind::pre: return "pre";
    }
    return "?";
}

RandomAssignment MechanismHandle::operator()(const PreferenceProfile& profile) const {
    switch (kind_) {
        case MechanismKind::ebm: return ebm_expectation(profile, budget_);
        case MechanismKind::abm_uniform:
            return abm_expectation(profile, PriorityDistribution::uniform(profile.size(), budget_));
        case MechanismKind::bm_uniform:
            return bm_expectation(profile, PriorityDistribution::uniform(profile.size(), budget_));
        case MechanismKind::rp: return rp_expectation(profile, budget_);
        case MechanismKind::ps: return ps_run(profile);
        case MechanismKind::upre: return upre_run(profile);
        case MechanismKind::pre:
            if (speeds_->size() != profile.size()) throw InputError("speed profile size does not match profile");
            return pre_run(profile, *speeds_).first;
    }
    throw InputError("unknown mechanism");
}

std::vector<Ranking> enumerate_misreports(const Ranking& ranking) {
    std::vector<Ranking> out;
    for_each_permutation(ranking.size(), [&](std::span<const std::size_t> perm) {
        if (!std::equal(perm.begin(), perm.end(), ranking.order().begin(), ranking.order().end()))
            out.emplace_back(std::vector<ItemIndex>(perm.begin(), perm.end()));
        return true;
    });
    return out;
}

namespace {

template <typename Violates>
std::optional<Deviation> search(const MechanismHandle& mech, const PreferenceProfile& profile, Violates violates) {
    require_factorial_budget(profile.size(), mech.budget(), "misreport search");
    const RandomAssignment truthful = mech(profile);
    for (AgentIndex j = 0; j < profile.size(); ++j) {
        const Ranking& truth = profile.ranking(j);
        std::optional<Deviation> found;
        for_each_permutation(profile.size(), [&](std::span<const std::size_t> perm) {
            if (std::equal(perm.begin(), perm.end(), truth.order().begin(), truth.order().end())) return true;
            Ranking lie(std::vector<ItemIndex>(perm.begin(), perm.end()));
            RandomAssignment deviating = mech(profile.with_ranking(j, lie));
            if (!violates(truthful.row(j), deviating.row(j), truth)) return true;
            found = Deviation{j, truth, std::move(lie),
                              std::vector<Rational>(truthful.row(j).begin(), truthful.row(j).end()),
                              std::vector<Rational>(deviating.row(j).begin(), deviating.row(j).end())};
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Deviation> find_sd_wsp_violation(const MechanismHandle& mech, const PreferenceProfile& profile) {
    return search(mech, profile, [](std::span<const Rational> truthful, std::span<const Rational> deviating,
                                    const Ranking& truth) {
        return sd_dominates(deviating, truthful, truth) &&
               !std::equal(truthful.begin(), truthful.end(), deviating.begin(), deviating.end());
    });
}

std::optional<Deviation> find_sd_sp_violation(const MechanismHandle& mech, const PreferenceProfile& profile) {
    return search(mech, profile, [](std::span<const Rational> truthful, std::span<const Rational> deviating,
                                    const Ranking& truth) { return !sd_dominates(truthful, deviating, truth); });
}

}  // namespace rassign
