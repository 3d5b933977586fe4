// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "rassign/audit.hpp"
#include "rassign/eating.hpp"
#include "rassign/fixtures.hpp"
#include "rassign/lottery.hpp"
#include "rassign/oracles.hpp"
#include "rassign/properties.hpp"
#include "rassign/strategyproofness.hpp"

using namespace rassign;

namespace {

// Failed checks are collected as text so a FAIL line says which clause broke.
class Criterion {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& text) { notes_.push_back(text); }
    bool passed() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }
    const std::vector<std::string>& notes() const { return notes_; }

private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

PreferenceProfile numbered_profile(const std::vector<std::vector<std::size_t>>& prefs) {
    std::vector<std::string> agents, items;
    std::vector<Ranking> rankings;
    for (std::size_t j = 0; j < prefs.size(); ++j) {
        agents.push_back(std::to_string(j + 1));
        items.push_back(std::string(1, static_cast<char>('a' + j)));
        rankings.emplace_back(prefs[j]);
    }
    return {agents, items, rankings};
}

std::vector<PreferenceProfile> all_profiles(std::size_t n) {
    std::vector<std::size_t> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));

    std::vector<PreferenceProfile> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<std::vector<std::size_t>> prefs;
        for (std::size_t j = 0; j < n; ++j) prefs.push_back(perms[idx[j]]);
        out.push_back(numbered_profile(prefs));
        std::size_t k = 0;
        while (k < n && ++idx[k] == perms.size()) idx[k++] = 0;
        if (k == n) break;
    }
    return out;
}

PreferenceProfile random_profile(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::vector<std::size_t>> prefs(n, std::vector<std::size_t>(n));
    for (auto& row : prefs) {
        std::iota(row.begin(), row.end(), 0);
        std::shuffle(row.begin(), row.end(), rng);
    }
    return numbered_profile(prefs);
}

// Piecewise-constant speeds on quarters of [0,1] with random nonnegative integer weights.
EatingSpeedProfile random_speeds(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> weight(0, 3);
    std::vector<std::vector<SpeedPiece>> pieces(n);
    for (auto& agent : pieces) {
        std::array<int, 4> w{};
        do
            for (int& x : w) x = weight(rng);
        while (std::accumulate(w.begin(), w.end(), 0) == 0);
        const int total = std::accumulate(w.begin(), w.end(), 0);
        for (int i = 0; i < 4; ++i)
            agent.push_back({Rational(i, 4), Rational(i + 1, 4), Rational(4 * w[static_cast<std::size_t>(i)], total)});
    }
    return EatingSpeedProfile(std::move(pieces));
}

std::string signature_text(const RankSignature& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

Rational entry(const RandomAssignment& p, const PreferenceProfile& profile, const char* agent, const char* item) {
    return p.at(profile.agent_index(agent), profile.item_index(item));
}

void criterion_1(Criterion& c) {
    const auto profile = fixtures::lottery_gap();
    const auto detail = ebm_expectation_detail(profile);
    const Rational v = entry(detail.assignment, profile, "1", "c");
    c.expect(v == Rational(1, 6), "EBM p[1][c] = " + v.to_string() + ", want 1/6");
    c.expect(detail.total_probability.is_one(), "world mass " + detail.total_probability.to_string());
    c.note("p[1][c] = " + v.to_string() + ", worlds = " + std::to_string(detail.worlds));
}

void criterion_2(Criterion& c) {
    const auto profile = fixtures::lottery_gap();
    const auto uniform = PriorityDistribution::uniform(profile.size());
    c.expect(uniform.weights().size() == 120, "priority count " + std::to_string(uniform.weights().size()));
    const auto abm = abm_expectation(profile, uniform);
    const Rational v = entry(abm, profile, "1", "c");
    c.expect(v == Rational(3, 20), "ABM p[1][c] = " + v.to_string() + ", want 3/20");
    c.expect(abm != ebm_expectation(profile), "EBM equals ABM under uniform priorities");
    c.note("p[1][c] = " + v.to_string());
}

void criterion_3(Criterion& c) {
    const auto fig = fixtures::running_example();
    const auto p = upre_run(fig);
    for (const char* j : {"3", "4", "5"}) {
        c.expect(entry(p, fig, j, "c") == Rational(1, 4), std::string("row ") + j + " c");
        c.expect(entry(p, fig, j, "d") == Rational(1, 12), std::string("row ") + j + " d");
        c.expect(entry(p, fig, j, "e") == Rational(1, 3), std::string("row ") + j + " e");
        c.expect(entry(p, fig, j, "f") == Rational(1, 3), std::string("row ") + j + " f");
    }
    c.expect(entry(p, fig, "6", "c") == Rational(1, 4) && entry(p, fig, "6", "d") == Rational(3, 4), "row 6");
    c.expect(entry(p, fig, "1", "a").is_one() && entry(p, fig, "2", "b").is_one(), "rows 1 and 2");
    c.expect(p == fixtures::running_example_upre(), "full table");
}

void criterion_4(Criterion& c) {
    const auto three = fixtures::three_agent();
    const auto p = ps_run(three);
    const std::vector<std::vector<Rational>> want{{Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                                  {Rational(1, 2), 0, Rational(1, 2)},
                                                  {0, Rational(3, 4), Rational(1, 4)}};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t o = 0; o < 3; ++o)
            c.expect(p.at(j, o) == want[j][o], "PS entry " + std::to_string(j + 1) + "," + three.item_name(o));
    c.expect(is_sd_pe(p, three).holds, "PS output not sd-PE");
    const auto v = find_ea_feri_violation(p, three);
    c.expect(v.has_value(), "no ea-FERI violation");
    if (v) {
        c.expect(three.agent_name(v->agent) == "3" && three.item_name(v->item) == "b",
                 "witness (" + three.agent_name(v->agent) + ", " + three.item_name(v->item) + ")");
        c.note("ea-FERI witness (agent 3, item b), cumulative " + v->cumulative.to_string());
    }
}

void criterion_5(Criterion& c) {
    const auto fig = fixtures::running_example();
    const auto eager = fixtures::running_example_eager();
    const auto circled = fixtures::running_example_rank_favoring();
    c.expect(is_feri(eager, fig).first.holds && !is_fhr(eager, fig).holds, "A* should be FERI and not FHR");
    c.expect(is_fhr(circled, fig).holds && !is_feri(circled, fig).first.holds,
             "circled assignment should be FHR and not FERI");

    const auto rm = enumerate_satisfying(fig, DeterministicProperty::rm);
    const RankSignature best = rank_signature(*rm.members.begin(), fig);
    const ItemIndex cc = fig.item_index("c");
    const AgentIndex six = fig.agent_index("6");
    RankSignature alternative;
    for (const auto& a : enumerate_satisfying(fig, DeterministicProperty::fhr).members)
        if (a.item_of(six) != cc) alternative = std::max(alternative, rank_signature(a, fig));
    c.expect(signature_text(best) == "(3,1,1,1,0,0)", "rank-maximal signature " + signature_text(best));
    c.expect(signature_text(alternative) == "(3,1,1,0,0,1)", "alternative signature " + signature_text(alternative));
    c.expect(best > alternative, "signature dominance");
    c.note(signature_text(best) + " > " + signature_text(alternative));
}

void criterion_6(Criterion& c) {
    std::vector<PreferenceProfile> profiles = all_profiles(3);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) profiles.push_back(random_profile(4 + static_cast<std::size_t>(i % 2), rng));
    std::size_t image_mismatch = 0, speed_mismatch = 0;
    for (const auto& profile : profiles) {
        if (abm_image(profile).members != enumerate_satisfying(profile, DeterministicProperty::feri).members)
            ++image_mismatch;
        const auto q = upre_run(profile);
        if (pre_run(profile, recover_speeds(q, profile)).first != q) ++speed_mismatch;
    }
    c.expect(image_mismatch == 0, std::to_string(image_mismatch) + " profiles where ABM image != FERI set");
    c.expect(speed_mismatch == 0, std::to_string(speed_mismatch) + " profiles where recovered speeds fail");
    c.note(std::to_string(profiles.size()) + " profiles");
}

void criterion_7(Criterion& c) {
    std::vector<PreferenceProfile> profiles = all_profiles(3);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60; ++i) profiles.push_back(random_profile(4, rng));
    std::map<std::string, std::size_t> violations;
    for (const char* name : {"FERI=>PE", "FERI=>FCM", "POP=>FERI", "RM=>FHR", "FHR=>FCM", "FHR=>PE", "FERI<=>ea-FERI",
                             "PRE=>ea-FERI", "ea-FERI=>sd-PE"})
        violations[name] = 0;
    std::size_t pre_outputs = 0;
    for (const auto& profile : profiles) {
        for (const auto& a : enumerate_assignments(profile).members) {
            const bool feri = is_feri(a, profile).first.holds;
            const bool fhr = is_fhr(a, profile).holds;
            const bool pe = is_pe(a, profile).holds;
            const bool fcm = is_fcm(a, profile).holds;
            if (feri && !pe) ++violations["FERI=>PE"];
            if (feri && !fcm) ++violations["FERI=>FCM"];
            if (is_pop(a, profile).holds && !feri) ++violations["POP=>FERI"];
            if (is_rm(a, profile).holds && !fhr) ++violations["RM=>FHR"];
            if (fhr && !fcm) ++violations["FHR=>FCM"];
            if (fhr && !pe) ++violations["FHR=>PE"];
            if (feri != is_ea_feri(RandomAssignment(a), profile).holds) ++violations["FERI<=>ea-FERI"];
        }
        std::vector<RandomAssignment> outputs{upre_run(profile)};
        for (int k = 0; k < 4; ++k) outputs.push_back(pre_run(profile, random_speeds(profile.size(), rng)).first);
        for (const auto& p : outputs) {
            ++pre_outputs;
            const bool ea = is_ea_feri(p, profile).holds;
            if (!ea) ++violations["PRE=>ea-FERI"];
            if (ea && !is_sd_pe(p, profile).holds) ++violations["ea-FERI=>sd-PE"];
        }
    }
    for (const auto& [name, count] : violations)
        c.expect(count == 0, name + ": " + std::to_string(count) + " violations");
    c.note(std::to_string(profiles.size()) + " profiles, " + std::to_string(pre_outputs) + " PRE outputs");
}

void criterion_8(Criterion& c) {
    const MechanismHandle ebm(MechanismKind::ebm);
    std::size_t ebm_hits = 0;
    for (const auto& profile : all_profiles(3))
        if (find_sd_wsp_violation(ebm, profile)) ++ebm_hits;
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i)
        if (find_sd_wsp_violation(ebm, random_profile(4, rng))) ++ebm_hits;
    c.expect(ebm_hits == 0, "EBM manipulable on " + std::to_string(ebm_hits) + " profiles");

    const auto eight = fixtures::eight_agent_manipulation();
    const auto found = find_sd_wsp_violation(MechanismHandle(MechanismKind::upre), eight);
    c.expect(found.has_value(), "no UPRE sd-WSP violation on the eight-agent profile");
    if (found) c.note("UPRE search: agent " + eight.agent_name(found->agent));
    const AgentIndex agent = eight.agent_index("8");
    const ItemIndex e = eight.item_index("e");
    const Ranking& truth = eight.ranking(agent);
    const auto before = cumulative_share(upre_run(eight).row(agent), truth, e);
    const auto after =
        cumulative_share(upre_run(eight.with_ranking(agent, fixtures::eight_agent_misreport(eight))).row(agent), truth, e);
    c.expect(before == Rational(5, 6) && after.is_one(),
             "cumulative jump at e " + before.to_string() + " -> " + after.to_string());
    c.note("agent 8 at e: " + before.to_string() + " -> " + after.to_string());

    const MechanismHandle ps(MechanismKind::ps);
    std::optional<Deviation> ps_found;
    std::string where;
    for (const auto& profile : all_profiles(3))
        if (!ps_found && (ps_found = find_sd_sp_violation(ps, profile))) where = "n = 3";
    for (int i = 0; i < 200 && !ps_found; ++i)
        if ((ps_found = find_sd_sp_violation(ps, random_profile(4, rng)))) where = "n = 4";
    c.expect(ps_found.has_value(), "no PS sd-SP violation at n <= 4");
    if (ps_found) c.note("PS violation at " + where);
}

void criterion_9(Criterion& c) {
    const auto fig = fixtures::running_example();
    const auto ebm = is_ep(ebm_expectation(fig), fig, DeterministicProperty::feri);
    c.expect(ebm.holds && ebm.certificate && ebm.certificate->reproduces(ebm_expectation(fig)),
             "EBM expectation lacks an ep-FERI certificate");
    if (ebm.certificate) c.note("EBM certificate with " + std::to_string(ebm.certificate->terms.size()) + " terms");

    const auto upre = is_ep(upre_run(fig), fig, DeterministicProperty::feri);
    c.expect(!upre.holds,
             "UPRE output is ep-FERI: a " + std::to_string(upre.certificate ? upre.certificate->terms.size() : 0) +
                 "-term certificate over FERI bijections reproduces it, so the expected infeasibility cannot occur");

    const auto table = fixtures::running_example_sete_table();
    c.expect(is_ep(table, fig, DeterministicProperty::fhr).holds, "fixture not ep-FHR");
    c.expect(is_sete(table, fig).holds, "fixture not SETE");
    c.expect(!is_sd_wef(table, fig).holds, "fixture is sd-WEF");
}

void criterion_10(Criterion& c) {
    for (const char* id : {"prop_impefr", "prop_impefcr1", "prop_impsdcfr1", "prop_impefcr2", "prop_impsdcfr2",
                           "prop_impefcrsdcfr", "prop_imprkm", "prop_rp", "prop_ps"}) {
        const auto report = audit_fixture(id);
        if (const auto* d = report.first_divergence())
            c.expect(false, std::string(id) + ": " + d->claim + ": expected " + d->expected + ", got " + d->actual);
        c.note(std::string(id) + " " + std::to_string(report.checks.size()) + " checks");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"EBM lottery gap entry", criterion_1},
        {"ABM uniform lottery gap entry", criterion_2},
        {"UPRE running example table", criterion_3},
        {"PS three-agent table and ea-FERI witness", criterion_4},
        {"running example property fixtures", criterion_5},
        {"ABM image and speed recovery sweeps", criterion_6},
        {"implication suite", criterion_7},
        {"strategyproofness searches", criterion_8},
        {"ex-post membership", criterion_9},
        {"impossibility audits", criterion_10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = c.passed() && error.empty();
        failed += !ok;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " (" << timing << ")";
        for (const auto& n : c.notes()) std::cout << "; " << n;
        std::cout << "\n";
        for (const auto& f : c.failures()) std::cout << "    failed: " << f << "\n";
        if (!error.empty()) std::cout << "    exception: " << error << "\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
