#include "rassign/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rassign/audit.hpp"
#include "rassign/eating.hpp"
#include "rassign/errors.hpp"
#include "rassign/io.hpp"
#include "rassign/lottery.hpp"
#include "rassign/properties.hpp"

namespace rassign::cli {

namespace {

using io::Json;

struct Outcome {
    int code = kSuccess;
    std::string document;
};

Outcome emit(const Json& doc, int code = kSuccess) { return {code, doc.dump(2) + "\n"}; }

PriorityOrder parse_priority(const std::string& text, const PreferenceProfile& profile) {
    std::vector<AgentIndex> order;
    std::stringstream ss(text);
    std::string id;
    while (std::getline(ss, id, ',')) order.push_back(profile.agent_index(id));
    if (order.size() != profile.size()) throw InputError("priority must list every agent once");
    return PriorityOrder(std::move(order));
}

// Fisher-Yates over the identity with the same pinned generator the eager lottery uses.
PriorityOrder random_priority(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<AgentIndex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    return PriorityOrder(std::move(order));
}

Json priority_json(const PriorityOrder& p, const PreferenceProfile& profile) {
    Json out = Json::array();
    for (AgentIndex j : p.order()) out.push_back(profile.agent_name(j));
    return out;
}

struct RunOptions {
    std::string mechanism;
    std::string profile;
    std::string mode = "expectation";
    std::uint64_t seed = 0;
    std::string priority;
    std::string speeds;
};

Outcome cmd_run(const RunOptions& opt, const Budget& budget) {
    const PreferenceProfile profile = io::profile_from_json(io::read_json(opt.profile));
    if (opt.mode != "sample" && opt.mode != "expectation") throw InputError("mode must be sample or expectation");
    const bool sample = opt.mode == "sample";
    Json provenance = {{"mechanism", opt.mechanism}};
    RandomAssignment result;

    const bool priority_based = opt.mechanism == "abm" || opt.mechanism == "bm" || opt.mechanism == "rp";
    if (opt.mechanism == "ebm") {
        provenance["mode"] = opt.mode;
        if (sample) {
            provenance["seed"] = opt.seed;
            result = ebm_sample(profile, LotterySeed{opt.seed}).first;
        } else {
            result = ebm_expectation(profile, budget);
        }
    } else if (priority_based) {
        auto run_one = [&](const PriorityOrder& p) {
            if (opt.mechanism == "abm") return abm_run(profile, p);
            if (opt.mechanism == "bm") return bm_run(profile, p);
            return rp_run(profile, p);
        };
        if (!opt.priority.empty() || sample) {
            const PriorityOrder p = !opt.priority.empty() ? parse_priority(opt.priority, profile)
                                                          : random_priority(profile.size(), opt.seed);
            if (opt.priority.empty()) provenance["seed"] = opt.seed;
            provenance["mode"] = "sample";
            provenance["priority"] = priority_json(p, profile);
            result = run_one(p);
        } else {
            provenance["mode"] = "expectation";
            provenance["priority"] = "uniform";
            const PriorityDistribution uniform = PriorityDistribution::uniform(profile.size(), budget);
            if (opt.mechanism == "abm") result = abm_expectation(profile, uniform);
            else if (opt.mechanism == "bm") result = bm_expectation(profile, uniform);
            else result = rp_expectation(profile, budget);
        }
    } else if (opt.mechanism == "ps" || opt.mechanism == "upre" || opt.mechanism == "pre") {
        if (sample) throw InputError(opt.mechanism + " has no sampling mode");
        provenance["mode"] = "expectation";
        if (opt.mechanism == "ps") {
            result = ps_run(profile);
        } else if (opt.mechanism == "upre") {
            result = upre_run(profile);
        } else {
            if (opt.speeds.empty()) throw InputError("pre needs --speeds");
            const EatingSpeedProfile speeds = io::speeds_from_json(io::read_json(opt.speeds), profile);
            if (speeds.size() != profile.size()) throw InputError("speed profile size does not match profile");
            provenance["speeds"] = opt.speeds;
            result = pre_run(profile, speeds).first;
        }
    } else {
        throw InputError("unknown mechanism '" + opt.mechanism + "'");
    }
    return emit(io::assignment_to_json({profile.agents(), profile.items(), std::move(result), provenance}));
}

Json tiers_json(const FeriTiers& tiers, const PreferenceProfile& profile) {
    Json out = Json::array();
    for (const ItemSet& tier : tiers.tiers) {
        Json t = Json::array();
        for (ItemIndex o : tier.members()) t.push_back(profile.item_name(o));
        out.push_back(std::move(t));
    }
    return out;
}

Outcome cmd_check(const std::string& property, const std::string& assignment_path, const std::string& profile_path,
                  const Budget& budget) {
    const PreferenceProfile profile = io::profile_from_json(io::read_json(profile_path));
    const RandomAssignment p = io::align(io::assignment_from_json(io::read_json(assignment_path)), profile);
    Json doc = {{"property", property}};
    PropertyVerdict verdict;

    if (property.starts_with("ep-")) {
        auto base = parse_deterministic_property(property.substr(3));
        if (!base) throw InputError("unknown property '" + property + "'");
        verdict = is_ep(p, profile, *base, budget);
    } else if (auto prop = parse_deterministic_property(property)) {
        if (!p.is_deterministic()) throw InputError(property + " applies to deterministic assignments only");
        const DeterministicAssignment a = p.to_deterministic();
        switch (*prop) {
            case DeterministicProperty::pe: verdict = is_pe(a, profile); break;
            case DeterministicProperty::fcm: verdict = is_fcm(a, profile); break;
            case DeterministicProperty::fhr: verdict = is_fhr(a, profile); break;
            case DeterministicProperty::feri: {
                auto [v, tiers] = is_feri(a, profile);
                verdict = std::move(v);
                doc["tiers"] = tiers_json(tiers, profile);
                break;
            }
            case DeterministicProperty::rm:
                verdict = is_rm(a, profile, budget);
                doc["signature"] = rank_signature(a, profile);
                break;
            case DeterministicProperty::pop: verdict = is_pop(a, profile, budget); break;
        }
    } else if (property == "sd-pe") {
        verdict = is_sd_pe(p, profile);
    } else if (property == "ea-feri") {
        verdict = is_ea_feri(p, profile);
    } else if (property == "ea-fhr") {
        verdict = is_ea_fhr(p, profile);
    } else if (property == "sete") {
        verdict = is_sete(p, profile);
    } else if (property == "sd-ef") {
        verdict = is_sd_ef(p, profile);
    } else if (property == "sd-wef") {
        verdict = is_sd_wef(p, profile);
    } else {
        throw InputError("unknown property '" + property + "'");
    }

    doc["holds"] = verdict.holds;
    if (verdict.witness) doc["witness"] = io::witness_to_json(*verdict.witness, profile);
    if (verdict.certificate)
        doc["certificate"] = io::decomposition_to_json(*verdict.certificate, profile.agents(), profile.items());
    return emit(doc, verdict.holds ? kSuccess : kFailed);
}

Outcome cmd_audit(const std::string& id, const std::string& export_dir, const Budget& budget, std::ostream& err) {
    Json doc = Json::object();
    if (!export_dir.empty()) {
        Json files = Json::array();
        for (const auto& path : io::export_corpus(export_dir)) files.push_back(path.string());
        doc["exported"] = std::move(files);
    }
    if (id.empty()) {
        if (export_dir.empty()) throw InputError("audit needs a fixture id, \"all\", or --export");
        return emit(doc);
    }
    std::vector<std::string> ids = id == "all" ? audit_ids() : std::vector<std::string>{id};
    Json reports = Json::array();
    const AuditCheck* first = nullptr;
    std::string first_fixture;
    std::vector<AuditReport> kept;
    kept.reserve(ids.size());
    for (const auto& fixture : ids) {
        kept.push_back(audit_fixture(fixture, budget));
        reports.push_back(io::audit_to_json(kept.back()));
        if (!first && kept.back().first_divergence()) {
            first = kept.back().first_divergence();
            first_fixture = fixture;
        }
    }
    doc["passed"] = first == nullptr;
    doc["reports"] = std::move(reports);
    if (first)
        err << "diverges: " << first_fixture << ": " << first->claim << ": expected " << first->expected << ", got "
            << first->actual << "\n";
    return emit(doc, first ? kFailed : kSuccess);
}

Outcome cmd_decompose(const std::string& assignment_path, const std::string& profile_path,
                      const std::string& property, const Budget& budget) {
    const io::AssignmentDocument doc = io::assignment_from_json(io::read_json(assignment_path));
    if (property.empty()) return emit(io::decomposition_to_json(bvn_decompose(doc.matrix), doc.agents, doc.items));
    if (profile_path.empty()) throw InputError("--property needs a profile");
    auto base = parse_deterministic_property(property);
    if (!base) throw InputError("unknown base property '" + property + "'");
    const PreferenceProfile profile = io::profile_from_json(io::read_json(profile_path));
    PropertyVerdict v = is_ep(io::align(doc, profile), profile, *base, budget);
    if (v.holds) {
        Json out = io::decomposition_to_json(*v.certificate, profile.agents(), profile.items());
        out["property"] = property;
        return emit(out);
    }
    Json out = {{"property", property}, {"holds", false}};
    if (v.witness) out["witness"] = io::witness_to_json(*v.witness, profile);
    return emit(out, kFailed);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact random assignment mechanisms and property checks", "rassign"};
    app.require_subcommand(1);
    std::uint64_t budget_worlds = Budget{}.max_world_nodes;
    app.add_option("--budget-worlds", budget_worlds, "Bound on enumerated lottery-tree nodes")->capture_default_str();

    RunOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a mechanism on a profile");
    run_cmd->add_option("--mechanism,mechanism", run_opt.mechanism, "ebm, abm, bm, rp, ps, upre or pre")->required();
    run_cmd->add_option("profile", run_opt.profile, "Profile document")->required();
    run_cmd->add_option("--mode", run_opt.mode, "sample or expectation")->capture_default_str();
    run_cmd->add_option("--seed", run_opt.seed, "Lottery seed for sample mode");
    run_cmd->add_option("--priority", run_opt.priority, "Comma-separated agent ids, highest first");
    run_cmd->add_option("--speeds", run_opt.speeds, "Eating speed document for pre");

    std::string property, assignment_path, profile_path, fixture, export_dir;
    CLI::App* check_cmd = app.add_subcommand("check", "Check a property of an assignment");
    check_cmd->add_option("--property,property", property, "Property id")->required();
    check_cmd->add_option("assignment", assignment_path, "Assignment document")->required();
    check_cmd->add_option("profile", profile_path, "Profile document")->required();

    CLI::App* audit_cmd = app.add_subcommand("audit", "Replay a fixture argument");
    audit_cmd->add_option("fixture", fixture, "Fixture id or all");
    audit_cmd->add_option("--export", export_dir, "Write the fixture corpus to this directory");

    std::string decompose_property;
    CLI::App* decompose_cmd = app.add_subcommand("decompose", "Decompose an assignment into bijections");
    decompose_cmd->add_option("assignment", assignment_path, "Assignment document")->required();
    decompose_cmd->add_option("profile", profile_path, "Profile document");
    decompose_cmd->add_option("--property", decompose_property, "Restrict components to this deterministic property");

    for (CLI::App* sub : {run_cmd, check_cmd, audit_cmd, decompose_cmd})
        sub->add_option("--budget-worlds", budget_worlds, "Bound on enumerated lottery-tree nodes");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kMalformed;
    }

    Budget budget;
    budget.max_world_nodes = budget_worlds;
    try {
        Outcome result;
        if (*run_cmd) result = cmd_run(run_opt, budget);
        else if (*check_cmd) result = cmd_check(property, assignment_path, profile_path, budget);
        else if (*audit_cmd) result = cmd_audit(fixture, export_dir, budget, err);
        else result = cmd_decompose(assignment_path, profile_path, decompose_property, budget);
        out << result.document << std::flush;
        return result.code;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const InputError& e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformed;
    } catch (const PreconditionError& e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::domain_error& e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformed;
    }
}

}  // namespace rassign::cli
