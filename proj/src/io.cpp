#include "rassign/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rassign/errors.hpp"
#include "rassign/fixtures.hpp"

namespace rassign::io {

namespace {

const Json& field(const Json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name)) throw InputError(std::string("missing field '") + name + "'");
    return doc.at(name);
}

void check_version(const Json& doc) {
    const Json& v = field(doc, "version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
        throw InputError("unsupported document version " + v.dump());
}

std::vector<std::string> string_list(const Json& value, const char* what) {
    if (!value.is_array()) throw InputError(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : value) {
        if (!v.is_string()) throw InputError(std::string(what) + " must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Rational rational_field(const Json& value) {
    if (!value.is_string()) throw InputError("rationals are written as \"num/den\" strings, got " + value.dump());
    return Rational::parse(value.get<std::string>());
}

Json agent_list(const std::vector<AgentIndex>& agents, const PreferenceProfile& profile) {
    Json out = Json::array();
    for (AgentIndex j : agents) out.push_back(profile.agent_name(j));
    return out;
}

Json item_list(const std::vector<ItemIndex>& items, const PreferenceProfile& profile) {
    Json out = Json::array();
    for (ItemIndex o : items) out.push_back(profile.item_name(o));
    return out;
}

Json ranking_json(const Ranking& r, const PreferenceProfile& profile) {
    return item_list(std::vector<ItemIndex>(r.order().begin(), r.order().end()), profile);
}

Json row_json(const std::vector<Rational>& row, const PreferenceProfile& profile) {
    Json out = Json::object();
    for (ItemIndex o = 0; o < row.size(); ++o) out[profile.item_name(o)] = row[o].to_string();
    return out;
}

std::size_t index_of(const std::vector<std::string>& ids, const std::string& id, const char* what) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw InputError(std::string("unknown ") + what + " '" + id + "'");
    return static_cast<std::size_t>(it - ids.begin());
}

}  // namespace

Json profile_to_json(const PreferenceProfile& profile) {
    Json prefs = Json::object();
    for (AgentIndex j = 0; j < profile.size(); ++j)
        prefs[profile.agent_name(j)] = ranking_json(profile.ranking(j), profile);
    return Json{{"version", kSchemaVersion},
                {"agents", profile.agents()},
                {"items", profile.items()},
                {"preferences", std::move(prefs)}};
}

PreferenceProfile profile_from_json(const Json& doc) {
    check_version(doc);
    std::vector<std::string> agents = string_list(field(doc, "agents"), "agents");
    std::vector<std::string> items = string_list(field(doc, "items"), "items");
    const Json& prefs = field(doc, "preferences");
    if (!prefs.is_object()) throw InputError("preferences must map agent ids to rankings");
    if (prefs.size() != agents.size()) throw InputError("preferences must list every agent exactly once");
    std::vector<std::vector<std::string>> rankings;
    for (const auto& agent : agents) {
        if (!prefs.contains(agent)) throw InputError("no ranking for agent '" + agent + "'");
        rankings.push_back(string_list(prefs.at(agent), "ranking"));
    }
    return PreferenceProfile::from_ids(std::move(agents), std::move(items), rankings);
}

Json assignment_to_json(const AssignmentDocument& doc) {
    Json matrix = Json::array();
    for (AgentIndex j = 0; j < doc.matrix.size(); ++j) {
        Json row = Json::array();
        for (ItemIndex o = 0; o < doc.matrix.size(); ++o) row.push_back(doc.matrix.at(j, o).to_string());
        matrix.push_back(std::move(row));
    }
    return Json{{"version", kSchemaVersion},
                {"agents", doc.agents},
                {"items", doc.items},
                {"matrix", std::move(matrix)},
                {"provenance", doc.provenance}};
}

AssignmentDocument assignment_from_json(const Json& doc) {
    check_version(doc);
    AssignmentDocument out;
    out.agents = string_list(field(doc, "agents"), "agents");
    out.items = string_list(field(doc, "items"), "items");
    const std::size_t n = out.agents.size();
    if (out.items.size() != n) throw InputError("assignment needs as many items as agents");
    const Json& matrix = field(doc, "matrix");
    if (!matrix.is_array() || matrix.size() != n) throw InputError("matrix must have one row per agent");
    out.matrix = RandomAssignment(n);
    for (AgentIndex j = 0; j < n; ++j) {
        const Json& row = matrix[j];
        if (!row.is_array() || row.size() != n) throw InputError("matrix rows must have one entry per item");
        for (ItemIndex o = 0; o < n; ++o) out.matrix.at(j, o) = rational_field(row[o]);
    }
    validate_doubly_stochastic(out.matrix);
    if (doc.contains("provenance")) out.provenance = doc.at("provenance");
    return out;
}

RandomAssignment align(const AssignmentDocument& doc, const PreferenceProfile& profile) {
    const std::size_t n = profile.size();
    if (doc.agents.size() != n) throw InputError("assignment and profile sizes differ");
    RandomAssignment out(n);
    for (AgentIndex j = 0; j < n; ++j) {
        const std::size_t row = index_of(doc.agents, profile.agent_name(j), "agent");
        for (ItemIndex o = 0; o < n; ++o) out.at(j, o) = doc.matrix.at(row, index_of(doc.items, profile.item_name(o), "item"));
    }
    return out;
}

Json speeds_to_json(const EatingSpeedProfile& speeds, const PreferenceProfile& profile) {
    Json by_agent = Json::object();
    for (AgentIndex j = 0; j < speeds.size(); ++j) {
        Json pieces = Json::array();
        for (const auto& piece : speeds.pieces(j))
            pieces.push_back(
                {{"from", piece.from.to_string()}, {"to", piece.to.to_string()}, {"rate", piece.rate.to_string()}});
        by_agent[profile.agent_name(j)] = std::move(pieces);
    }
    return Json{{"version", kSchemaVersion}, {"speeds", std::move(by_agent)}};
}

EatingSpeedProfile speeds_from_json(const Json& doc, const PreferenceProfile& profile) {
    check_version(doc);
    const Json& by_agent = field(doc, "speeds");
    if (!by_agent.is_object() || by_agent.size() != profile.size())
        throw InputError("speeds must map every agent to its pieces");
    std::vector<std::vector<SpeedPiece>> pieces(profile.size());
    for (AgentIndex j = 0; j < profile.size(); ++j) {
        const std::string& agent = profile.agent_name(j);
        if (!by_agent.contains(agent)) throw InputError("no speeds for agent '" + agent + "'");
        const Json& list = by_agent.at(agent);
        if (!list.is_array()) throw InputError("speeds for agent '" + agent + "' must be an array");
        for (const auto& piece : list)
            pieces[j].push_back(
                {rational_field(field(piece, "from")), rational_field(field(piece, "to")), rational_field(field(piece, "rate"))});
    }
    return EatingSpeedProfile(std::move(pieces));
}

Json witness_to_json(const Witness& w, const PreferenceProfile& profile) {
    auto agent = [&](AgentIndex j) { return profile.agent_name(j); };
    auto item = [&](ItemIndex o) { return profile.item_name(o); };
    auto bijection = [&](const DeterministicAssignment& a) {
        Json out = Json::object();
        for (AgentIndex j = 0; j < a.size(); ++j) out[agent(j)] = item(a.item_of(j));
        return out;
    };
    return std::visit(
        [&](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TradingCycle>) {
                return {{"kind", "trading_cycle"}, {"agents", agent_list(v.agents, profile)}};
            } else if constexpr (std::is_same_v<T, BetterAssignment>) {
                return {{"kind", "better_assignment"},
                        {"assignment", bijection(v.assignment)},
                        {"checked_score", v.checked_score},
                        {"better_score", v.better_score}};
            } else if constexpr (std::is_same_v<T, RankViolation>) {
                return {{"kind", "rank_violation"},
                        {"holder", agent(v.holder)},
                        {"other", agent(v.other)},
                        {"item", item(v.item)}};
            } else if constexpr (std::is_same_v<T, TierViolation>) {
                return {{"kind", "tier_violation"},
                        {"item", item(v.item)},
                        {"tier", v.tier},
                        {"holder", agent(v.holder)},
                        {"holder_top", item(v.holder_top)}};
            } else if constexpr (std::is_same_v<T, SignatureDominance>) {
                return {{"kind", "signature_dominance"},
                        {"assignment", bijection(v.assignment)},
                        {"checked_signature", v.checked_signature},
                        {"better_signature", v.better_signature}};
            } else if constexpr (std::is_same_v<T, ItemCycle>) {
                return {{"kind", "item_cycle"},
                        {"items", item_list(v.items, profile)},
                        {"agents", agent_list(v.agents, profile)}};
            } else if constexpr (std::is_same_v<T, EaFeriViolation>) {
                return {{"kind", "ex_ante_eagerness"},
                        {"agent", agent(v.agent)},
                        {"item", item(v.item)},
                        {"round", v.round},
                        {"cumulative", v.cumulative.to_string()}};
            } else if constexpr (std::is_same_v<T, UnsatisfiedPriority>) {
                return {{"kind", "unsatisfied_priority"},
                        {"holder", agent(v.holder)},
                        {"item", item(v.item)},
                        {"other", agent(v.other)},
                        {"cumulative", v.cumulative.to_string()}};
            } else if constexpr (std::is_same_v<T, PairViolation>) {
                return {{"kind", "pair_violation"},
                        {"agent", agent(v.agent)},
                        {"other", agent(v.other)},
                        {"item", item(v.item)},
                        {"agent_value", v.agent_value.to_string()},
                        {"other_value", v.other_value.to_string()}};
            } else {
                Json y = Json::array();
                for (const auto& r : v.farkas) y.push_back(r.to_string());
                return {{"kind", "infeasible"}, {"generators", v.generators}, {"farkas", std::move(y)}};
            }
        },
        w);
}

Json decomposition_to_json(const ConvexDecomposition& d, const std::vector<std::string>& agents,
                           const std::vector<std::string>& items) {
    Json terms = Json::array();
    for (const auto& t : d.terms) {
        Json a = Json::object();
        for (AgentIndex j = 0; j < t.assignment.size(); ++j) a[agents[j]] = items[t.assignment.item_of(j)];
        terms.push_back({{"weight", t.weight.to_string()}, {"assignment", std::move(a)}});
    }
    return Json{{"version", kSchemaVersion}, {"terms", std::move(terms)}};
}

Json deviation_to_json(const Deviation& d, const PreferenceProfile& profile) {
    return {{"agent", profile.agent_name(d.agent)},
            {"truthful", ranking_json(d.truthful, profile)},
            {"misreport", ranking_json(d.misreport, profile)},
            {"truthful_row", row_json(d.truthful_row, profile)},
            {"deviating_row", row_json(d.deviating_row, profile)}};
}

Json audit_to_json(const AuditReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"claim", c.claim}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    return {{"fixture", report.fixture}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw InputError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> export_corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto profiles = fixtures::profile_corpus();
    for (const auto& [name, profile] : profiles) {
        written.push_back(dir / (name + ".json"));
        write_atomically(written.back(), profile_to_json(profile).dump(2) + "\n");
    }
    for (const auto& entry : fixtures::assignment_corpus()) {
        auto it = std::find_if(profiles.begin(), profiles.end(), [&](const auto& p) { return p.name == entry.profile; });
        AssignmentDocument doc{it->profile.agents(), it->profile.items(), entry.assignment,
                               Json{{"fixture", entry.name}, {"profile", entry.profile}}};
        written.push_back(dir / (entry.name + ".json"));
        write_atomically(written.back(), assignment_to_json(doc).dump(2) + "\n");
    }
    return written;
}

}  // namespace rassign::io
