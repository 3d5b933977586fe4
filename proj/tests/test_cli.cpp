#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "rassign/cli.hpp"
#include "rassign/eating.hpp"
#include "rassign/fixtures.hpp"
#include "rassign/io.hpp"
#include "rassign/lottery.hpp"
#include "rassign/properties.hpp"

using namespace rassign;
namespace fs = std::filesystem;
using io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json doc() const { return Json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Exported once per process; every test reads from the same directory.
const fs::path& corpus() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("rassign_cli_" + std::to_string(::getpid()));
        io::export_corpus(d);
        return d;
    }();
    return dir;
}

std::string file(const std::string& name) { return (corpus() / (name + ".json")).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
    const fs::path path = corpus() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("run: uniform eating reproduces the stored table") {
    const auto r = invoke({"run", "upre", file("running_example")});
    REQUIRE(r.code == cli::kSuccess);
    const auto doc = io::assignment_from_json(r.doc());
    CHECK(doc.matrix == fixtures::running_example_upre());
    CHECK(doc.provenance["mechanism"] == "upre");
}

TEST_CASE("run: lottery expectation and fixed priority") {
    const auto ebm = invoke({"run", "ebm", file("lottery_gap"), "--mode", "expectation"});
    REQUIRE(ebm.code == cli::kSuccess);
    CHECK(io::assignment_from_json(ebm.doc()).matrix == ebm_expectation(fixtures::lottery_gap()));

    const auto rp = invoke({"run", "rp", file("three_agent"), "--priority", "2,1,3"});
    REQUIRE(rp.code == cli::kSuccess);
    const auto three = fixtures::three_agent();
    const auto expected = rp_run(three, PriorityOrder({1, 0, 2}));
    CHECK(io::assignment_from_json(rp.doc()).matrix == expected);
    CHECK(rp.doc()["provenance"]["priority"] == Json::array({"2", "1", "3"}));

    CHECK(invoke({"run", "rp", file("three_agent"), "--priority", "2,1"}).code == cli::kMalformed);
    CHECK(invoke({"run", "serial", file("three_agent")}).code == cli::kMalformed);
    CHECK(invoke({"run", "ps", file("three_agent"), "--mode", "sample"}).code == cli::kMalformed);
}

TEST_CASE("run: sampling is deterministic in the seed") {
    for (const char* mech : {"ebm", "abm", "bm", "rp"}) {
        const auto a = invoke({"run", mech, file("running_example"), "--mode", "sample", "--seed", "17"});
        const auto b = invoke({"run", mech, file("running_example"), "--mode", "sample", "--seed", "17"});
        REQUIRE(a.code == cli::kSuccess);
        CHECK(a.out == b.out);
        CHECK(io::assignment_from_json(a.doc()).matrix.is_deterministic());
    }
    const auto sample = invoke({"run", "ebm", file("running_example"), "--mode", "sample", "--seed", "17"});
    CHECK(io::assignment_from_json(sample.doc()).matrix ==
          ebm_sample(fixtures::running_example(), LotterySeed{17}).first);
}

TEST_CASE("run: general eating with a speed document") {
    const auto fig = fixtures::running_example();
    const auto speeds = recover_speeds(fixtures::running_example_upre(), fig);
    const auto path = write_temp("speeds.json", io::speeds_to_json(speeds, fig).dump());
    const auto r = invoke({"run", "pre", file("running_example"), "--speeds", path});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(io::assignment_from_json(r.doc()).matrix == fixtures::running_example_upre());
    CHECK(invoke({"run", "pre", file("running_example")}).code == cli::kMalformed);
}

TEST_CASE("check: verdicts, witnesses and exit codes") {
    const auto feri = invoke({"check", "feri", file("running_example_eager"), file("running_example")});
    CHECK(feri.code == cli::kSuccess);
    CHECK(feri.doc()["holds"] == true);
    CHECK(feri.doc()["tiers"] == Json::parse(R"([["a","b","c"],["d","e"],["f"]])"));

    const auto fhr = invoke({"check", "fhr", file("running_example_eager"), file("running_example")});
    CHECK(fhr.code == cli::kFailed);
    CHECK(fhr.doc()["witness"]["kind"] == "rank_violation");

    const auto wef = invoke({"check", "sd-wef", file("running_example_sete_table"), file("running_example")});
    CHECK(wef.code == cli::kFailed);
    CHECK(wef.doc()["witness"]["agent"] == "6");
    CHECK(wef.doc()["witness"]["other"] == "3");

    CHECK(invoke({"check", "sete", file("running_example_sete_table"), file("running_example")}).code == cli::kSuccess);
    const auto ea = invoke({"check", "ea-feri", file("three_agent_ps"), file("three_agent")});
    CHECK(ea.code == cli::kFailed);
    CHECK(ea.doc()["witness"]["cumulative"] == "3/4");

    const auto rm = invoke({"check", "rm", file("running_example_eager"), file("running_example")});
    CHECK(rm.doc().contains("signature"));
    CHECK(invoke({"check", "fhr", file("running_example_upre"), file("running_example")}).code == cli::kMalformed);
    CHECK(invoke({"check", "envy", file("running_example_upre"), file("running_example")}).code == cli::kMalformed);
    CHECK(invoke({"check", "sd-pe", file("running_example_upre"), file("three_agent")}).code == cli::kMalformed);
}

TEST_CASE("check: ex-post properties carry certificates") {
    const auto ok = invoke({"check", "ep-feri", file("running_example_upre"), file("running_example")});
    CHECK(ok.code == cli::kSuccess);
    const Json cert = ok.doc()["certificate"];
    CHECK(!cert["terms"].empty());
    const auto fig = fixtures::running_example();
    RandomAssignment mixed(fig.size());
    for (const auto& t : cert["terms"]) {
        std::vector<ItemIndex> items(fig.size());
        for (const auto& [agent, item] : t["assignment"].items())
            items[fig.agent_index(agent)] = fig.item_index(item.get<std::string>());
        const DeterministicAssignment a(std::move(items));
        CHECK(is_feri(a, fig).first.holds);
        mixed.add_scaled(a, Rational::parse(t["weight"].get<std::string>()));
    }
    CHECK(mixed == fixtures::running_example_upre());
    const auto bad = invoke({"check", "ep-fhr", file("running_example_upre"), file("running_example")});
    CHECK(bad.code == cli::kFailed);
    CHECK(bad.doc()["witness"]["kind"] == "infeasible");
}

TEST_CASE("audit") {
    const auto ok = invoke({"audit", "app_b4"});
    CHECK(ok.code == cli::kSuccess);
    CHECK(ok.doc()["passed"] == true);
    CHECK(invoke({"audit", "prop_missing"}).code == cli::kMalformed);
    CHECK(invoke({"audit"}).code == cli::kMalformed);

    const fs::path dir = corpus() / "exported";
    const auto ex = invoke({"audit", "--export", dir.string()});
    CHECK(ex.code == cli::kSuccess);
    CHECK(ex.doc()["exported"].size() == 18);
    CHECK(io::profile_from_json(io::read_json(dir / "running_example.json")) == fixtures::running_example());
}

TEST_CASE("decompose") {
    const auto single = invoke({"decompose", file("running_example_eager")});
    REQUIRE(single.code == cli::kSuccess);
    REQUIRE(single.doc()["terms"].size() == 1);
    CHECK(single.doc()["terms"][0]["weight"] == "1/1");

    const auto plain = invoke({"decompose", file("running_example_upre")});
    REQUIRE(plain.code == cli::kSuccess);
    Rational total;
    const Json plain_doc = plain.doc();
    for (const auto& t : plain_doc["terms"]) total += Rational::parse(t["weight"].get<std::string>());
    CHECK(total.is_one());

    const auto ebm_path = write_temp(
        "ebm_fig.json", invoke({"run", "ebm", file("running_example")}).out);
    const auto ebm = invoke({"decompose", ebm_path, file("running_example"), "--property", "feri"});
    REQUIRE(ebm.code == cli::kSuccess);
    const auto fig = fixtures::running_example();
    const Json ebm_doc = ebm.doc();
    for (const auto& t : ebm_doc["terms"]) {
        std::vector<ItemIndex> items(fig.size());
        for (const auto& [agent, item] : t["assignment"].items())
            items[fig.agent_index(agent)] = fig.item_index(item.get<std::string>());
        CHECK(is_feri(DeterministicAssignment(std::move(items)), fig).first.holds);
    }

    CHECK(invoke({"decompose", file("running_example_upre"), file("running_example"), "--property", "feri"}).code ==
          cli::kSuccess);
    CHECK(invoke({"decompose", file("running_example_upre"), file("running_example"), "--property", "fhr"}).code ==
          cli::kFailed);
    CHECK(invoke({"decompose", file("running_example_upre"), "--property", "feri"}).code == cli::kMalformed);
}

TEST_CASE("malformed inputs and budgets") {
    const auto broken = write_temp("broken.json", "{\"version\": 1, \"agents\": [");
    CHECK(invoke({"run", "upre", broken}).code == cli::kMalformed);
    const auto dup = write_temp("dup.json", R"({"version":1,"agents":["1","1"],"items":["a","b"],
        "preferences":{"1":["a","b"]}})");
    CHECK(invoke({"run", "upre", dup}).code == cli::kMalformed);
    CHECK(invoke({"run", "upre", (corpus() / "absent.json").string()}).code == cli::kMalformed);
    CHECK(invoke({"frobnicate"}).code == cli::kMalformed);

    const auto over = invoke({"run", "ebm", file("running_example"), "--budget-worlds", "5"});
    CHECK(over.code == cli::kBudget);
    CHECK(over.err.find("budget") != std::string::npos);
}

TEST_CASE("documents round-trip through JSON") {
    const auto fig = fixtures::running_example();
    CHECK(io::profile_from_json(io::profile_to_json(fig)) == fig);
    const io::AssignmentDocument doc{fig.agents(), fig.items(), fixtures::running_example_upre(), Json{{"k", 1}}};
    CHECK(io::assignment_from_json(io::assignment_to_json(doc)) == doc);
    const auto speeds = recover_speeds(doc.matrix, fig);
    CHECK(pre_run(fig, io::speeds_from_json(io::speeds_to_json(speeds, fig), fig)).first == doc.matrix);

    Json shuffled = io::assignment_to_json(doc);
    std::swap(shuffled["agents"][0], shuffled["agents"][5]);
    std::swap(shuffled["matrix"][0], shuffled["matrix"][5]);
    CHECK(io::align(io::assignment_from_json(shuffled), fig) == doc.matrix);
}
