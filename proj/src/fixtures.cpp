#include "rassign/fixtures.hpp"

#include <algorithm>

#include "rassign/errors.hpp"

namespace rassign::fixtures {

namespace {

using Ids = std::vector<std::string>;

// ranking = head followed by every other item in catalogue order
Ids with_rest(const Ids& head, const Ids& catalogue) {
    Ids out = head;
    for (const auto& item : catalogue)
        if (std::find(head.begin(), head.end(), item) == head.end()) out.push_back(item);
    return out;
}

}  // namespace

RandomAssignment table(const PreferenceProfile& profile, const std::vector<SparseRow>& rows) {
    if (rows.size() != profile.size()) throw InputError("table needs one row per agent");
    RandomAssignment p(profile.size());
    for (AgentIndex j = 0; j < rows.size(); ++j)
        for (const auto& [item, share] : rows[j]) p.at(j, profile.item_index(item)) = Rational::parse(share);
    return p;
}

DeterministicAssignment bijection(const PreferenceProfile& profile, const std::vector<std::string>& item_of) {
    std::vector<ItemIndex> items;
    items.reserve(item_of.size());
    for (const auto& id : item_of) items.push_back(profile.item_index(id));
    return DeterministicAssignment(std::move(items));
}

PreferenceProfile running_example() {
    const Ids mid = {"c", "e", "d", "f", "a", "b"};
    return PreferenceProfile::numbered({"a", "b", "c", "d", "e", "f"},
                                       {{"a", "b", "c", "d", "e", "f"},
                                        {"b", "a", "c", "d", "e", "f"},
                                        mid,
                                        mid,
                                        mid,
                                        {"c", "a", "b", "d", "e", "f"}});
}

DeterministicAssignment running_example_eager() {
    return bijection(running_example(), {"a", "b", "c", "e", "f", "d"});
}

DeterministicAssignment running_example_rank_favoring() {
    return bijection(running_example(), {"a", "b", "c", "e", "d", "f"});
}

DeterministicAssignment running_example_popular_rival() {
    return bijection(running_example(), {"a", "b", "f", "c", "e", "d"});
}

RandomAssignment running_example_upre() {
    const SparseRow mid = {{"c", "1/4"}, {"d", "1/12"}, {"e", "1/3"}, {"f", "1/3"}};
    return table(running_example(), {{{"a", "1"}}, {{"b", "1"}}, mid, mid, mid, {{"c", "1/4"}, {"d", "3/4"}}});
}

RandomAssignment running_example_ps() {
    const SparseRow mid = {{"c", "1/4"}, {"d", "1/4"}, {"e", "1/3"}, {"f", "1/6"}};
    return table(running_example(), {{{"a", "5/8"}, {"b", "1/8"}, {"d", "1/12"}, {"f", "1/6"}},
                                     {{"b", "3/4"}, {"d", "1/12"}, {"f", "1/6"}},
                                     mid,
                                     mid,
                                     mid,
                                     {{"a", "3/8"}, {"b", "1/8"}, {"c", "1/4"}, {"d", "1/12"}, {"f", "1/6"}}});
}

RandomAssignment running_example_sete_table() {
    const SparseRow mid = {{"c", "1/4"}, {"d", "1/3"}, {"e", "1/3"}, {"f", "1/12"}};
    return table(running_example(), {{{"a", "1"}}, {{"b", "1"}}, mid, mid, mid, {{"c", "1/4"}, {"f", "3/4"}}});
}

PreferenceProfile three_agent() {
    return PreferenceProfile::numbered({"a", "b", "c"}, {{"a", "b", "c"}, {"a", "c", "b"}, {"b", "a", "c"}});
}

RandomAssignment three_agent_ps() {
    return table(three_agent(), {{{"a", "1/2"}, {"b", "1/4"}, {"c", "1/4"}},
                                 {{"a", "1/2"}, {"c", "1/2"}},
                                 {{"b", "3/4"}, {"c", "1/4"}}});
}

DeterministicAssignment three_agent_serial_outcome() { return bijection(three_agent(), {"b", "a", "c"}); }

DeterministicAssignment three_agent_first_choice_rival() { return bijection(three_agent(), {"a", "c", "b"}); }

PreferenceProfile four_agent_envy() {
    return PreferenceProfile::numbered(
        {"a", "b", "c", "d"},
        {{"a", "c", "b", "d"}, {"a", "c", "b", "d"}, {"a", "b", "c", "d"}, {"b", "a", "d", "c"}});
}

PreferenceProfile four_agent_envy_misreport() {
    PreferenceProfile truth = four_agent_envy();
    return truth.with_ranking(2, truth.ranking(3));
}

PreferenceProfile lottery_gap() {
    const Ids catalogue = {"a", "b", "c", "d", "e"};
    const Ids front = with_rest({"a", "c"}, catalogue);
    const Ids back = with_rest({"b", "c"}, catalogue);
    return PreferenceProfile::numbered(catalogue, {front, front, back, back, back});
}

PreferenceProfile eight_agent_manipulation() {
    const Ids mid = {"c", "d", "e", "f", "g", "b", "h", "a"};
    return PreferenceProfile::numbered({"a", "b", "c", "d", "e", "f", "g", "h"},
                                       {{"a", "b", "d", "e", "f", "g", "h", "c"},
                                        {"a", "h", "g", "f", "e", "d", "b", "c"},
                                        mid,
                                        mid,
                                        mid,
                                        mid,
                                        mid,
                                        {"c", "d", "b", "e", "f", "g", "h", "a"}});
}

Ranking eight_agent_misreport(const PreferenceProfile& profile) {
    std::vector<ItemIndex> order;
    for (const char* id : {"c", "d", "e", "b", "f", "g", "h", "a"}) order.push_back(profile.item_index(id));
    return Ranking(std::move(order));
}

PreferenceProfile eighteen_agent() {
    const Ids catalogue = {"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4", "c1",
                           "c2", "c3", "c4", "c5", "c6", "o1", "o2", "o3", "o4"};
    Ids agents;
    std::vector<Ids> rankings;
    auto add = [&](const std::string& name, const Ids& head) {
        agents.push_back(name);
        rankings.push_back(with_rest(head, catalogue));
    };
    add("1", {"a1", "a2", "a3"});
    add("2", {"a1", "a2", "a3"});
    add("3", {"a1", "a2", "a4"});
    add("4", {"b1", "b2", "b3"});
    add("5", {"b1", "b2", "b3"});
    add("6", {"b1", "b2", "b4"});
    for (int j = 7; j <= 17; ++j) add(std::to_string(j), {"c1", "c2", "c3", "c4", "c5", "c6"});
    add("x", {"c1", "c2", "c3", "a3", "b3", "c5", "c4", "c6"});
    return PreferenceProfile::from_ids(agents, catalogue, rankings);
}

PreferenceProfile tau_cycle() {
    const Ids catalogue = {"a", "b", "c", "d", "e", "f", "g", "h", "x", "y"};
    const Ids left = with_rest({"a", "b", "g", "c", "d", "x", "y"}, catalogue);
    const Ids right = with_rest({"a", "b", "h", "e", "f", "y", "x"}, catalogue);
    return PreferenceProfile::numbered(catalogue, {with_rest({"a", "b", "c"}, catalogue),
                                                   with_rest({"a", "b", "d"}, catalogue),
                                                   with_rest({"a", "b", "e"}, catalogue),
                                                   with_rest({"a", "b", "f"}, catalogue),
                                                   left, left, left, right, right, right});
}

DeterministicAssignment tau_cycle_first_outcome() {
    return bijection(tau_cycle(), {"a", "b", "e", "f", "g", "c", "d", "h", "y", "x"});
}

DeterministicAssignment tau_cycle_second_outcome() {
    return bijection(tau_cycle(), {"c", "d", "a", "b", "g", "x", "y", "h", "e", "f"});
}

std::vector<NamedProfile> profile_corpus() {
    return {{"running_example", running_example()},
            {"three_agent", three_agent()},
            {"four_agent_envy", four_agent_envy()},
            {"four_agent_envy_misreport", four_agent_envy_misreport()},
            {"lottery_gap", lottery_gap()},
            {"eight_agent_manipulation", eight_agent_manipulation()},
            {"eighteen_agent", eighteen_agent()},
            {"tau_cycle", tau_cycle()}};
}

std::vector<NamedAssignment> assignment_corpus() {
    return {{"running_example_eager", "running_example", running_example_eager()},
            {"running_example_rank_favoring", "running_example", running_example_rank_favoring()},
            {"running_example_popular_rival", "running_example", running_example_popular_rival()},
            {"running_example_upre", "running_example", running_example_upre()},
            {"running_example_ps", "running_example", running_example_ps()},
            {"running_example_sete_table", "running_example", running_example_sete_table()},
            {"three_agent_ps", "three_agent", three_agent_ps()},
            {"three_agent_serial_outcome", "three_agent", three_agent_serial_outcome()},
            {"tau_cycle_first_outcome", "tau_cycle", tau_cycle_first_outcome()},
            {"tau_cycle_second_outcome", "tau_cycle", tau_cycle_second_outcome()}};
}

}  // namespace rassign::fixtures
