#include "rassign/profile.hpp"

#include <algorithm>
#include <set>

#include "rassign/errors.hpp"

namespace rassign {

std::vector<std::size_t> IndexSet::members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

Ranking::Ranking(std::vector<ItemIndex> order) : order_(std::move(order)), rank_(order_.size(), 0) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        ItemIndex o = order_[pos];
        if (o >= order_.size() || seen[o]) throw InputError("ranking is not a permutation of the items");
        seen[o] = true;
        rank_[o] = pos;
    }
}

std::size_t Ranking::rank_of(ItemIndex item) const {
    if (item >= rank_.size()) throw InputError("item not in ranking");
    return rank_[item] + 1;
}

std::size_t rank_of(const Ranking& pref, ItemIndex item) { return pref.rank_of(item); }

ItemIndex top_among(const Ranking& pref, ItemSet subset) {
    if (subset.empty()) throw InputError("top_among on an empty subset");
    if (!subset.subset_of(ItemSet::full(pref.size()))) throw InputError("subset contains unknown items");
    for (ItemIndex o : pref.order())
        if (subset.contains(o)) return o;
    throw InputError("subset contains unknown items");
}

ItemSet upper_contour(const Ranking& pref, ItemIndex item) {
    std::size_t r = pref.rank_of(item);
    ItemSet out;
    for (std::size_t pos = 0; pos < r; ++pos) out.insert(pref.at(pos));
    return out;
}

std::vector<ItemIndex> common_prefix(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) throw InputError("rankings over different item sets");
    std::vector<ItemIndex> out;
    for (std::size_t pos = 0; pos < a.size() && a.at(pos) == b.at(pos); ++pos) out.push_back(a.at(pos));
    return out;
}

PreferenceProfile::PreferenceProfile(std::vector<std::string> agents, std::vector<std::string> items,
                                     std::vector<Ranking> rankings)
    : agents_(std::move(agents)), items_(std::move(items)), rankings_(std::move(rankings)) {
    if (agents_.size() != items_.size())
        throw InputError("profile needs as many items as agents");
    if (agents_.empty()) throw InputError("profile has no agents");
    if (agents_.size() > kMaxSize) throw InputError("profile exceeds 64 agents");
    if (rankings_.size() != agents_.size()) throw InputError("one ranking per agent required");
    if (std::set<std::string>(agents_.begin(), agents_.end()).size() != agents_.size())
        throw InputError("duplicate agent id");
    if (std::set<std::string>(items_.begin(), items_.end()).size() != items_.size())
        throw InputError("duplicate item id");
    for (const Ranking& r : rankings_)
        if (r.size() != items_.size()) throw InputError("ranking does not cover every item");
}

PreferenceProfile PreferenceProfile::from_ids(std::vector<std::string> agents, std::vector<std::string> items,
                                              const std::vector<std::vector<std::string>>& rankings) {
    std::vector<Ranking> parsed;
    parsed.reserve(rankings.size());
    for (const auto& ids : rankings) {
        std::vector<ItemIndex> order;
        order.reserve(ids.size());
        for (const auto& id : ids) {
            auto it = std::find(items.begin(), items.end(), id);
            if (it == items.end()) throw InputError("unknown item '" + id + "' in ranking");
            order.push_back(static_cast<ItemIndex>(it - items.begin()));
        }
        if (order.size() != items.size()) throw InputError("ranking does not cover every item");
        parsed.emplace_back(std::move(order));
    }
    return PreferenceProfile(std::move(agents), std::move(items), std::move(parsed));
}

PreferenceProfile PreferenceProfile::numbered(std::vector<std::string> items,
                                              const std::vector<std::vector<std::string>>& rankings) {
    std::vector<std::string> agents;
    for (std::size_t j = 0; j < rankings.size(); ++j) agents.push_back(std::to_string(j + 1));
    return from_ids(std::move(agents), std::move(items), rankings);
}

AgentIndex PreferenceProfile::agent_index(const std::string& id) const {
    auto it = std::find(agents_.begin(), agents_.end(), id);
    if (it == agents_.end()) throw InputError("unknown agent '" + id + "'");
    return static_cast<AgentIndex>(it - agents_.begin());
}

ItemIndex PreferenceProfile::item_index(const std::string& id) const {
    auto it = std::find(items_.begin(), items_.end(), id);
    if (it == items_.end()) throw InputError("unknown item '" + id + "'");
    return static_cast<ItemIndex>(it - items_.begin());
}

PreferenceProfile PreferenceProfile::with_ranking(AgentIndex j, Ranking replacement) const {
    PreferenceProfile copy = *this;
    if (replacement.size() != items_.size()) throw InputError("replacement ranking has wrong size");
    copy.rankings_.at(j) = std::move(replacement);
    return copy;
}

}  // namespace rassign
