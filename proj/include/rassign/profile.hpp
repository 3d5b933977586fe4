#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rassign {

using AgentIndex = std::size_t;
using ItemIndex = std::size_t;

// Profiles are limited to 64 agents/items so that sets fit in one machine word.
inline constexpr std::size_t kMaxSize = 64;

// Set of dense indices below kMaxSize.
class IndexSet {
public:
    constexpr IndexSet() = default;
    static constexpr IndexSet full(std::size_t n) {
        return IndexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }
    static constexpr IndexSet single(std::size_t i) { return IndexSet(std::uint64_t{1} << i); }

    constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
    constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
    constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
    constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
    constexpr IndexSet minus(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
    constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
    friend constexpr bool operator==(IndexSet, IndexSet) = default;

    // Members in ascending order.
    std::vector<std::size_t> members() const;

private:
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

using ItemSet = IndexSet;
using AgentSet = IndexSet;

// A strict total order over items 0..n-1, best first.
class Ranking {
public:
    Ranking() = default;
    explicit Ranking(std::vector<ItemIndex> order);

    std::size_t size() const { return order_.size(); }
    std::span<const ItemIndex> order() const { return order_; }
    ItemIndex at(std::size_t position) const { return order_[position]; }
    ItemIndex top() const { return order_.front(); }
    // 1-based position; InputError for an unknown item.
    std::size_t rank_of(ItemIndex item) const;
    bool prefers(ItemIndex a, ItemIndex b) const { return rank_[a] < rank_[b]; }

    friend bool operator==(const Ranking& a, const Ranking& b) { return a.order_ == b.order_; }
    friend auto operator<=>(const Ranking& a, const Ranking& b) { return a.order_ <=> b.order_; }

private:
    std::vector<ItemIndex> order_;
    std::vector<std::size_t> rank_;  // 0-based position by item
};

std::size_t rank_of(const Ranking& pref, ItemIndex item);
// Best item of a nonempty subset; InputError when the subset is empty or foreign.
ItemIndex top_among(const Ranking& pref, ItemSet subset);
ItemSet upper_contour(const Ranking& pref, ItemIndex item);
std::vector<ItemIndex> common_prefix(const Ranking& a, const Ranking& b);

class PreferenceProfile {
public:
    PreferenceProfile(std::vector<std::string> agents, std::vector<std::string> items,
                      std::vector<Ranking> rankings);

    // Convenience: rankings given as item-id lists, agents and items in the given order.
    static PreferenceProfile from_ids(std::vector<std::string> agents, std::vector<std::string> items,
                                      const std::vector<std::vector<std::string>>& rankings);
    // Agents named "1".."n", items from the given ids; each ranking is a list of item ids.
    static PreferenceProfile numbered(std::vector<std::string> items,
                                      const std::vector<std::vector<std::string>>& rankings);

    std::size_t size() const { return agents_.size(); }
    const std::vector<std::string>& agents() const { return agents_; }
    const std::vector<std::string>& items() const { return items_; }
    const Ranking& ranking(AgentIndex j) const { return rankings_[j]; }
    const std::vector<Ranking>& rankings() const { return rankings_; }

    AgentIndex agent_index(const std::string& id) const;
    ItemIndex item_index(const std::string& id) const;
    const std::string& agent_name(AgentIndex j) const { return agents_[j]; }
    const std::string& item_name(ItemIndex o) const { return items_[o]; }

    // Same agents and items, agent j's ranking replaced.
    PreferenceProfile with_ranking(AgentIndex j, Ranking replacement) const;

    friend bool operator==(const PreferenceProfile&, const PreferenceProfile&) = default;

private:
    std::vector<std::string> agents_;
    std::vector<std::string> items_;
    std::vector<Ranking> rankings_;
};

}  // namespace rassign
