#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rassign/profile.hpp"
#include "rassign/rational.hpp"

namespace rassign {

// Enumeration bounds shared by every exhaustive operation.
struct Budget {
    std::uint64_t max_world_nodes = 10'000'000;
    std::size_t max_factorial_n = 8;
};

// Bijection agent -> item.
class DeterministicAssignment {
public:
    DeterministicAssignment() = default;
    explicit DeterministicAssignment(std::vector<ItemIndex> item_of);

    std::size_t size() const { return item_of_.size(); }
    ItemIndex item_of(AgentIndex j) const { return item_of_[j]; }
    AgentIndex holder_of(ItemIndex o) const { return holder_of_[o]; }
    std::span<const ItemIndex> items() const { return item_of_; }

    friend bool operator==(const DeterministicAssignment& a, const DeterministicAssignment& b) {
        return a.item_of_ == b.item_of_;
    }
    friend auto operator<=>(const DeterministicAssignment& a, const DeterministicAssignment& b) {
        return a.item_of_ <=> b.item_of_;
    }

private:
    std::vector<ItemIndex> item_of_;
    std::vector<AgentIndex> holder_of_;
};

// n x n matrix of shares indexed (agent, item). Construction does not validate;
// call validate_doubly_stochastic where the invariant is required.
class RandomAssignment {
public:
    RandomAssignment() = default;
    explicit RandomAssignment(std::size_t n) : n_(n), cells_(n * n) {}
    RandomAssignment(const DeterministicAssignment& a);  // NOLINT: a permutation matrix is a random assignment

    std::size_t size() const { return n_; }
    const Rational& at(AgentIndex j, ItemIndex o) const { return cells_[j * n_ + o]; }
    Rational& at(AgentIndex j, ItemIndex o) { return cells_[j * n_ + o]; }
    std::span<const Rational> row(AgentIndex j) const { return {cells_.data() + j * n_, n_}; }

    bool is_doubly_stochastic() const;
    // True when every entry is 0 or 1 (and the matrix is doubly stochastic).
    bool is_deterministic() const;
    DeterministicAssignment to_deterministic() const;

    RandomAssignment& add_scaled(const RandomAssignment& other, const Rational& weight);
    RandomAssignment& add_scaled(const DeterministicAssignment& other, const Rational& weight);

    friend bool operator==(const RandomAssignment&, const RandomAssignment&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> cells_;
};

void validate_doubly_stochastic(const RandomAssignment& p);

// Strict priority over agents, highest first.
class PriorityOrder {
public:
    PriorityOrder() = default;
    explicit PriorityOrder(std::vector<AgentIndex> order);
    static PriorityOrder identity(std::size_t n);

    std::size_t size() const { return order_.size(); }
    std::span<const AgentIndex> order() const { return order_; }
    // Position of agent j (0 = highest).
    std::size_t position(AgentIndex j) const { return position_[j]; }
    bool ranks_higher(AgentIndex a, AgentIndex b) const { return position_[a] < position_[b]; }

    friend bool operator==(const PriorityOrder& a, const PriorityOrder& b) { return a.order_ == b.order_; }
    friend auto operator<=>(const PriorityOrder& a, const PriorityOrder& b) { return a.order_ <=> b.order_; }

private:
    std::vector<AgentIndex> order_;
    std::vector<std::size_t> position_;
};

class PriorityDistribution {
public:
    explicit PriorityDistribution(std::map<PriorityOrder, Rational> weights);
    static PriorityDistribution uniform(std::size_t n, const Budget& budget = {});
    static PriorityDistribution point(PriorityOrder order);

    const std::map<PriorityOrder, Rational>& weights() const { return weights_; }

private:
    std::map<PriorityOrder, Rational> weights_;
};

struct DecompositionTerm {
    Rational weight;
    DeterministicAssignment assignment;
};

struct ConvexDecomposition {
    std::vector<DecompositionTerm> terms;

    RandomAssignment sum(std::size_t n) const;
    // Positive weights, summing to one, reproducing target exactly.
    bool reproduces(const RandomAssignment& target) const;
};

// Cumulative shares over the upper contour sets of pref: true iff p weakly dominates q.
bool sd_dominates(std::span<const Rational> p, std::span<const Rational> q, const Ranking& pref);
// Cumulative share of a row over upper_contour(pref, item).
Rational cumulative_share(std::span<const Rational> row, const Ranking& pref, ItemIndex item);

ConvexDecomposition bvn_decompose(const RandomAssignment& p);

// Calls visit for every permutation of 0..n-1 in lexicographic order; visit returns false to stop.
void for_each_permutation(std::size_t n, const std::function<bool(std::span<const std::size_t>)>& visit);
std::uint64_t factorial(std::size_t n);
void require_factorial_budget(std::size_t n, const Budget& budget, const std::string& what);

}  // namespace rassign
