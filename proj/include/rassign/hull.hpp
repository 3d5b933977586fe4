#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rassign/assignment.hpp"
#include "rassign/lp.hpp"
#include "rassign/rational.hpp"

namespace rassign {

// sum of coefficient * p[agent][item] == rhs
struct EntryConstraint {
    struct Term {
        AgentIndex agent;
        ItemIndex item;
        Rational coefficient;
    };
    std::vector<Term> terms;
    Rational rhs;
};

// Convex combinations of a fixed list of deterministic assignments, optionally cut by linear constraints
// on the combined matrix. Variables are the combination weights.
class CombinationPolytope {
public:
    CombinationPolytope(std::size_t n, std::vector<DeterministicAssignment> generators,
                        std::vector<EntryConstraint> constraints = {});

    const std::vector<DeterministicAssignment>& generators() const { return generators_; }

    // A member of the polytope as a decomposition, or nullopt when empty.
    std::optional<ConvexDecomposition> any_point() const;
    // Exact minimum and maximum of one entry of the combined matrix; nullopt when the polytope is empty.
    std::optional<std::pair<Rational, Rational>> entry_range(AgentIndex j, ItemIndex o) const;
    // Minimum total weight that any member places on generator g.
    std::optional<Rational> min_weight(std::size_t g) const;

private:
    LinearProgram program(std::vector<Rational> objective) const;
    ConvexDecomposition to_decomposition(const std::vector<Rational>& weights) const;

    std::size_t n_;
    std::vector<DeterministicAssignment> generators_;
    std::vector<EntryConstraint> constraints_;
};

// Doubly stochastic n x n matrices cut by linear constraints; variables are the entries themselves.
class SharePolytope {
public:
    SharePolytope(std::size_t n, std::vector<EntryConstraint> constraints = {});

    std::optional<RandomAssignment> any_point() const;
    std::optional<std::pair<Rational, Rational>> entry_range(AgentIndex j, ItemIndex o) const;

private:
    LinearProgram program(std::vector<Rational> objective) const;

    std::size_t n_;
    std::vector<EntryConstraint> constraints_;
};

// p[j][o] == p[k][o]
EntryConstraint equal_entries(AgentIndex j, AgentIndex k, ItemIndex o);

struct HullResult {
    std::optional<ConvexDecomposition> decomposition;
    std::vector<Rational> farkas;  // set when target lies outside the hull
    LinearProgram program{0, 0};
};

// Decides whether target is a convex combination of the generators.
HullResult hull_membership(const RandomAssignment& target, std::span<const DeterministicAssignment> generators);

}  // namespace rassign
