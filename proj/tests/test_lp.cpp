#include <doctest.h>

#include <optional>
#include <random>

#include "reference.hpp"
#include "rassign/fixtures.hpp"
#include "rassign/hull.hpp"
#include "rassign/lp.hpp"
#include "rassign/properties.hpp"

using namespace rassign;
using ref::Q;

namespace {

// Solves the square system B x = b by Gauss-Jordan elimination; nullopt when singular.
std::optional<std::vector<Q>> solve_square(std::vector<std::vector<Q>> m, std::vector<Q> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Q f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t r = 0; r < n; ++r) rhs[r] /= m[r][r];
    return rhs;
}

// Minimum of c.x over basic feasible solutions; nullopt when none exists. A must have full row rank.
std::optional<Q> vertex_minimum(const LinearProgram& lp) {
    std::optional<Q> best;
    std::vector<bool> pick(lp.cols, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(lp.rows), true);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<std::size_t> basis;
        for (std::size_t j = 0; j < lp.cols; ++j)
            if (pick[j]) basis.push_back(j);
        std::vector<std::vector<Q>> m(lp.rows, std::vector<Q>(lp.rows));
        std::vector<Q> rhs(lp.rows);
        for (std::size_t i = 0; i < lp.rows; ++i) {
            rhs[i] = ref::q(lp.b[i]);
            for (std::size_t k = 0; k < lp.rows; ++k) m[i][k] = ref::q(lp.coef(i, basis[k]));
        }
        auto x = solve_square(m, rhs);
        if (!x || std::any_of(x->begin(), x->end(), [](const Q& v) { return v < 0; })) continue;
        Q value = 0;
        for (std::size_t k = 0; k < lp.rows; ++k) value += ref::q(lp.c[basis[k]]) * (*x)[k];
        if (!best || value < *best) best = value;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

bool full_row_rank(const LinearProgram& lp) {
    std::vector<std::vector<Q>> m(lp.rows, std::vector<Q>(lp.cols));
    for (std::size_t i = 0; i < lp.rows; ++i)
        for (std::size_t j = 0; j < lp.cols; ++j) m[i][j] = ref::q(lp.coef(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < lp.cols && rank < lp.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < lp.rows && m[pivot][col] == 0) ++pivot;
        if (pivot == lp.rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < lp.rows; ++r) {
            const Q f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < lp.cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank == lp.rows;
}

}  // namespace

TEST_CASE("simplex optimum matches vertex enumeration on random bounded programs") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-3, 4);
    int infeasible = 0, optimal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(trial % 3);
        const std::size_t cols = rows + 2 + static_cast<std::size_t>(trial % 3);
        LinearProgram lp(rows + 1, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) lp.coef(i, j) = coef(rng);
            lp.b[i] = coef(rng);
        }
        // A budget row keeps the feasible region bounded.
        for (std::size_t j = 0; j < cols; ++j) lp.coef(rows, j) = 1;
        lp.b[rows] = 5;
        lp.c.resize(cols);
        for (auto& c : lp.c) c = coef(rng);
        if (!full_row_rank(lp)) continue;

        const LpResult res = solve_lp(lp);
        const auto expected = vertex_minimum(lp);
        if (!expected) {
            ++infeasible;
            REQUIRE(res.status == LpStatus::infeasible);
            CHECK(verify_farkas(lp, res.farkas));
            continue;
        }
        ++optimal;
        REQUIRE(res.status == LpStatus::optimal);
        CHECK(ref::q(res.objective) == *expected);
        for (std::size_t i = 0; i < lp.rows; ++i) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < cols; ++j) lhs += lp.coef(i, j) * res.x[j];
            CHECK(lhs == lp.b[i]);
        }
        for (const auto& v : res.x) CHECK(v.sign() >= 0);
    }
    CHECK(infeasible > 10);
    CHECK(optimal > 10);
}

TEST_CASE("unbounded and degenerate programs") {
    LinearProgram ray(1, 2);
    ray.coef(0, 0) = 1;
    ray.coef(0, 1) = -1;
    ray.b[0] = 0;
    ray.c = {Rational(-1), Rational(0)};
    CHECK(solve_lp(ray).status == LpStatus::unbounded);

    LinearProgram feas(2, 3);
    feas.coef(0, 0) = 1;
    feas.coef(0, 1) = 1;
    feas.coef(1, 1) = 1;
    feas.coef(1, 2) = 1;
    feas.b = {Rational(1), Rational(1)};
    const auto res = solve_lp(feas);
    CHECK(res.status == LpStatus::optimal);
    CHECK(res.x[0] + res.x[1] == 1);
}

TEST_CASE("a Farkas certificate is rejected when it does not separate") {
    LinearProgram lp(1, 2);
    lp.coef(0, 0) = 1;
    lp.coef(0, 1) = 1;
    lp.b[0] = -1;
    const auto res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::infeasible);
    CHECK(verify_farkas(lp, res.farkas));
    CHECK(!verify_farkas(lp, {Rational(1)}));
    CHECK(!verify_farkas(lp, {Rational(0)}));
}

TEST_CASE("hull membership of generators and midpoints") {
    const DeterministicAssignment id(std::vector<ItemIndex>{0, 1, 2});
    const DeterministicAssignment cyc(std::vector<ItemIndex>{1, 2, 0});
    const DeterministicAssignment swp(std::vector<ItemIndex>{1, 0, 2});
    const std::vector<DeterministicAssignment> gens{id, cyc};

    auto self = hull_membership(RandomAssignment(cyc), gens);
    REQUIRE(self.decomposition);
    REQUIRE(self.decomposition->terms.size() == 1);
    CHECK(self.decomposition->terms[0].weight.is_one());

    RandomAssignment mid(3);
    mid.add_scaled(id, Rational(1, 2)).add_scaled(cyc, Rational(1, 2));
    auto half = hull_membership(mid, gens);
    REQUIRE(half.decomposition);
    CHECK(half.decomposition->reproduces(mid));
    for (const auto& t : half.decomposition->terms) CHECK(t.weight == Rational(1, 2));

    auto outside = hull_membership(RandomAssignment(swp), gens);
    CHECK(!outside.decomposition);
    CHECK(verify_farkas(outside.program, outside.farkas));
}

TEST_CASE("combination polytope ranges and forced weights") {
    const DeterministicAssignment id(std::vector<ItemIndex>{0, 1});
    const DeterministicAssignment swp(std::vector<ItemIndex>{1, 0});
    CombinationPolytope free(2, {id, swp});
    auto range = free.entry_range(0, 0);
    REQUIRE(range);
    CHECK(range->first == 0);
    CHECK(range->second == 1);
    CHECK(free.min_weight(0) == Rational(0));

    CombinationPolytope pinned(2, {id, swp}, {{{{0, 0, Rational(1)}}, Rational(1, 3)}});
    CHECK(pinned.min_weight(0) == Rational(1, 3));
    CHECK(pinned.any_point()->reproduces(RandomAssignment(id).add_scaled(id, Rational(-2, 3)).add_scaled(swp, Rational(2, 3))));

    CombinationPolytope empty(2, {id}, {{{{0, 1, Rational(1)}}, Rational(1)}});
    CHECK(!empty.any_point());
    CHECK(!empty.entry_range(0, 0));
}

TEST_CASE("share polytope with equal-treatment constraints") {
    const auto fig = fixtures::running_example();
    SharePolytope poly(fig.size(), sete_constraints(fig));
    auto c_range = poly.entry_range(fig.agent_index("3"), fig.item_index("c"));
    REQUIRE(c_range);
    CHECK(c_range->first == 0);
    CHECK(c_range->second == Rational(1, 4));
    auto point = poly.any_point();
    REQUIRE(point);
    CHECK(point->is_doubly_stochastic());
    CHECK(is_sete(*point, fig).holds);

    SharePolytope pair(2, {equal_entries(0, 1, 0)});
    auto r = pair.entry_range(0, 0);
    REQUIRE(r);
    CHECK(r->first == Rational(1, 2));
    CHECK(r->second == Rational(1, 2));
}
