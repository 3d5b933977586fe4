#pragma once

#include <cstddef>
#include <vector>

#include "rassign/rational.hpp"

namespace rassign {

// minimize c.x subject to A x = b, x >= 0, with A stored row-major.
struct LinearProgram {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;
    std::vector<Rational> b;
    std::vector<Rational> c;  // empty means pure feasibility

    LinearProgram(std::size_t rows, std::size_t cols);
    Rational& coef(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& coef(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;       // a basic optimal solution when status is optimal
    Rational objective;
    std::vector<Rational> farkas;  // when infeasible: y with y.A <= 0 and y.b > 0
};

// Two-phase dense tableau simplex with Bland's rule; exact, so it always terminates.
LpResult solve_lp(const LinearProgram& lp);

// Checks an infeasibility certificate independently of the solver.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y);

}  // namespace rassign
