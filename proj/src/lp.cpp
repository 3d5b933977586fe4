#include "rassign/lp.hpp"

#include <optional>

#include "rassign/errors.hpp"

namespace rassign {

LinearProgram::LinearProgram(std::size_t rows_, std::size_t cols_)
    : rows(rows_), cols(cols_), a(rows_ * cols_), b(rows_) {}

namespace {

class Tableau {
public:
    // Columns: original variables, then one artificial per row, then the right-hand side.
    Tableau(const LinearProgram& lp, std::vector<int>& row_sign)
        : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), cells_((m_ + 1) * width_), basis_(m_) {
        row_sign.assign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i) {
            bool flip = lp.b[i].sign() < 0;
            row_sign[i] = flip ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                const Rational& v = lp.coef(i, j);
                if (!v.is_zero()) at(i, j) = flip ? -v : v;
            }
            at(i, n_ + i) = 1;
            rhs(i) = flip ? -lp.b[i] : lp.b[i];
            basis_[i] = n_ + i;
        }
        alive_.assign(m_, true);
    }

    Rational& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
    Rational& rhs(std::size_t i) { return cells_[i * width_ + width_ - 1]; }
    std::size_t objective_row() const { return m_; }
    std::size_t basis(std::size_t i) const { return basis_[i]; }
    bool alive(std::size_t i) const { return alive_[i]; }
    std::size_t rows() const { return m_; }
    std::size_t originals() const { return n_; }

    void set_phase_one_objective() {
        std::size_t z = objective_row();
        for (std::size_t j = 0; j < width_; ++j) at(z, j) = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
                if (!at(i, j).is_zero()) at(z, j) -= at(i, j);
            rhs(z) -= rhs(i);
        }
    }

    void set_phase_two_objective(const std::vector<Rational>& c) {
        std::size_t z = objective_row();
        for (std::size_t j = 0; j < width_; ++j) at(z, j) = 0;
        for (std::size_t j = 0; j < n_; ++j) at(z, j) = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (!alive_[i]) continue;
            const Rational& cb = c[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (!at(i, j).is_zero()) at(z, j) -= cb * at(i, j);
        }
    }

    // Runs Bland's rule over columns [0, limit); returns false when unbounded.
    bool optimize(std::size_t limit) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit; ++j)
                if (at(objective_row(), j).sign() < 0) {
                    entering = j;
                    break;
                }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!alive_[i] || at(i, *entering).sign() <= 0) continue;
                Rational ratio = rhs(i) / at(i, *entering);
                if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best = std::move(ratio);
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        Rational inv = Rational(1) / at(r, s);
        for (std::size_t j = 0; j < width_; ++j)
            if (!at(r, j).is_zero()) at(r, j) *= inv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r || (i < m_ && !alive_[i])) continue;
            Rational factor = at(i, s);
            if (factor.is_zero()) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (!at(r, j).is_zero()) at(i, j) -= factor * at(r, j);
        }
        basis_[r] = s;
    }

    // After a zero-cost phase one, moves artificial variables out of the basis or drops redundant rows.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n_; ++j)
                if (!at(i, j).is_zero()) {
                    col = j;
                    break;
                }
            if (col)
                pivot(i, *col);
            else
                alive_[i] = false;
        }
    }

private:
    std::size_t m_, n_, width_;
    std::vector<Rational> cells_;
    std::vector<std::size_t> basis_;
    std::vector<bool> alive_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || (!lp.c.empty() && lp.c.size() != lp.cols))
        throw InputError("linear program has inconsistent dimensions");
    std::vector<int> row_sign;
    Tableau t(lp, row_sign);
    t.set_phase_one_objective();
    t.optimize(lp.cols);

    LpResult result;
    Rational phase_one = -t.rhs(t.objective_row());
    if (phase_one.sign() > 0) {
        result.status = LpStatus::infeasible;
        result.farkas.resize(lp.rows);
        for (std::size_t i = 0; i < lp.rows; ++i) {
            Rational y = Rational(1) - t.at(t.objective_row(), lp.cols + i);
            result.farkas[i] = row_sign[i] < 0 ? -y : y;
        }
        return result;
    }
    t.expel_artificials();
    if (!lp.c.empty()) {
        t.set_phase_two_objective(lp.c);
        if (!t.optimize(lp.cols)) {
            result.status = LpStatus::unbounded;
            return result;
        }
    }
    result.status = LpStatus::optimal;
    result.x.assign(lp.cols, Rational());
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (t.alive(i) && t.basis(i) < lp.cols) result.x[t.basis(i)] = t.rhs(i);
    for (std::size_t j = 0; j < lp.cols && !lp.c.empty(); ++j)
        if (!result.x[j].is_zero()) result.objective += lp.c[j] * result.x[j];
    return result;
}

bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
    if (y.size() != lp.rows) return false;
    for (std::size_t j = 0; j < lp.cols; ++j) {
        Rational dot;
        for (std::size_t i = 0; i < lp.rows; ++i)
            if (!y[i].is_zero() && !lp.coef(i, j).is_zero()) dot += y[i] * lp.coef(i, j);
        if (dot.sign() > 0) return false;
    }
    Rational rhs;
    for (std::size_t i = 0; i < lp.rows; ++i) rhs += y[i] * lp.b[i];
    return rhs.sign() > 0;
}

}  // namespace rassign
