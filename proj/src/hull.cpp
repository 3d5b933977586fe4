#include "rassign/hull.hpp"

#include "rassign/errors.hpp"

namespace rassign {

CombinationPolytope::CombinationPolytope(std::size_t n, std::vector<DeterministicAssignment> generators,
                                         std::vector<EntryConstraint> constraints)
    : n_(n), generators_(std::move(generators)), constraints_(std::move(constraints)) {
    for (const auto& g : generators_)
        if (g.size() != n_) throw InputError("generator size does not match");
}

LinearProgram CombinationPolytope::program(std::vector<Rational> objective) const {
    LinearProgram lp(1 + constraints_.size(), generators_.size());
    for (std::size_t g = 0; g < generators_.size(); ++g) lp.coef(0, g) = 1;
    lp.b[0] = 1;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            Rational v;
            for (const auto& term : constraints_[i].terms)
                if (generators_[g].item_of(term.agent) == term.item) v += term.coefficient;
            lp.coef(i + 1, g) = std::move(v);
        }
        lp.b[i + 1] = constraints_[i].rhs;
    }
    lp.c = std::move(objective);
    return lp;
}

ConvexDecomposition CombinationPolytope::to_decomposition(const std::vector<Rational>& weights) const {
    ConvexDecomposition out;
    for (std::size_t g = 0; g < weights.size(); ++g)
        if (weights[g].sign() > 0) out.terms.push_back({weights[g], generators_[g]});
    return out;
}

std::optional<ConvexDecomposition> CombinationPolytope::any_point() const {
    LpResult r = solve_lp(program({}));
    if (r.status != LpStatus::optimal) return std::nullopt;
    return to_decomposition(r.x);
}

std::optional<std::pair<Rational, Rational>> CombinationPolytope::entry_range(AgentIndex j, ItemIndex o) const {
    std::vector<Rational> c(generators_.size());
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (generators_[g].item_of(j) == o) c[g] = 1;
    LpResult lo = solve_lp(program(c));
    if (lo.status != LpStatus::optimal) return std::nullopt;
    for (auto& v : c) v = -v;
    LpResult hi = solve_lp(program(c));
    return std::make_pair(lo.objective, -hi.objective);
}

std::optional<Rational> CombinationPolytope::min_weight(std::size_t g) const {
    std::vector<Rational> c(generators_.size());
    c.at(g) = 1;
    LpResult r = solve_lp(program(c));
    if (r.status != LpStatus::optimal) return std::nullopt;
    return r.objective;
}

SharePolytope::SharePolytope(std::size_t n, std::vector<EntryConstraint> constraints)
    : n_(n), constraints_(std::move(constraints)) {
    for (const auto& c : constraints_)
        for (const auto& t : c.terms)
            if (t.agent >= n_ || t.item >= n_) throw InputError("constraint entry out of range");
}

LinearProgram SharePolytope::program(std::vector<Rational> objective) const {
    LinearProgram lp(2 * n_ + constraints_.size(), n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            lp.coef(i, i * n_ + k) = 1;
            lp.coef(n_ + i, k * n_ + i) = 1;
        }
        lp.b[i] = 1;
        lp.b[n_ + i] = 1;
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        for (const auto& t : constraints_[i].terms) lp.coef(2 * n_ + i, t.agent * n_ + t.item) += t.coefficient;
        lp.b[2 * n_ + i] = constraints_[i].rhs;
    }
    lp.c = std::move(objective);
    return lp;
}

std::optional<RandomAssignment> SharePolytope::any_point() const {
    LpResult r = solve_lp(program({}));
    if (r.status != LpStatus::optimal) return std::nullopt;
    RandomAssignment p(n_);
    for (AgentIndex j = 0; j < n_; ++j)
        for (ItemIndex o = 0; o < n_; ++o) p.at(j, o) = r.x[j * n_ + o];
    return p;
}

std::optional<std::pair<Rational, Rational>> SharePolytope::entry_range(AgentIndex j, ItemIndex o) const {
    std::vector<Rational> c(n_ * n_);
    c.at(j * n_ + o) = 1;
    LpResult lo = solve_lp(program(c));
    if (lo.status != LpStatus::optimal) return std::nullopt;
    c[j * n_ + o] = -1;
    LpResult hi = solve_lp(program(c));
    return std::make_pair(lo.objective, -hi.objective);
}

EntryConstraint equal_entries(AgentIndex j, AgentIndex k, ItemIndex o) {
    return {{{j, o, Rational(1)}, {k, o, Rational(-1)}}, Rational(0)};
}

HullResult hull_membership(const RandomAssignment& target, std::span<const DeterministicAssignment> generators) {
    const std::size_t n = target.size();
    HullResult out;
    out.program = LinearProgram(n * n + 1, generators.size());
    LinearProgram& lp = out.program;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (generators[g].size() != n) throw InputError("generator size does not match target");
        lp.coef(n * n, g) = 1;
        for (AgentIndex j = 0; j < n; ++j) lp.coef(j * n + generators[g].item_of(j), g) = 1;
    }
    for (AgentIndex j = 0; j < n; ++j)
        for (ItemIndex o = 0; o < n; ++o) lp.b[j * n + o] = target.at(j, o);
    lp.b[n * n] = 1;
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::optimal) {
        ConvexDecomposition d;
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (r.x[g].sign() > 0) d.terms.push_back({r.x[g], generators[g]});
        out.decomposition = std::move(d);
    } else {
        out.farkas = std::move(r.farkas);
    }
    return out;
}

}  // namespace rassign
