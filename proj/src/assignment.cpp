#include "rassign/assignment.hpp"

#include <algorithm>
#include <numeric>

#include "rassign/errors.hpp"

namespace rassign {

DeterministicAssignment::DeterministicAssignment(std::vector<ItemIndex> item_of)
    : item_of_(std::move(item_of)), holder_of_(item_of_.size(), 0) {
    std::vector<bool> seen(item_of_.size(), false);
    for (AgentIndex j = 0; j < item_of_.size(); ++j) {
        ItemIndex o = item_of_[j];
        if (o >= item_of_.size() || seen[o]) throw InputError("assignment is not a bijection");
        seen[o] = true;
        holder_of_[o] = j;
    }
}

RandomAssignment::RandomAssignment(const DeterministicAssignment& a) : RandomAssignment(a.size()) {
    for (AgentIndex j = 0; j < n_; ++j) at(j, a.item_of(j)) = 1;
}

bool RandomAssignment::is_doubly_stochastic() const {
    for (std::size_t j = 0; j < n_; ++j) {
        Rational row_sum, col_sum;
        for (std::size_t o = 0; o < n_; ++o) {
            const Rational& v = at(j, o);
            if (v.sign() < 0 || v > 1) return false;
            row_sum += v;
            col_sum += at(o, j);
        }
        if (!row_sum.is_one() || !col_sum.is_one()) return false;
    }
    return true;
}

bool RandomAssignment::is_deterministic() const {
    if (!is_doubly_stochastic()) return false;
    return std::all_of(cells_.begin(), cells_.end(), [](const Rational& v) { return v.is_zero() || v.is_one(); });
}

DeterministicAssignment RandomAssignment::to_deterministic() const {
    if (!is_deterministic()) throw InputError("matrix is not a permutation matrix");
    std::vector<ItemIndex> item_of(n_);
    for (AgentIndex j = 0; j < n_; ++j)
        for (ItemIndex o = 0; o < n_; ++o)
            if (at(j, o).is_one()) item_of[j] = o;
    return DeterministicAssignment(std::move(item_of));
}

RandomAssignment& RandomAssignment::add_scaled(const RandomAssignment& other, const Rational& weight) {
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (!other.cells_[i].is_zero()) cells_[i] += other.cells_[i] * weight;
    return *this;
}

RandomAssignment& RandomAssignment::add_scaled(const DeterministicAssignment& other, const Rational& weight) {
    for (AgentIndex j = 0; j < n_; ++j) at(j, other.item_of(j)) += weight;
    return *this;
}

void validate_doubly_stochastic(const RandomAssignment& p) {
    if (p.size() == 0) throw InputError("empty assignment matrix");
    if (!p.is_doubly_stochastic())
        throw InputError("matrix is not doubly stochastic (entries in [0,1], rows and columns summing to 1)");
}

PriorityOrder::PriorityOrder(std::vector<AgentIndex> order) : order_(std::move(order)), position_(order_.size(), 0) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        AgentIndex j = order_[pos];
        if (j >= order_.size() || seen[j]) throw InputError("priority is not a permutation of the agents");
        seen[j] = true;
        position_[j] = pos;
    }
}

PriorityOrder PriorityOrder::identity(std::size_t n) {
    std::vector<AgentIndex> order(n);
    std::iota(order.begin(), order.end(), AgentIndex{0});
    return PriorityOrder(std::move(order));
}

PriorityDistribution::PriorityDistribution(std::map<PriorityOrder, Rational> weights) : weights_(std::move(weights)) {
    Rational total;
    for (const auto& [order, w] : weights_) {
        if (w.sign() < 0) throw InputError("negative priority weight");
        total += w;
    }
    if (!total.is_one()) throw InputError("priority weights must sum to 1");
}

PriorityDistribution PriorityDistribution::uniform(std::size_t n, const Budget& budget) {
    require_factorial_budget(n, budget, "uniform priority distribution");
    Rational w(1, static_cast<std::int64_t>(factorial(n)));
    std::map<PriorityOrder, Rational> weights;
    for_each_permutation(n, [&](std::span<const std::size_t> perm) {
        weights.emplace(PriorityOrder(std::vector<AgentIndex>(perm.begin(), perm.end())), w);
        return true;
    });
    return PriorityDistribution(std::move(weights));
}

PriorityDistribution PriorityDistribution::point(PriorityOrder order) {
    std::map<PriorityOrder, Rational> weights;
    weights.emplace(std::move(order), Rational(1));
    return PriorityDistribution(std::move(weights));
}

RandomAssignment ConvexDecomposition::sum(std::size_t n) const {
    RandomAssignment out(n);
    for (const auto& term : terms) out.add_scaled(term.assignment, term.weight);
    return out;
}

bool ConvexDecomposition::reproduces(const RandomAssignment& target) const {
    Rational total;
    for (const auto& term : terms) {
        if (term.weight.sign() <= 0) return false;
        if (term.assignment.size() != target.size()) return false;
        total += term.weight;
    }
    return total.is_one() && sum(target.size()) == target;
}

Rational cumulative_share(std::span<const Rational> row, const Ranking& pref, ItemIndex item) {
    Rational acc;
    for (ItemIndex o : pref.order()) {
        acc += row[o];
        if (o == item) break;
    }
    return acc;
}

bool sd_dominates(std::span<const Rational> p, std::span<const Rational> q, const Ranking& pref) {
    if (p.size() != q.size() || p.size() != pref.size()) throw InputError("allocation rows of different shapes");
    Rational cp, cq;
    for (ItemIndex o : pref.order()) {
        cp += p[o];
        cq += q[o];
        if (cp < cq) return false;
    }
    return true;
}

namespace {

// Kuhn's augmenting paths; agents processed in index order, items tried in index order.
class SupportMatcher {
public:
    explicit SupportMatcher(const RandomAssignment& p) : p_(p), n_(p.size()), holder_(n_, kNone) {}

    std::vector<ItemIndex> perfect_matching() {
        std::fill(holder_.begin(), holder_.end(), kNone);
        for (AgentIndex j = 0; j < n_; ++j) {
            visited_.assign(n_, false);
            if (!augment(j)) throw InputError("positive support has no perfect matching");
        }
        std::vector<ItemIndex> item_of(n_);
        for (ItemIndex o = 0; o < n_; ++o) item_of[holder_[o]] = o;
        return item_of;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool augment(AgentIndex j) {
        for (ItemIndex o = 0; o < n_; ++o) {
            if (visited_[o] || p_.at(j, o).sign() <= 0) continue;
            visited_[o] = true;
            if (holder_[o] == kNone || augment(holder_[o])) {
                holder_[o] = j;
                return true;
            }
        }
        return false;
    }

    const RandomAssignment& p_;
    std::size_t n_;
    std::vector<AgentIndex> holder_;
    std::vector<bool> visited_;
};

}  // namespace

ConvexDecomposition bvn_decompose(const RandomAssignment& p) {
    validate_doubly_stochastic(p);
    const std::size_t n = p.size();
    RandomAssignment rest = p;
    Rational remaining(1);
    ConvexDecomposition out;
    while (remaining.sign() > 0) {
        SupportMatcher matcher(rest);
        std::vector<ItemIndex> item_of = matcher.perfect_matching();
        Rational weight = rest.at(0, item_of[0]);
        for (AgentIndex j = 1; j < n; ++j) weight = min(weight, rest.at(j, item_of[j]));
        for (AgentIndex j = 0; j < n; ++j) rest.at(j, item_of[j]) -= weight;
        remaining -= weight;
        out.terms.push_back({weight, DeterministicAssignment(std::move(item_of))});
    }
    return out;
}

void for_each_permutation(std::size_t n, const std::function<bool(std::span<const std::size_t>)>& visit) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        if (!visit(perm)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

void require_factorial_budget(std::size_t n, const Budget& budget, const std::string& what) {
    if (n > budget.max_factorial_n)
        throw ResourceError(what + ": n = " + std::to_string(n) + " exceeds the enumeration bound n <= " +
                            std::to_string(budget.max_factorial_n));
}

}  // namespace rassign
