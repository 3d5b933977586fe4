#include <doctest.h>

#include <limits>
#include <random>
#include <set>

#include "reference.hpp"
#include "rassign/assignment.hpp"
#include "rassign/errors.hpp"
#include "rassign/fixtures.hpp"
#include "rassign/profile.hpp"
#include "rassign/rational.hpp"

using namespace rassign;

namespace {

std::set<std::string> names(const PreferenceProfile& profile, ItemSet s) {
    std::set<std::string> out;
    for (ItemIndex o : s.members()) out.insert(profile.item_name(o));
    return out;
}

}  // namespace

TEST_CASE("rational normalises sign and lowest terms") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(3, -6).to_string() == "-1/2");
    CHECK(Rational(0, 7).to_string() == "0/1");
    CHECK(Rational(5).to_string() == "5/1");
    CHECK(Rational::parse("6/8") == Rational(3, 4));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rational::parse("x/2"), InputError);
    CHECK_THROWS_AS(Rational::parse(""), InputError);
}

TEST_CASE("rational arithmetic agrees with GMP, including past 64 bits") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> small(-1000, 1000);
    std::uniform_int_distribution<std::int64_t> huge(std::numeric_limits<std::int64_t>::min() / 2,
                                                    std::numeric_limits<std::int64_t>::max() / 2);
    for (int trial = 0; trial < 2000; ++trial) {
        auto draw = [&] {
            std::int64_t num = trial % 2 ? huge(rng) : small(rng);
            std::int64_t den = trial % 3 ? huge(rng) : small(rng);
            if (den == 0) den = 1;
            return Rational(num, den);
        };
        Rational a = draw();
        Rational b = draw();
        ref::Q qa = ref::q(a), qb = ref::q(b);
        CHECK(ref::q(a + b) == qa + qb);
        CHECK(ref::q(a - b) == qa - qb);
        CHECK(ref::q(a * b) == qa * qb);
        if (!b.is_zero()) CHECK(ref::q(a / b) == qa / qb);
        CHECK((a < b) == (qa < qb));
        CHECK((a == b) == (qa == qb));
        CHECK(Rational::parse(a.to_string()) == a);
    }
}

TEST_CASE("rational copies and moves across the big representation") {
    Rational big = Rational(std::numeric_limits<std::int64_t>::max()) * Rational(4);
    Rational copy = big;
    CHECK(copy == big);
    Rational moved = std::move(copy);
    CHECK(moved == big);
    CHECK((moved / big).is_one());
    Rational shrink = big - big + Rational(1, 3);
    CHECK(shrink.to_string() == "1/3");
}

TEST_CASE("rank positions on the running example") {
    const auto profile = fixtures::running_example();
    CHECK(rank_of(profile.ranking(5), profile.item_index("f")) == 6);
    CHECK(rank_of(profile.ranking(0), profile.item_index("a")) == 1);
    CHECK(rank_of(profile.ranking(2), profile.item_index("d")) == 3);
    CHECK_THROWS_AS(profile.ranking(0).rank_of(17), InputError);
}

TEST_CASE("best item among a subset") {
    const auto profile = fixtures::running_example();
    ItemSet def;
    for (const char* id : {"d", "e", "f"}) def.insert(profile.item_index(id));
    CHECK(profile.item_name(top_among(profile.ranking(4), def)) == "e");
    CHECK(profile.item_name(top_among(profile.ranking(5), def)) == "d");
    CHECK(top_among(profile.ranking(2), ItemSet::full(6)) == profile.ranking(2).top());
    CHECK_THROWS_AS(top_among(profile.ranking(0), ItemSet{}), InputError);
}

TEST_CASE("upper contour sets") {
    const auto profile = fixtures::running_example();
    CHECK(names(profile, upper_contour(profile.ranking(2), profile.item_index("d"))) ==
          std::set<std::string>{"c", "e", "d"});
    CHECK(upper_contour(profile.ranking(1), profile.ranking(1).top()) ==
          ItemSet::single(profile.ranking(1).top()));
    const auto eight = fixtures::eight_agent_manipulation();
    CHECK(names(eight, upper_contour(eight.ranking(7), eight.item_index("e"))) ==
          std::set<std::string>{"c", "d", "b", "e"});
    CHECK_THROWS_AS(upper_contour(profile.ranking(0), 40), InputError);
}

TEST_CASE("common prefixes") {
    const auto profile = fixtures::running_example();
    CHECK(common_prefix(profile.ranking(2), profile.ranking(3)).size() == 6);
    CHECK(common_prefix(profile.ranking(0), profile.ranking(1)).empty());
    const auto four = fixtures::four_agent_envy();
    const auto prefix = common_prefix(four.ranking(0), four.ranking(2));
    REQUIRE(prefix.size() == 1);
    CHECK(four.item_name(prefix[0]) == "a");
    CHECK_THROWS_AS(common_prefix(profile.ranking(0), four.ranking(0)), InputError);
}

TEST_CASE("profiles reject malformed rankings and unknown ids") {
    CHECK_THROWS_AS(PreferenceProfile::numbered({"a", "b"}, {{"a", "b"}, {"a", "a"}}), InputError);
    CHECK_THROWS_AS(PreferenceProfile::numbered({"a", "b"}, {{"a", "b"}}), InputError);
    CHECK_THROWS_AS(PreferenceProfile::numbered({"a", "b"}, {{"a", "b"}, {"a", "z"}}), InputError);
    const auto profile = fixtures::three_agent();
    CHECK_THROWS_AS(profile.agent_index("9"), InputError);
    CHECK_THROWS_AS(profile.item_index("z"), InputError);
    const auto swapped = profile.with_ranking(0, profile.ranking(2));
    CHECK(swapped.ranking(0) == profile.ranking(2));
    CHECK(swapped.ranking(1) == profile.ranking(1));
}

TEST_CASE("index sets") {
    ItemSet s = ItemSet::full(5);
    CHECK(s.size() == 5);
    s.erase(2);
    CHECK(!s.contains(2));
    CHECK(s.members() == std::vector<std::size_t>{0, 1, 3, 4});
    CHECK(ItemSet::single(3).subset_of(s));
    CHECK(ItemSet::full(64).size() == 64);
}

TEST_CASE("stochastic dominance on rows") {
    const auto three = fixtures::three_agent();
    const auto ps = fixtures::three_agent_ps();
    CHECK(sd_dominates(ps.row(0), ps.row(0), three.ranking(0)));
    CHECK(sd_dominates(ps.row(0), ps.row(1), three.ranking(0)));
    CHECK(!sd_dominates(ps.row(1), ps.row(0), three.ranking(0)));

    const auto fig = fixtures::running_example();
    const auto table = fixtures::running_example_sete_table();
    const Ranking& six = fig.ranking(5);
    CHECK(sd_dominates(table.row(2), table.row(5), six));
    CHECK(table.row(2)[fig.item_index("e")] != table.row(5)[fig.item_index("e")]);
    CHECK(cumulative_share(table.row(2), six, fig.item_index("d")) == Rational(7, 12));
    CHECK(cumulative_share(table.row(5), six, fig.item_index("d")) == Rational(1, 4));
    CHECK(cumulative_share(table.row(2), six, fig.item_index("e")) == Rational(11, 12));
    CHECK(cumulative_share(table.row(5), six, fig.item_index("e")) == Rational(1, 4));
}

TEST_CASE("doubly stochastic validation") {
    RandomAssignment p(2);
    p.at(0, 0) = Rational(1, 2);
    p.at(0, 1) = Rational(1, 2);
    p.at(1, 0) = Rational(1, 2);
    CHECK_THROWS_AS(validate_doubly_stochastic(p), InputError);
    p.at(1, 1) = Rational(1, 2);
    CHECK_NOTHROW(validate_doubly_stochastic(p));
    CHECK(!p.is_deterministic());
    p.at(0, 0) = Rational(3, 2);
    p.at(0, 1) = Rational(-1, 2);
    CHECK_THROWS_AS(validate_doubly_stochastic(p), InputError);
}

TEST_CASE("Birkhoff decomposition of small matrices") {
    const DeterministicAssignment perm(std::vector<ItemIndex>{2, 0, 1});
    auto single = bvn_decompose(RandomAssignment(perm));
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].weight.is_one());
    CHECK(single.terms[0].assignment == perm);

    RandomAssignment half(2);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t o = 0; o < 2; ++o) half.at(j, o) = Rational(1, 2);
    auto two = bvn_decompose(half);
    REQUIRE(two.terms.size() == 2);
    CHECK(two.terms[0].weight == Rational(1, 2));
    CHECK(two.terms[1].weight == Rational(1, 2));
    CHECK(two.terms[0].assignment != two.terms[1].assignment);

    const auto upre = fixtures::running_example_upre();
    CHECK(bvn_decompose(upre).reproduces(upre));

    RandomAssignment broken(2);
    broken.at(0, 0) = 1;
    CHECK_THROWS_AS(bvn_decompose(broken), InputError);
}

TEST_CASE("Birkhoff decomposition reproduces random mixtures exactly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 4);
        RandomAssignment p(n);
        std::uniform_int_distribution<int> weight(1, 9);
        std::vector<int> w(4);
        int total = 0;
        for (int& x : w) total += x = weight(rng);
        for (int x : w) {
            std::vector<ItemIndex> items(n);
            std::iota(items.begin(), items.end(), 0);
            std::shuffle(items.begin(), items.end(), rng);
            p.add_scaled(DeterministicAssignment(items), Rational(x, total));
        }
        auto d = bvn_decompose(p);
        CHECK(d.reproduces(p));
        CHECK(d.terms.size() <= (n - 1) * (n - 1) + 1);
    }
}

TEST_CASE("permutation enumeration and budgets") {
    std::size_t count = 0;
    std::vector<std::size_t> last;
    for_each_permutation(4, [&](std::span<const std::size_t> p) {
        std::vector<std::size_t> cur(p.begin(), p.end());
        if (count > 0) CHECK(last < cur);
        last = cur;
        ++count;
        return true;
    });
    CHECK(count == 24);
    CHECK(factorial(6) == 720);
    Budget tight;
    tight.max_factorial_n = 3;
    CHECK_THROWS_AS(require_factorial_budget(4, tight, "test"), ResourceError);
    CHECK_NOTHROW(require_factorial_budget(3, tight, "test"));
}

TEST_CASE("priority orders and distributions") {
    const PriorityOrder order(std::vector<AgentIndex>{1, 0, 2});
    CHECK(order.position(1) == 0);
    CHECK(order.ranks_higher(0, 2));
    CHECK_THROWS_AS(PriorityOrder(std::vector<AgentIndex>{0, 0, 1}), InputError);
    const auto uniform = PriorityDistribution::uniform(4);
    CHECK(uniform.weights().size() == 24);
    Rational total = 0;
    for (const auto& [o, w] : uniform.weights()) total += w;
    CHECK(total.is_one());
    std::map<PriorityOrder, Rational> bad{{order, Rational(1, 2)}};
    CHECK_THROWS_AS(PriorityDistribution{bad}, InputError);
}
