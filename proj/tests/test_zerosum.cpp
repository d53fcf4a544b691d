#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "test_seed.hpp"
#include "zsdiam/zerosum.hpp"

using namespace zsdiam;

namespace {

bool brute_zero_sum(const std::vector<int>& values, int m, int modulus, const std::vector<int>& anchors) {
    bool found = false;
    brute::subsets(1, static_cast<int>(values.size()), m, [&](const PositionSet& set) {
        for (int a : anchors)
            if (std::find(set.begin(), set.end(), a) == set.end()) return true;
        long long sum = 0;
        for (int p : set) sum += values[static_cast<std::size_t>(p - 1)];
        found = sum % modulus == 0;
        return !found;
    });
    return found;
}

}  // namespace

TEST_CASE("residue mask rotation") {
    for (int modulus : {5, 64, 70, 130}) {
        ResidueMask a(modulus);
        a.set(0);
        a.set(3);
        a.set(modulus - 1);
        ResidueMask out(modulus);
        out.or_rotated(a, 2);
        for (int v = 0; v < modulus; ++v) {
            const bool expect = v == 2 || v == 5 % modulus || v == (modulus + 1) % modulus;
            CHECK_MESSAGE(out.test(v) == expect, "modulus " << modulus << " residue " << v);
        }
    }
}

TEST_CASE("subset sum table") {
    SubsetSumTable t(3, 5);
    for (int v : {1, 2, 4}) t.add(v);
    CHECK(t.reachable(0, 0));
    CHECK(t.reachable(1, 4));
    CHECK(t.reachable(2, 1));  // 2 + 4
    CHECK(t.reachable(3, 2));  // 1 + 2 + 4
    CHECK_FALSE(t.reachable(3, 0));
    CHECK_FALSE(t.reachable(1, 3));
    t.reset();
    CHECK_FALSE(t.reachable(1, 1));
}

TEST_CASE("zero-sum subset existence") {
    CHECK(exists_zero_sum_subset(std::vector<int>{1, 2, 0}, 3, 3));
    CHECK_FALSE(exists_zero_sum_subset(std::vector<int>{0, 0, 1, 1}, 3, 3));
    CHECK(exists_zero_sum_subset(std::vector<int>{1, 1, 1, 0, 2}, 3, 3, std::vector<int>{1, 5}));
    CHECK_FALSE(exists_zero_sum_subset(std::vector<int>{}, 1, 3));
    CHECK_FALSE(exists_zero_sum_subset(std::vector<int>{0, 0}, 3, 3));
    CHECK_THROWS_AS(exists_zero_sum_subset(std::vector<int>{0, 0}, 2, 3, std::vector<int>{3}), Error);

    std::mt19937_64 rng(test_seed());
    for (int k = 0; k < 300; ++k) {
        const int n = std::uniform_int_distribution<int>(0, 9)(rng);
        const int modulus = std::uniform_int_distribution<int>(2, 7)(rng);
        const int m = std::uniform_int_distribution<int>(1, 5)(rng);
        std::vector<int> values;
        for (int i = 0; i < n; ++i) values.push_back(std::uniform_int_distribution<int>(0, modulus - 1)(rng));
        std::vector<int> anchors;
        if (n > 0 && rng() % 2) anchors.push_back(std::uniform_int_distribution<int>(1, n)(rng));
        CHECK(exists_zero_sum_subset(values, m, modulus, anchors) == brute_zero_sum(values, m, modulus, anchors));
    }
}

TEST_CASE("least subset with a given sum") {
    const auto least = least_subset_with_sum(std::vector<int>{1, 1, 1, 0, 2}, 3, 0, 3);
    REQUIRE(least);
    CHECK(*least == std::vector<int>{0, 1, 2});
    const auto other = least_subset_with_sum(std::vector<int>{1, 1, 1, 0, 2}, 2, 2, 3);
    REQUIRE(other);
    CHECK(*other == std::vector<int>{0, 1});
    CHECK_FALSE(least_subset_with_sum(std::vector<int>{0, 0, 1, 1}, 3, 0, 3));
}

TEST_CASE("extremal valid sets") {
    const Coloring alt = Coloring::from_values(std::vector<int>{0, 1, 0, 1});
    auto a = min_diam_valid(alt, 2, ValidityKind::mono(), 4);
    REQUIRE(a);
    CHECK(a->diameter == 2);
    CHECK(a->set == PositionSet{1, 3});
    auto b = max_diam_valid(alt, 2, ValidityKind::mono(), 1);
    REQUIRE(b);
    CHECK(b->diameter == 2);
    CHECK(b->set == PositionSet{1, 3});

    const Coloring zeros = Coloring::from_values(std::vector<int>(7, 0));
    auto c = max_diam_valid(zeros, 2, ValidityKind::mono(), 3);
    REQUIRE(c);
    CHECK(c->diameter == 4);
    CHECK(c->set == PositionSet{3, 7});

    const Coloring res = Coloring::from_values(std::vector<int>{1, 1, 1, 0, 2});
    auto d = min_diam_valid(res, 3, ValidityKind::zero_sum(3), 5);
    REQUIRE(d);
    CHECK(d->diameter == 2);
    CHECK(d->set == PositionSet{1, 2, 3});
    auto e = min_diam_valid(res, 3, ValidityKind::zero_sum(3), 3);
    REQUIRE(e);
    CHECK(e->set == PositionSet{1, 2, 3});
    auto f = max_diam_valid(res, 3, ValidityKind::zero_sum(3), 1);
    REQUIRE(f);
    CHECK(f->diameter == 4);
    CHECK(f->set == PositionSet{1, 4, 5});
    CHECK_FALSE(min_diam_valid(res, 3, ValidityKind::zero_sum(3), 2));
    CHECK_THROWS_AS(min_diam_valid(res, 3, ValidityKind::zero_sum(3), 6), Error);

    const Coloring mixed = Coloring::from_values(std::vector<int>{-1, 1, -1, 1});
    auto g = min_diam_valid(mixed, 2, ValidityKind::infinity_mono_or_zero_sum(2), 4);
    REQUIRE(g);
    CHECK(g->set == PositionSet{1, 3});
    CHECK(classify_set(mixed, g->set, ValidityKind::infinity_mono_or_zero_sum(2)) == SetKind::infinity_mono());
    CHECK(classify_set(mixed, PositionSet{2, 4}, ValidityKind::infinity_mono_or_zero_sum(2)) == SetKind::zero_sum());
}

TEST_CASE("EGZ oracle") {
    for (int m = 2; m <= 4; ++m) {
        CHECK(egz_oracle(m, 2 * m - 1).holds);
        const auto tight = egz_oracle(m, 2 * m - 2);
        CHECK_FALSE(tight.holds);
        std::vector<int> expect(static_cast<std::size_t>(m - 1), 0);
        expect.insert(expect.end(), static_cast<std::size_t>(m - 1), 1);
        CHECK(tight.counterexample == expect);
    }
    CHECK(egz_oracle(3, 4).counterexample == std::vector<int>{0, 0, 1, 1});
    CHECK_THROWS_AS(egz_oracle(5, 30, OracleBudget{10}), BudgetExceeded);
}

TEST_CASE("three-value oracle") {
    CHECK(three_color_egz_oracle(3).with_three_values.holds);
    const auto four = three_color_egz_oracle(4);
    CHECK(four.with_three_values.holds);
    REQUIRE(four.two_value_failure);
    CHECK_FALSE(exists_zero_sum_subset(*four.two_value_failure, 4, 4));
    CHECK_FALSE(exists_zero_sum_subset(std::vector<int>{0, 0, 0, 1, 1, 1}, 4, 4));
}

TEST_CASE("coset oracle") {
    const auto used = coset_egz_oracle(4, 2, CosetReading::AsUsed);
    CHECK(used.main.holds);
    CHECK(used.tight());
    REQUIRE(used.shorter.counterexample);
    CHECK_FALSE(exists_zero_sum_subset(*used.shorter.counterexample, 4, 4));

    CHECK(coset_egz_oracle(2, 2, CosetReading::Stated).main.holds);
    CHECK(coset_egz_oracle(6, 3, CosetReading::AsUsed).main.holds);
    CHECK_THROWS_AS(coset_egz_oracle(6, 4, CosetReading::AsUsed), Error);
}
