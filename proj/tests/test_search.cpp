#include <doctest.h>

#include "brute.hpp"
#include "zsdiam/search.hpp"

using namespace zsdiam;

namespace {

SearchLimits limits(int workers = 1, int split = 4) {
    SearchLimits l;
    l.workers = workers;
    l.split_depth = split;
    l.max_n = 40;
    return l;
}

}  // namespace

TEST_CASE("exact values on small instances") {
    struct Case {
        int s, r;
        Mode mode;
        int f;
    };
    for (const Case& c : {Case{2, 2, Mode::finite(2), 7}, Case{3, 4, Mode::finite(2), 13},
                          Case{3, 5, Mode::finite(2), 14}, Case{3, 3, Mode::residues(), 12}}) {
        const ProblemSpec spec(c.s, c.r, c.mode);
        const auto res = compute_f(spec, limits());
        CHECK(res.status == SearchStatus::Exact);
        CHECK(res.value() == c.f);
        REQUIRE(res.counterexample);
        CHECK(res.counterexample->size() == c.f - 1);
        CHECK_FALSE(has_solution(spec, *res.counterexample));
    }
}

TEST_CASE("search agrees with plain enumeration") {
    for (const ProblemSpec& spec :
         {ProblemSpec(2, 2, Mode::finite(2)), ProblemSpec(2, 3, Mode::finite(2)), ProblemSpec(3, 3, Mode::finite(2)),
          ProblemSpec(2, 2, Mode::residues()), ProblemSpec(2, 2, Mode::finite(3)),
          ProblemSpec(2, 2, Mode::infinity_residues())}) {
        const int expect =
            brute::f_by_enumeration(spec, [&](const Coloring& c) { return has_solution(spec, c).has_value(); });
        CHECK_MESSAGE(compute_f(spec, limits()).value() == expect, spec.to_string());
    }
}

TEST_CASE("exact values do not depend on the worker count or split depth") {
    const ProblemSpec spec(2, 4, Mode::finite(3));
    const auto one = compute_f(spec, limits(1, 4));
    const auto three = compute_f(spec, limits(3, 2));
    const auto deep = compute_f(spec, limits(2, 6));
    CHECK(one.value() == 14);
    CHECK(three.value() == one.value());
    CHECK(deep.value() == one.value());
    CHECK(three.counterexample == one.counterexample);
    CHECK(deep.counterexample == one.counterexample);
}

TEST_CASE("budgets") {
    SearchLimits l = limits();
    l.max_n = 10;
    const auto capped = compute_f(ProblemSpec(3, 3, Mode::infinity_residues()), l);
    CHECK(capped.status == SearchStatus::LowerBoundOnly);
    CHECK(capped.lower_bound() == 11);
    CHECK_FALSE(capped.value());

    SearchLimits tiny = limits();
    tiny.node_budget = 100;
    const auto cut = compute_f(ProblemSpec(3, 4, Mode::finite(3)), tiny);
    CHECK(cut.status == SearchStatus::BudgetExceeded);
    REQUIRE(cut.counterexample);
    CHECK_FALSE(has_solution(ProblemSpec(3, 4, Mode::finite(3)), *cut.counterexample));
    CHECK_THROWS_AS(find_counterexample(ProblemSpec(4, 6, Mode::finite(2)), 19, tiny), BudgetExceeded);

    SearchLimits bad;
    bad.max_n = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("counterexamples at a fixed length") {
    const ProblemSpec spec(3, 4, Mode::finite(2));
    const auto c12 = find_counterexample(spec, 12, limits());
    REQUIRE(c12);
    CHECK(c12->size() == 12);
    CHECK_FALSE(has_solution(spec, *c12));
    CHECK_FALSE(find_counterexample(spec, 13, limits()));
    const auto empty = find_counterexample(ProblemSpec(2, 2, Mode::finite(2)), 0, limits());
    REQUIRE(empty);
    CHECK(empty->empty());
}

TEST_CASE("canonical branching") {
    const ProblemSpec three(2, 2, Mode::finite(3));
    CHECK(canonical_candidates(three, Coloring()) == std::vector<Symbol>{Symbol::value(0)});
    CHECK_FALSE(is_canonical(three, Coloring::from_values(std::vector<int>{2, 0})));
    CHECK_FALSE(is_canonical(three, Coloring::from_values(std::vector<int>{0, 2})));
    CHECK(is_canonical(three, Coloring::from_values(std::vector<int>{0, 1, 2})));
    CHECK(canonical_first_symbol_rule(three).kind == SymmetryRule::Kind::FirstUseColorOrder);

    const ProblemSpec two(2, 2, Mode::finite(2));
    for (int n = 1; n <= 10; ++n) CHECK(count_canonical(two, n) == (1ULL << (n - 1)));

    const ProblemSpec z(2, 3, Mode::residues());
    CHECK(canonical_first_symbol_rule(z).kind == SymmetryRule::Kind::FirstResidueZero);
    CHECK(canonical_candidates(z, Coloring()) == std::vector<Symbol>{Symbol::value(0)});
    CHECK(count_canonical(z, 3) == 36);

    const ProblemSpec zi(2, 2, Mode::infinity_residues());
    const auto first = canonical_candidates(zi, Coloring());
    CHECK(first == std::vector<Symbol>{Symbol::value(0), Symbol::infinity()});
    const auto after_inf = canonical_candidates(zi, Coloring::from_values(std::vector<int>{-1}));
    CHECK(after_inf == std::vector<Symbol>{Symbol::value(0), Symbol::infinity()});
}
