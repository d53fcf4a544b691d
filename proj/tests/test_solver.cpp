#include <doctest.h>

#include "brute.hpp"
#include "properties.hpp"
#include "test_seed.hpp"
#include "zsdiam/solver.hpp"

using namespace zsdiam;

TEST_CASE("batch solver") {
    const ProblemSpec p34(3, 4, Mode::finite(2));
    CHECK_FALSE(has_solution(p34, parse_coloring("011001111000", p34)));

    const ProblemSpec p22(2, 2, Mode::finite(2));
    const Coloring zeros = parse_coloring("0000000", p22);
    const auto w = has_solution(p22, zeros);
    REQUIRE(w);
    CHECK(validate_witness(p22, zeros, *w));
    CHECK(w->s1 == PositionSet{1, 2});

    const ProblemSpec z22(2, 2, Mode::residues());
    const Coloring res = Coloring::from_values(std::vector<int>{1, 1, 0, 1, 1});
    const auto v = has_solution(z22, res);
    REQUIRE(v);
    CHECK(validate_witness(z22, res, *v));
    CHECK(brute::has_solution(z22, res));

    CHECK_FALSE(has_solution(p22, Coloring()));
    CHECK_FALSE(has_solution(p22, parse_coloring("000", p22)));
    CHECK_THROWS_AS(has_solution(p22, Coloring::from_values(std::vector<int>{0, 2})), SymbolModeMismatch);
}

TEST_CASE("prefix profile") {
    const ProblemSpec p(2, 2, Mode::finite(2));
    const auto a = prefix_profile(p, parse_coloring("0101", p));
    CHECK(a == std::vector<int>{kNoSet, kNoSet, kNoSet, 2, 2});
}

TEST_CASE("incremental solver") {
    const ProblemSpec p34(3, 4, Mode::finite(2));
    SolverState st(p34);
    for (char ch : std::string("01100")) CHECK_FALSE(st.push(Symbol::value(ch - '0')));
    CHECK_FALSE(st.push(Symbol::value(1)));
    CHECK_FALSE(has_solution(p34, parse_coloring("011001", p34)));

    const ProblemSpec p22(2, 2, Mode::finite(2));
    SolverState empty(p22);
    CHECK_FALSE(empty.push(Symbol::value(1)));
    CHECK_THROWS_AS(empty.push(Symbol::value(2)), SymbolModeMismatch);

    SolverState zeros(p22);
    for (int i = 0; i < 6; ++i) zeros.push(Symbol::value(0));
    CHECK(zeros.solved());
    CHECK(zeros.push(Symbol::value(0)));

    SolverState st2(p22);
    st2.push(Symbol::value(0));
    const SolverState before = st2;
    st2.push(Symbol::value(1));
    st2.pop();
    CHECK(st2 == before);

    SolverState none(p22);
    CHECK_THROWS_AS(none.pop(), Error);
}

TEST_CASE("incremental and batch agree on random schedules") {
    const auto rep = props::incremental_vs_batch(test_seed(), 200);
    CHECK_MESSAGE(rep.ok(), rep.first_failure);
}

TEST_CASE("solutions persist in extensions") {
    const ProblemSpec p(2, 3, Mode::infinity_residues());
    const Coloring c = parse_coloring("0,0,1,inf,3,3,3,0", p);
    const bool base = has_solution(p, c).has_value();
    for (int len = 0; len <= c.size(); ++len) {
        const bool prefix = has_solution(p, c.prefix(len)).has_value();
        if (prefix) CHECK(base);
    }
}
