#include <doctest.h>

#include "zsdiam/formulas.hpp"

using namespace zsdiam;

namespace {

std::optional<int> f(int s, int r, Mode mode) { return closed_form(ProblemSpec(s, r, mode)).value; }

}  // namespace

TEST_CASE("closed forms at sample points") {
    CHECK(f(3, 3, Mode::finite(2)) == 12);
    CHECK(closed_form(ProblemSpec(3, 3, Mode::finite(2))).case_label == "s = r");
    CHECK(f(3, 4, Mode::finite(2)) == 13);
    CHECK(f(4, 6, Mode::residues()) == 19);
    CHECK(f(3, 3, Mode::finite(3)) == 20);
    CHECK(f(3, 7, Mode::finite(3)) == 26);
    CHECK(f(3, 3, Mode::infinity_residues()) == 20);
    CHECK(f(2, 4, Mode::residues()) == 10);
    CHECK(f(2, 4, Mode::finite(3)) == 14);
    CHECK(f(2, 2, Mode::infinity_residues()) == 11);
    CHECK(f(4, 4, Mode::finite(5)) == std::nullopt);
}

TEST_CASE("coprime middle branch is flagged") {
    const auto r = closed_form(ProblemSpec(4, 5, Mode::residues()));
    CHECK_FALSE(r.applicable);
    CHECK_FALSE(r.value);
    CHECK(r.table_value == 20);
    CHECK(r.note.find("coprime") != std::string::npos);
}

TEST_CASE("coprime wide claim is kept separate") {
    const auto c = coprime_wide_claim(ProblemSpec(3, 7, Mode::residues()));
    CHECK(c.value == 14);
    CHECK(c.note.find("18") != std::string::npos);
    CHECK(f(3, 7, Mode::residues()) == 18);
    CHECK(coprime_wide_claim(ProblemSpec(3, 5, Mode::residues())).value == f(3, 5, Mode::residues()));
    CHECK_FALSE(coprime_wide_claim(ProblemSpec(4, 6, Mode::residues())).value);
}

TEST_CASE("two-color seams") {
    for (int s = 2; s <= 12; ++s) {
        CHECK(f(s, s, Mode::finite(2)) == 4 * s + s - 3);
        if (2 * s - 2 > s) CHECK(f(s, 2 * s - 2, Mode::finite(2)) == 6 * s - 5);
        CHECK(f(s, 2 * s - 1, Mode::finite(2)) == 6 * s - 4);
    }
}

TEST_CASE("every value leaves room for a solution") {
    for (const Mode& mode : {Mode::finite(2), Mode::finite(3), Mode::residues(), Mode::infinity_residues()}) {
        for (int s = 2; s <= 12; ++s) {
            for (int r = s; r <= 30; ++r) {
                const auto v = f(s, r, mode);
                if (v) CHECK(*v >= s + r);
            }
        }
    }
}

TEST_CASE("three-color threshold") {
    CHECK(three_color_threshold(3) == 3);
    CHECK(three_color_threshold(4) == 5);
    CHECK(three_color_threshold(6) == 8);
}

TEST_CASE("atlas") {
    const auto rows = atlas({3}, {3, 4, 5, 6, 7}, {Mode::finite(2)});
    REQUIRE(rows.size() == 5);
    std::vector<int> values;
    for (const auto& row : rows) values.push_back(*row.result.value);
    CHECK(values == std::vector<int>{12, 13, 14, 16, 18});

    const auto one = atlas({4}, {6}, {Mode::residues()});
    REQUIRE(one.size() == 1);
    CHECK(one[0].result.value == closed_form(ProblemSpec(4, 6, Mode::residues())).value);

    const auto both = atlas({3, 2, 3}, {4, 2}, {Mode::finite(3), Mode::residues()});
    REQUIRE(both.size() == 6);
    CHECK(both[0].s == 2);
    CHECK(both[0].r == 2);
    CHECK(both[1].mode == Mode::residues());

    const auto md = render_atlas_markdown(one);
    CHECK(md.find("| 4 | 6 | z | 19 |") != std::string::npos);
    const auto csv = render_atlas_csv(one);
    CHECK(csv.rfind("s,r,mode,value,case\n", 0) == 0);
    CHECK(csv.find("4,6,z,19,") != std::string::npos);
    CHECK(render_atlas_csv(atlas({4}, {5}, {Mode::residues()})).find("N/A") != std::string::npos);
}
