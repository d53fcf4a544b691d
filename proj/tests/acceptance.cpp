// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "properties.hpp"
#include "zsdiam/cli.hpp"
#include "zsdiam/formulas.hpp"
#include "zsdiam/patterns.hpp"
#include "zsdiam/search.hpp"
#include "zsdiam/store.hpp"

using namespace zsdiam;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > limit_seconds) out.require(false, "took " + std::to_string(secs) + "s");
    if (!out.pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (out.pass ? "PASS" : "FAIL") << " [" << number << "] " << title << " (" << secs << "s)";
    if (!out.detail.empty()) line << ": " << out.detail;
    std::cout << line.str() << std::endl;
}

Outcome exact_values(const std::vector<std::tuple<int, int, Mode, int>>& cases, double per_case_limit) {
    Outcome out;
    for (const auto& [s, r, mode, expect] : cases) {
        const ProblemSpec spec(s, r, mode);
        const auto start = Clock::now();
        const auto res = compute_f(spec);
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const auto formula = closed_form(spec).value;
        const std::string name = spec.to_string();
        out.require(res.status == SearchStatus::Exact, name + " not exact");
        out.require(res.value() == expect, name + " = " + (res.value() ? std::to_string(*res.value()) : "?"));
        out.require(formula == expect, name + " formula disagrees");
        out.require(res.counterexample && !has_solution(spec, *res.counterexample), name + " bad counterexample");
        out.require(secs <= per_case_limit, name + " slow");
    }
    return out;
}

}  // namespace

int main() {
    criterion(1, "exact 2-color values match the closed form", 7 * 60, [] {
        const Mode two = Mode::finite(2);
        return exact_values({{2, 2, two, 7},
                             {2, 3, two, 8},
                             {3, 3, two, 12},
                             {3, 4, two, 13},
                             {3, 5, two, 14},
                             {4, 4, two, 17},
                             {4, 6, two, 19}},
                            60);
    });

    criterion(2, "exact integer values", 10 * 60, [] {
        return exact_values({{3, 3, Mode::residues(), 12}, {2, 4, Mode::residues(), 10}}, 5 * 60);
    });

    criterion(3, "exact 3-color values", 20 * 60, [] {
        return exact_values({{2, 2, Mode::finite(3), 11}, {2, 4, Mode::finite(3), 14}}, 10 * 60);
    });

    criterion(4, "exact infinity-or-integer value", 10 * 60,
              [] { return exact_values({{2, 2, Mode::infinity_residues(), 11}}, 10 * 60); });

    criterion(5, "every builtin construction has its length and no solution on [2..8]^2", 2 * 60, [] {
        Outcome out;
        const std::vector<int> range{2, 3, 4, 5, 6, 7, 8};
        int ok = 0, incompatible = 0;
        for (const auto& b : builtin_library()) {
            for (const auto& bind : admissible_bindings(b, range, range)) {
                const auto rep = verify_builtin(b, bind);
                const std::string at = b.name + "(" + std::to_string(bind.s) + "," + std::to_string(bind.r) + ")";
                switch (rep.status) {
                case VerifyReport::Status::Ok: ++ok; break;
                case VerifyReport::Status::Incompatible: ++incompatible; break;
                case VerifyReport::Status::Finding:
                    out.require(false, at + (rep.length_ok ? " has a solution" : " wrong length"));
                    break;
                }
            }
        }
        out.detail = std::to_string(ok) + " ok, " + std::to_string(incompatible) + " incompatible" +
                     (out.detail.empty() ? "" : "; " + out.detail);
        return out;
    });

    criterion(6, "zero-sum oracles", 5 * 60, [] {
        Outcome out;
        for (int m = 2; m <= 5; ++m) {
            out.require(egz_oracle(m, 2 * m - 1).holds, "EGZ fails at m=" + std::to_string(m));
            const auto tight = egz_oracle(m, 2 * m - 2);
            std::vector<int> expect(static_cast<std::size_t>(m - 1), 0);
            expect.insert(expect.end(), static_cast<std::size_t>(m - 1), 1);
            out.require(!tight.holds && tight.counterexample == expect, "EGZ tightness at m=" + std::to_string(m));
        }
        for (int m = 3; m <= 5; ++m)
            out.require(three_color_egz_oracle(m).with_three_values.holds, "three values, m=" + std::to_string(m));
        for (auto [m, h] : {std::pair{4, 2}, std::pair{6, 2}, std::pair{6, 3}})
            out.require(coset_egz_oracle(m, h, CosetReading::AsUsed).main.holds,
                        "coset m=" + std::to_string(m) + " h=" + std::to_string(h));
        return out;
    });

    criterion(7, "randomized differential and symmetry checks", 2 * 60, [] {
        Outcome out;
        const auto dp = props::diameter_vs_brute(0, 1000);
        out.require(dp.ok(), std::to_string(dp.discrepancies) + " diameter discrepancies: " + dp.first_failure);
        const auto inc = props::incremental_vs_batch(0, 1000);
        out.require(inc.ok(), std::to_string(inc.discrepancies) + " incremental discrepancies: " + inc.first_failure);
        for (auto [sym, name] : {std::pair{props::Symmetry::ColorPermutation, "permutation"},
                                 std::pair{props::Symmetry::ResidueTranslation, "translation"},
                                 std::pair{props::Symmetry::UnitMultiplication, "unit multiplication"}}) {
            const auto rep = props::symmetry_invariance(0, 500, sym);
            out.require(rep.ok(), std::string(name) + ": " + rep.first_failure);
        }
        return out;
    });

    criterion(8, "6s-4 versus 2s+2r-2 adjudicated and recorded", 5 * 60, [] {
        Outcome out;
        const auto path = std::filesystem::temp_directory_path() /
                          ("zsdiam-acceptance-" + std::to_string(::getpid()) + ".jsonl");
        std::filesystem::remove(path);
        ::setenv("ZSDIAM_CACHE", path.c_str(), 1);
        std::ostringstream text, err;
        const int code = run_cli({"adjudicate"}, text, err);
        const auto records = Store(path).load();
        std::filesystem::remove(path);
        ::unsetenv("ZSDIAM_CACHE");
        out.require(code == kExitFinding, "exit code " + std::to_string(code));
        out.require(records.size() == 1 && records[0].command == "adjudicate" && records[0].status == "finding",
                    "no finding recorded");
        if (out.pass) out.detail = records[0].details["verdict"].get<std::string>();
        return out;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
