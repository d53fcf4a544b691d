#include "zsdiam/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "zsdiam/formulas.hpp"
#include "zsdiam/patterns.hpp"
#include "zsdiam/search.hpp"
#include "zsdiam/solver.hpp"
#include "zsdiam/store.hpp"

namespace zsdiam {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream parts(text);
    std::string part;
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size()) throw Error("not an integer list: '" + text + "'");
        return v;
    };
    while (std::getline(parts, part, ',')) {
        if (auto dots = part.find(".."); dots != std::string::npos) {
            const int lo = to_int(part.substr(0, dots));
            const int hi = to_int(part.substr(dots + 2));
            if (hi < lo) throw Error("empty range '" + part + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(to_int(part));
        }
    }
    if (out.empty()) throw Error("empty integer list");
    return out;
}

namespace {

std::string join_positions(const PositionSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) out += (i ? "," : "") + std::to_string(set[i]);
    return out + "}";
}

std::string join_values(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::string describe(const Witness& w) {
    return "S1 = " + join_positions(w.s1) + " (" + w.kind1.to_string() + "), S2 = " + join_positions(w.s2) + " (" +
           w.kind2.to_string() + ")";
}

struct ComputeArgs {
    int s = 2;
    int r = 2;
    std::string mode = "2";
    int max_n = 64;
    std::uint64_t nodes = 4'000'000'000ULL;
    double seconds = 86400.0;
    int workers = 0;
    bool no_cache = false;
    bool progress = false;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
    const ProblemSpec spec(a.s, a.r, Mode::parse(a.mode));
    const FormulaResult formula = closed_form(spec);
    auto comparison = [&](int f) {
        if (!formula.value) return std::string("FORMULA-N/A: ") + formula.note;
        return "formula " + std::to_string(*formula.value) + ": " + (f == *formula.value ? "MATCH" : "MISMATCH");
    };

    Store store(Store::default_path());
    if (!a.no_cache) {
        if (auto hit = store.find_exact(a.s, a.r, spec.mode().to_string(), SymmetryRule::kVersion)) {
            out << "f = " << *hit->value << " (" << comparison(*hit->value) << ") [cached]\n";
            if (hit->counterexample)
                out << "counterexample (n = " << *hit->value - 1 << "): " << *hit->counterexample << "\n";
            return formula.value && *hit->value != *formula.value ? kExitFinding : kExitOk;
        }
    }

    SearchLimits limits;
    limits.max_n = a.max_n;
    limits.node_budget = a.nodes;
    limits.wall_budget = std::chrono::duration<double>(a.seconds);
    limits.workers = a.workers;
    if (a.progress) {
        limits.on_progress = [&err](const SearchProgress& p) {
            err << "nodes=" << p.nodes << " deepest=" << p.deepest_alive << " tasks=" << p.tasks_done << "/"
                << p.tasks_total << " elapsed=" << std::fixed << std::setprecision(1) << p.elapsed.count() << "s\n";
        };
    }
    const ExtremalResult result = compute_f(spec, limits);

    RunRecord rec;
    rec.command = "compute";
    rec.s = a.s;
    rec.r = a.r;
    rec.mode = spec.mode().to_string();
    rec.nodes = result.nodes;
    rec.elapsed_seconds = result.elapsed.count();
    rec.tool_version = std::string(tool_version());
    rec.symmetry_version = SymmetryRule::kVersion;
    rec.timestamp = utc_timestamp();
    if (result.counterexample) rec.counterexample = format_coloring(*result.counterexample, spec);
    rec.details["lower_bound"] = result.lower_bound();
    if (formula.value) rec.details["formula"] = *formula.value;
    rec.details["case"] = formula.case_label;

    int code = kExitOk;
    if (result.status == SearchStatus::Exact) {
        const int f = *result.value();
        rec.status = "exact";
        rec.value = f;
        out << "f = " << f << " (" << comparison(f) << ")\n";
        if (formula.value && f != *formula.value) code = kExitFinding;
    } else {
        rec.status = result.status == SearchStatus::LowerBoundOnly ? "lower-bound" : "budget-exceeded";
        out << "budget exceeded: f >= " << result.lower_bound() << " ("
            << (result.status == SearchStatus::LowerBoundOnly ? "reached --max-n" : "node or time budget") << ")\n";
        if (formula.value) out << "formula " << *formula.value << "\n";
        code = kExitBudget;
    }
    if (rec.counterexample)
        out << "counterexample (n = " << result.deepest_alive << "): " << *rec.counterexample << "\n";
    out << "nodes = " << result.nodes << ", elapsed = " << std::fixed << std::setprecision(2)
        << result.elapsed.count() << "s\n";
    try {
        store.append(rec);
    } catch (const Error& e) {
        err << "warning: " << e.what() << "\n";
    }
    return code;
}

int cmd_check(const std::string& text, int s, int r, const std::string& mode, std::ostream& out) {
    const ProblemSpec spec(s, r, Mode::parse(mode));
    const Coloring coloring = parse_coloring(text, spec);
    if (auto w = has_solution(spec, coloring)) {
        out << "solution: " << describe(*w) << "\n";
    } else {
        out << "alive\n";
    }
    return kExitOk;
}

int cmd_verify_patterns(const std::string& s_text, const std::string& r_text, const std::string& only,
                        std::ostream& out) {
    const auto ss = parse_int_list(s_text);
    const auto rs = parse_int_list(r_text);
    int ok = 0, incompatible = 0, findings = 0;
    out << std::left << std::setw(20) << "builtin" << std::setw(4) << "s" << std::setw(4) << "r" << std::setw(14)
        << "status" << "length\n";
    for (const auto& b : builtin_library()) {
        if (!only.empty() && b.name != only) continue;
        for (const auto& bind : admissible_bindings(b, ss, rs)) {
            const VerifyReport rep = verify_builtin(b, bind);
            out << std::left << std::setw(20) << b.name << std::setw(4) << bind.s << std::setw(4) << bind.r
                << std::setw(14) << to_string(rep.status) << rep.length << "/" << rep.expected_length;
            switch (rep.status) {
            case VerifyReport::Status::Ok: ++ok; break;
            case VerifyReport::Status::Incompatible:
                ++incompatible;
                out << "  position " << rep.incompatible->position << ": " << rep.incompatible->residue_s.to_string()
                    << " mod " << bind.s << " vs " << rep.incompatible->residue_r.to_string() << " mod " << bind.r;
                break;
            case VerifyReport::Status::Finding:
                ++findings;
                if (!rep.length_ok) out << "  wrong length";
                if (rep.witness) out << "  " << describe(*rep.witness);
                break;
            }
            out << "\n";
        }
    }
    out << "ok " << ok << ", incompatible " << incompatible << ", findings " << findings << "\n";
    return findings ? kExitFinding : kExitOk;
}

void print_oracle(const std::string& label, const OracleResult& res, std::ostream& out) {
    out << label << ": ";
    if (res.holds)
        out << "holds";
    else
        out << "fails, counterexample " << join_values(*res.counterexample);
    out << " (" << res.sequences_checked << " sequences)\n";
}

struct OracleArgs {
    std::string kind;
    int m = 2;
    int len = -1;
    int h = 1;
    std::string reading = "as-used";
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
    if (a.kind == "egz") {
        const int len = a.len < 0 ? 2 * a.m - 1 : a.len;
        const auto res = egz_oracle(a.m, len);
        print_oracle("egz m=" + std::to_string(a.m) + " length=" + std::to_string(len), res, out);
        return res.holds ? kExitOk : kExitFinding;
    }
    if (a.kind == "egz3") {
        const auto res = three_color_egz_oracle(a.m);
        print_oracle("three values m=" + std::to_string(a.m) + " length=" + std::to_string(2 * a.m - 2),
                     res.with_three_values, out);
        if (res.two_value_failure) out << "two values fail: " << join_values(*res.two_value_failure) << "\n";
        return res.with_three_values.holds ? kExitOk : kExitFinding;
    }
    if (a.kind == "coset") {
        CosetReading reading;
        if (a.reading == "stated")
            reading = CosetReading::Stated;
        else if (a.reading == "as-used")
            reading = CosetReading::AsUsed;
        else
            throw CLI::ValidationError("--reading", "expected stated or as-used");
        const auto res = coset_egz_oracle(a.m, a.h, reading);
        const std::string base = "coset m=" + std::to_string(a.m) + " h=" + std::to_string(a.h) + " (" + a.reading + ")";
        print_oracle(base + " length=" + std::to_string(a.m + a.h - 1), res.main, out);
        print_oracle(base + " length=" + std::to_string(a.m + a.h - 2), res.shorter, out);
        return res.main.holds ? kExitOk : kExitFinding;
    }
    throw CLI::ValidationError("kind", "expected egz, egz3 or coset");
}

int cmd_atlas(const std::string& s_text, const std::string& r_text, const std::vector<std::string>& mode_texts,
              const std::string& format, std::ostream& out) {
    std::vector<Mode> modes;
    for (const auto& m : mode_texts) modes.push_back(Mode::parse(m));
    if (modes.empty()) modes = {Mode::finite(2), Mode::finite(3), Mode::residues(), Mode::infinity_residues()};
    const auto rows = atlas(parse_int_list(s_text), parse_int_list(r_text), modes);
    out << (format == "csv" ? render_atlas_csv(rows) : render_atlas_markdown(rows));
    return kExitOk;
}

int cmd_expand(const std::string& text, const std::string& builtin, int s, int r, std::ostream& out) {
    const auto bind = Bindings::of(s, r);
    if (!builtin.empty()) {
        const auto& b = find_builtin(builtin);
        auto result = expand_dual_row(b, bind);
        if (auto* bad = std::get_if<Incompatible>(&result)) {
            out << "incompatible at position " << bad->position << ": " << bad->residue_s.to_string() << " mod " << s
                << " vs " << bad->residue_r.to_string() << " mod " << r << "\n";
            return kExitFinding;
        }
        out << format_coloring(std::get<Coloring>(result)) << "\n";
        return kExitOk;
    }
    const Coloring c = expand(parse_pattern(text), bind);
    const bool digits = std::all_of(c.symbols().begin(), c.symbols().end(),
                                    [](Symbol x) { return !x.is_infinity() && x.value() <= 9; });
    if (digits) {
        std::string compact;
        for (Symbol x : c.symbols()) compact += static_cast<char>('0' + x.value());
        out << compact << "\n";
    } else {
        out << format_coloring(c) << "\n";
    }
    return kExitOk;
}

int cmd_list_builtins(std::ostream& out) {
    for (const auto& b : builtin_library()) {
        out << b.name << " [" << b.mode.to_string() << "] " << b.guard.to_string() << "\n  length "
            << b.expected_length.to_string() << "\n  " << b.row_s.to_string() << "\n";
        if (b.row_r) out << "  " << b.row_r->to_string() << "  (mod r)\n";
    }
    return kExitOk;
}

int cmd_adjudicate(std::uint64_t node_budget, std::ostream& out, std::ostream& err) {
    // Smallest instance where 6s-4 (coprime, r >= 2s-2) and 2s+2r-2 differ.
    int s = 0, r = 0;
    for (int cs = 3; s == 0; ++cs) {
        for (int cr = 2 * cs - 2; cr <= 4 * cs; ++cr) {
            const ProblemSpec p(cs, cr, Mode::residues());
            const auto claim = coprime_wide_claim(p);
            const auto wide = closed_form(p);
            if (claim.value && wide.value && *claim.value != *wide.value) {
                s = cs;
                r = cr;
                break;
            }
        }
    }
    const ProblemSpec spec(s, r, Mode::residues());
    const int coprime_claim = *coprime_wide_claim(spec).value;
    const int wide_claim = *closed_form(spec).value;
    out << "instance: s = " << s << ", r = " << r << ", mode z (gcd 1)\n";
    out << "claim A (coprime): f = 6s-4 = " << coprime_claim << "\n";
    out << "claim B (r > 2s-2): f = 2s+2r-2 = " << wide_claim << "\n";

    nlohmann::json details;
    details["claim_coprime"] = coprime_claim;
    details["claim_wide"] = wide_claim;

    // Independent search for a solution-free coloring of length 6s-4.
    SearchLimits limits;
    limits.node_budget = node_budget;
    limits.max_n = coprime_claim;
    std::optional<Coloring> searched;
    bool search_done = true;
    try {
        searched = find_counterexample(spec, coprime_claim, limits);
    } catch (const BudgetExceeded&) {
        search_done = false;
    }
    if (searched) {
        const bool confirmed = !has_solution(spec, *searched);
        out << "search: solution-free coloring of length " << coprime_claim << ": " << format_coloring(*searched)
            << (confirmed ? "" : " (REJECTED by batch solver)") << "\n";
        details["search_coloring"] = format_coloring(*searched);
        details["search_confirmed"] = confirmed;
    } else {
        out << "search: " << (search_done ? "no solution-free coloring" : "budget exhausted") << " at length "
            << coprime_claim << "\n";
    }
    details["search_complete"] = search_done;

    // The wide construction at length 2s+2r-3.
    const auto& wide = find_builtin("two-color-wide-z");
    const VerifyReport rep = verify_builtin(wide, Bindings::of(s, r));
    out << "construction " << wide.name << ": length " << rep.length << ", "
        << (rep.alive ? "solution-free" : "has a solution") << "\n";
    details["construction"] = wide.name;
    details["construction_length"] = rep.length;
    details["construction_alive"] = rep.alive;

    int lower = 0;
    std::optional<std::string> evidence;
    if (rep.alive && rep.coloring) {
        lower = rep.length + 1;
        evidence = format_coloring(*rep.coloring, spec);
    }
    if (searched && details["search_confirmed"].get<bool>() && coprime_claim + 1 > lower) {
        lower = coprime_claim + 1;
        evidence = format_coloring(*searched, spec);
    }

    std::string verdict;
    if (lower > coprime_claim) {
        verdict = "6s-4 refuted: f(" + std::to_string(s) + "," + std::to_string(r) + ",z) >= " +
                  std::to_string(lower) + " > " + std::to_string(coprime_claim) + "; consistent with 2s+2r-2 = " +
                  std::to_string(wide_claim);
    } else if (search_done && !searched) {
        verdict = "2s+2r-2 refuted: every coloring of length " + std::to_string(coprime_claim) + " has a solution";
    } else {
        verdict = "undecided within budget";
    }
    out << "verdict: " << verdict << "\n";
    details["verdict"] = verdict;
    details["certified_lower_bound"] = lower;

    RunRecord rec;
    rec.command = "adjudicate";
    rec.s = s;
    rec.r = r;
    rec.mode = spec.mode().to_string();
    rec.status = verdict == "undecided within budget" ? "undecided" : "finding";
    rec.counterexample = evidence;
    rec.tool_version = std::string(tool_version());
    rec.symmetry_version = SymmetryRule::kVersion;
    rec.timestamp = utc_timestamp();
    rec.details = details;
    try {
        Store store(Store::default_path());
        store.append(rec);
        out << "recorded in " << store.path().string() << "\n";
    } catch (const Error& e) {
        err << "warning: " << e.what() << "\n";
    }
    return rec.status == "finding" ? kExitFinding : kExitBudget;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extremal solution-free colorings: exact search, closed forms, constructions"};
    app.name("zsdiam");
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", std::string(tool_version()));

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "Exact f(s, r, mode) by exhaustive search");
    c->add_option("--s", compute.s, "Size of the first set")->required();
    c->add_option("--r", compute.r, "Size of the second set")->required();
    c->add_option("--mode", compute.mode, "2|3|k:<n>|z|zinf")->required();
    c->add_option("--max-n", compute.max_n, "Largest coloring length to explore");
    c->add_option("--nodes", compute.nodes, "Node budget");
    c->add_option("--seconds", compute.seconds, "Wall-clock budget");
    c->add_option("--workers", compute.workers, "Worker threads (0: all cores)");
    c->add_flag("--no-cache", compute.no_cache, "Ignore cached results");
    c->add_flag("--progress", compute.progress, "Report progress on stderr");

    std::string coloring_text, check_mode = "2";
    int check_s = 2, check_r = 2;
    auto* k = app.add_subcommand("check", "Look for a solution in one coloring");
    k->add_option("--coloring", coloring_text, "Digits, or comma-separated values with inf")->required();
    k->add_option("--s", check_s);
    k->add_option("--r", check_r);
    k->add_option("--mode", check_mode);

    std::string vs = "2..8", vr = "2..8", only;
    auto* v = app.add_subcommand("verify-patterns", "Check every builtin construction over a range");
    v->add_option("--s", vs, "Values of s, e.g. 2..8");
    v->add_option("--r", vr, "Values of r");
    v->add_option("--name", only, "Only this builtin");

    OracleArgs oracle;
    auto* o = app.add_subcommand("oracle", "Brute-force zero-sum checks");
    o->add_option("kind", oracle.kind, "egz|egz3|coset")->required();
    o->add_option("--m", oracle.m, "Modulus")->required();
    o->add_option("--len", oracle.len, "Sequence length (egz; default 2m-1)");
    o->add_option("--h", oracle.h, "Subgroup order (coset)");
    o->add_option("--reading", oracle.reading, "stated|as-used (coset)");

    std::string as = "2..6", ar = "2..12", format = "md";
    std::vector<std::string> atlas_modes;
    auto* t = app.add_subcommand("atlas", "Tabulate the closed forms");
    t->add_option("--s", as);
    t->add_option("--r", ar);
    t->add_option("--mode", atlas_modes, "Repeatable; default 2, 3, z, zinf");
    t->add_option("--format", format)->check(CLI::IsMember({"md", "csv"}));

    std::string pattern_text, builtin_name;
    int es = 2, er = -1;
    auto* e = app.add_subcommand("expand", "Expand a pattern or builtin");
    auto* pat = e->add_option("--pattern", pattern_text, "e.g. 01^{s-1}0^{s-1}");
    auto* bn = e->add_option("--builtin", builtin_name);
    pat->excludes(bn);
    e->add_option("--s", es)->required();
    e->add_option("--r", er, "Defaults to s");

    app.add_subcommand("builtins", "List the builtin constructions");

    std::uint64_t adjudicate_nodes = 200'000'000ULL;
    auto* a = app.add_subcommand("adjudicate", "Decide between 6s-4 and 2s+2r-2 on the smallest coprime instance");
    a->add_option("--nodes", adjudicate_nodes, "Node budget for the search");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c) return cmd_compute(compute, out, err);
        if (*k) return cmd_check(coloring_text, check_s, check_r, check_mode, out);
        if (*v) return cmd_verify_patterns(vs, vr, only, out);
        if (*o) return cmd_oracle(oracle, out);
        if (*t) return cmd_atlas(as, ar, atlas_modes, format, out);
        if (*e) {
            if (pattern_text.empty() && builtin_name.empty()) throw Error("expand needs --pattern or --builtin");
            return cmd_expand(pattern_text, builtin_name, es, er < 0 ? es : er, out);
        }
        if (app.got_subcommand("builtins")) return cmd_list_builtins(out);
        if (*a) return cmd_adjudicate(adjudicate_nodes, out, err);
    } catch (const CLI::ValidationError& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const zsdiam::BudgetExceeded& ex) {
        err << "budget exceeded: " << ex.what() << "\n";
        return kExitBudget;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace zsdiam
