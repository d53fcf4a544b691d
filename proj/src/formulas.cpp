#include "zsdiam/formulas.hpp"

#include <algorithm>
#include <sstream>

namespace zsdiam {

int three_color_threshold(int s) { return (5 * s - 1) / 3 - 1; }

namespace {

FormulaResult value(int v, std::string label, std::string note = {}) {
    FormulaResult out;
    out.value = v;
    out.table_value = v;
    out.applicable = true;
    out.case_label = std::move(label);
    out.note = std::move(note);
    return out;
}

FormulaResult excluded(std::string label, std::string why, std::optional<int> table = std::nullopt) {
    FormulaResult out;
    out.case_label = std::move(label);
    out.note = std::move(why);
    out.table_value = table;
    return out;
}

FormulaResult two_colors(const ProblemSpec& p) {
    const int s = p.s(), r = p.r();
    if (s == r) return value(5 * s - 3, "s = r");
    if (r <= 2 * s - 2) return value(4 * s + r - 3, "s < r <= 2s-2");
    return value(2 * s + 2 * r - 2, "r > 2s-2");
}

FormulaResult integers(const ProblemSpec& p) {
    const int s = p.s(), r = p.r(), h = p.h();
    if (s == r) return value(5 * s - 3, "s = r");
    if (r > 2 * s - 2) return value(2 * s + 2 * r - 2, "r > 2s-2");
    const int table = 4 * s + std::max(r, s + h - 1) - 3;
    if (p.gcd() == 1)
        return excluded("s < r <= 2s-2",
                        "coprime (r,s) = 1: the middle branch is only established for (r,s) > 1", table);
    if (r >= s + h - 1) return value(table, "s < r <= 2s-2, (r,s) > 1, r >= s + s/(r,s) - 1");
    return value(table, "s < r <= 2s-2, (r,s) > 1, r < s + s/(r,s) - 1");
}

FormulaResult three_colors(const ProblemSpec& p) {
    const int s = p.s(), r = p.r();
    if (r > 3 * s - 3) return value(3 * s + 3 * r - 4, "r > 3s-3");
    if (s == r) return value(9 * s - 7, "s = r");
    if (s < 3) return excluded("s = 2, r <= 3s-3", "outside the tables (needs s >= 3 unless r > 3s-3)");
    const int t = three_color_threshold(s);
    if (r <= t) return value(9 * s - 7, "r <= floor((5s-1)/3)-1");
    if (r <= 2 * s - 2) return value(4 * s + 3 * r - 4, "floor((5s-1)/3)-1 < r <= 2s-2");
    return value(6 * s + 2 * r - 6, "2s-2 < r <= 3s-3");
}

FormulaResult infinity_integers(const ProblemSpec& p) {
    const int s = p.s(), r = p.r(), h = p.h();
    if (r > 3 * s - 3) return value(3 * s + 3 * r - 4, "r > 3s-3");
    if (s == r) return value(9 * s - 7, "s = r");
    if (s < 3) return excluded("s = 2, r <= 3s-3", "outside the tables (needs s >= 3 unless r > 3s-3)");
    const int t = three_color_threshold(s);
    if (r <= t) return value(9 * s - 7 + h - 1, "r <= floor((5s-1)/3)-1");
    return value(3 * s + 2 * r - 3 + std::min(3 * s - 3, s + r - 1 + h - 1), "floor((5s-1)/3)-1 < r <= 3s-3");
}

}  // namespace

FormulaResult closed_form(const ProblemSpec& spec) {
    const Mode& mode = spec.mode();
    switch (mode.kind()) {
    case Mode::Kind::Residues: return integers(spec);
    case Mode::Kind::InfinityResidues: return infinity_integers(spec);
    case Mode::Kind::Finite: break;
    }
    if (mode.colors() == 2) return two_colors(spec);
    if (mode.colors() == 3) return three_colors(spec);
    return excluded("k = " + std::to_string(mode.colors()), "no closed form for more than three colors");
}

FormulaResult coprime_wide_claim(const ProblemSpec& spec) {
    const int s = spec.s(), r = spec.r();
    if (spec.mode().kind() != Mode::Kind::Residues) return excluded("coprime, r >= 2s-2", "integer colorings only");
    if (s < 3 || spec.gcd() != 1 || r < 2 * s - 2)
        return excluded("coprime, r >= 2s-2", "needs s >= 3, (r,s) = 1 and r >= 2s-2");
    auto out = value(6 * s - 4, "coprime, r >= 2s-2");
    if (r > 2 * s - 1) out.note = "disagrees with 2s+2r-2 = " + std::to_string(2 * s + 2 * r - 2);
    return out;
}

std::vector<AtlasRow> atlas(const std::vector<int>& s_values, const std::vector<int>& r_values,
                            const std::vector<Mode>& modes) {
    auto ss = s_values;
    auto rs = r_values;
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

    std::vector<AtlasRow> rows;
    for (int s : ss) {
        for (int r : rs) {
            if (s < 2 || r < s) continue;
            for (const Mode& mode : modes) rows.push_back({s, r, mode, closed_form(ProblemSpec(s, r, mode))});
        }
    }
    return rows;
}

namespace {

std::string cell_value(const FormulaResult& f) { return f.value ? std::to_string(*f.value) : "N/A"; }

}  // namespace

std::string render_atlas_markdown(const std::vector<AtlasRow>& rows) {
    std::ostringstream out;
    out << "| s | r | mode | value | case |\n";
    out << "|---|---|------|-------|------|\n";
    for (const auto& row : rows) {
        out << "| " << row.s << " | " << row.r << " | " << row.mode.to_string() << " | " << cell_value(row.result)
            << " | " << row.result.case_label << " |\n";
    }
    return out.str();
}

std::string render_atlas_csv(const std::vector<AtlasRow>& rows) {
    std::ostringstream out;
    out << "s,r,mode,value,case\n";
    for (const auto& row : rows) {
        out << row.s << ',' << row.r << ',' << row.mode.to_string() << ',' << cell_value(row.result) << ",\""
            << row.result.case_label << "\"\n";
    }
    return out.str();
}

}  // namespace zsdiam
