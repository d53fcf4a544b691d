#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsdiam/core.hpp"

namespace zsdiam {

struct FormulaResult {
    std::optional<int> value;  // present only when applicable
    std::string case_label;
    bool applicable = false;
    /// Why the point is excluded, or a caveat on an applicable value.
    std::string note;
    /// What the displayed table expression evaluates to, even where its
    /// hypotheses do not cover the point.
    std::optional<int> table_value;
};

/// Closed-form value of f(s, r, mode) from the piecewise tables.
FormulaResult closed_form(const ProblemSpec& spec);

/// The separate claim f(s, r, Z) = 6s - 4 for coprime r >= 2s - 2, s >= 3.
/// Kept apart from closed_form() because it disagrees with the 2s + 2r - 2
/// branch once r > 2s - 1.
FormulaResult coprime_wide_claim(const ProblemSpec& spec);

/// floor((5s - 1) / 3) - 1, the threshold used by the three-color tables.
int three_color_threshold(int s);

struct AtlasRow {
    int s;
    int r;
    Mode mode;
    FormulaResult result;
};

/// One row per (s, r, mode) with r >= s, ordered by s, then r, then mode
/// (in the order given).
std::vector<AtlasRow> atlas(const std::vector<int>& s_values, const std::vector<int>& r_values,
                            const std::vector<Mode>& modes);

std::string render_atlas_markdown(const std::vector<AtlasRow>& rows);
std::string render_atlas_csv(const std::vector<AtlasRow>& rows);

}  // namespace zsdiam
