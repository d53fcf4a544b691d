#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zsdiam/core.hpp"
#include "zsdiam/solver.hpp"
#include "zsdiam/zerosum.hpp"

namespace zsdiam {

struct SearchProgress {
    std::uint64_t nodes = 0;
    int deepest_alive = 0;
    std::size_t tasks_done = 0;
    std::size_t tasks_total = 0;
    std::chrono::duration<double> elapsed{};
};

struct SearchLimits {
    int max_n = 64;
    /// Counts push_symbol calls across all workers.
    std::uint64_t node_budget = 4'000'000'000ULL;
    std::chrono::duration<double> wall_budget = std::chrono::hours(24);
    int workers = 0;  // 0: hardware concurrency
    int split_depth = 4;
    std::function<void(const SearchProgress&)> on_progress;

    void validate() const;
};

enum class SearchStatus { Exact, LowerBoundOnly, BudgetExceeded };

std::string to_string(SearchStatus status);

struct ExtremalResult {
    SearchStatus status = SearchStatus::BudgetExceeded;
    /// Length of the longest solution-free coloring found.
    int deepest_alive = 0;
    /// A solution-free coloring of length deepest_alive.
    std::optional<Coloring> counterexample;
    std::uint64_t nodes = 0;
    std::chrono::duration<double> elapsed{};

    /// f itself when Exact.
    std::optional<int> value() const;
    /// Certified: f >= lower_bound().
    int lower_bound() const noexcept { return deepest_alive + 1; }
};

/// The canonical-form rule the search uses to skip symmetric branches.
struct SymmetryRule {
    enum class Kind { FirstUseColorOrder, FirstResidueZero };
    Kind kind;
    std::string description;
    /// Bumped whenever the rule changes; cached results depend on it.
    static constexpr int kVersion = 1;
};

SymmetryRule canonical_first_symbol_rule(const ProblemSpec& spec);

/// Symbols the canonical search may place after `prefix`, in branching order
/// (ascending values, infinity last).
std::vector<Symbol> canonical_candidates(const ProblemSpec& spec, const Coloring& prefix);

/// Does the coloring satisfy the canonical-form rule?
bool is_canonical(const ProblemSpec& spec, const Coloring& coloring);

/// Number of canonical colorings of length n (no solution pruning).
std::uint64_t count_canonical(const ProblemSpec& spec, int n);

/// f(s, r, mode) by exhaustive backtracking over canonical colorings.
ExtremalResult compute_f(const ProblemSpec& spec, const SearchLimits& limits = {});

/// A solution-free coloring of length n, or nullopt if none exists.
/// Throws BudgetExceeded if the search could not finish.
std::optional<Coloring> find_counterexample(const ProblemSpec& spec, int n, const SearchLimits& limits = {});

}  // namespace zsdiam
