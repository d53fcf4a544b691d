#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "zsdiam/core.hpp"
#include "zsdiam/zerosum.hpp"

namespace zsdiam {

/// Marks "no valid set" in a prefix profile.
inline constexpr int kNoSet = std::numeric_limits<int>::max();

/// A[p] = minimum diameter of a valid size-s set with max <= p (kNoSet if none).
/// Index 0 is the empty prefix.
std::vector<int> prefix_profile(const ProblemSpec& spec, const Coloring& coloring);

/// Returns a witness iff the coloring has a solution. The witness uses the
/// smallest split point p with A[p] <= B[p+1].
std::optional<Witness> has_solution(const ProblemSpec& spec, const Coloring& coloring);

/// Incremental solution detection over a growing prefix, for the search.
/// Single-owner and mutable; pop() exactly undoes the last push().
class SolverState {
public:
    explicit SolverState(ProblemSpec spec);

    const ProblemSpec& spec() const noexcept { return spec_; }
    const Coloring& coloring() const noexcept { return prefix_; }
    int size() const noexcept { return prefix_.size(); }

    /// Extends the prefix; returns true iff the extended prefix contains a solution.
    bool push(Symbol sym);
    void pop();

    /// Does the current prefix contain a solution?
    bool solved() const noexcept { return solved_.back(); }
    /// Current A[0..n].
    const std::vector<int>& profile() const noexcept { return profile_; }

    friend bool operator==(const SolverState& a, const SolverState& b) {
        return a.spec_ == b.spec_ && a.prefix_ == b.prefix_ && a.profile_ == b.profile_ && a.solved_ == b.solved_ &&
               a.occurrences_ == b.occurrences_;
    }

private:
    int occurrence_slot(Symbol sym) const noexcept;
    int min_new_s_diameter(Position i);
    bool new_r_set_completes_solution(Position i);

    ProblemSpec spec_;
    Coloring prefix_;
    std::vector<int> profile_;
    std::vector<char> solved_;
    std::vector<std::vector<Position>> occurrences_;
    SubsetSumTable s_table_;
    SubsetSumTable r_table_;
};

}  // namespace zsdiam
