#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zsdiam/core.hpp"

namespace zsdiam {

/// Set of residues modulo `modulus`, packed into 64-bit words.
class ResidueMask {
public:
    ResidueMask() = default;
    explicit ResidueMask(int modulus);

    int modulus() const noexcept { return modulus_; }
    bool test(int residue) const noexcept {
        return (words_[static_cast<std::size_t>(residue) >> 6] >> (residue & 63)) & 1U;
    }
    void set(int residue) noexcept { words_[static_cast<std::size_t>(residue) >> 6] |= std::uint64_t{1} << (residue & 63); }
    void clear() noexcept;
    bool none() const noexcept;

    /// this |= (other rotated up by `shift`), i.e. {x + shift mod m : x in other}.
    void or_rotated(const ResidueMask& other, int shift) noexcept;

    friend bool operator==(const ResidueMask&, const ResidueMask&) = default;

private:
    int modulus_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Subset-sum reachability over (count, sum mod modulus) for a growing
/// multiset of values: reach(c) is the set of sums of c-element sub-multisets.
class SubsetSumTable {
public:
    SubsetSumTable() = default;
    SubsetSumTable(int max_count, int modulus);

    void reset() noexcept;
    void add(int value) noexcept;
    bool reachable(int count, int residue) const noexcept;
    const ResidueMask& reach(int count) const noexcept { return reach_[static_cast<std::size_t>(count)]; }
    int max_count() const noexcept { return static_cast<int>(reach_.size()) - 1; }
    int modulus() const noexcept { return modulus_; }

    friend bool operator==(const SubsetSumTable&, const SubsetSumTable&) = default;

private:
    int modulus_ = 0;
    std::vector<ResidueMask> reach_;
};

/// Is there an m-element index subset containing every anchor (1-based
/// indices) whose value sum is 0 mod `modulus`?
bool exists_zero_sum_subset(std::span<const int> values, int m, int modulus, std::span<const int> anchors = {});

/// The lexicographically least index subset (0-based, ascending) of size
/// `count` among `values` with sum congruent to `target`, if any.
std::optional<std::vector<int>> least_subset_with_sum(std::span<const int> values, int count, int target,
                                                      int modulus);

struct ValidityKind {
    enum class Tag { Mono, ZeroSumMod, InfinityMonoOrZeroSum };
    Tag tag = Tag::Mono;
    int modulus = 0;

    static ValidityKind mono() { return {Tag::Mono, 0}; }
    static ValidityKind zero_sum(int m);
    static ValidityKind infinity_mono_or_zero_sum(int m);

    /// The kind used for a size-`modulus` set in the given mode.
    static ValidityKind for_mode(const Mode& mode, int modulus);
};

struct DiamResult {
    int diameter = 0;
    PositionSet set;

    friend bool operator==(const DiamResult&, const DiamResult&) = default;
};

/// Minimum diameter over m-element sets S satisfying `kind` with max(S) <= max_pos.
/// Ties resolve to the lexicographically least position sequence.
std::optional<DiamResult> min_diam_valid(const Coloring& coloring, int m, ValidityKind kind, Position max_pos);

/// Maximum diameter over m-element sets S satisfying `kind` with min(S) >= min_pos.
/// Ties resolve to the lexicographically least position sequence.
std::optional<DiamResult> max_diam_valid(const Coloring& coloring, int m, ValidityKind kind, Position min_pos);

/// Classifies a set that satisfies `kind` as mono, infinity-mono or zero-sum.
SetKind classify_set(const Coloring& coloring, std::span<const Position> set, ValidityKind kind);

// ---------------------------------------------------------------------------
// Brute-force oracles for the zero-sum theorems.

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

struct OracleResult {
    bool holds = true;
    /// Nondecreasing, lexicographically least failing sequence.
    std::optional<std::vector<int>> counterexample;
    std::uint64_t sequences_checked = 0;
};

struct OracleBudget {
    std::uint64_t max_sequences = 50'000'000;
};

/// Every length-`length` sequence over Z_m has an m-subset summing to 0 mod m?
OracleResult egz_oracle(int m, int length, OracleBudget budget = {});

struct ThreeValueResult {
    OracleResult with_three_values;
    /// A 2-valued length-(2m-2) sequence without an m-element zero-sum
    /// subset, showing the three-value hypothesis cannot be dropped.
    std::optional<std::vector<int>> two_value_failure;
};

/// Length-(2m-2) sequences over Z_m attaining at least three values.
ThreeValueResult three_color_egz_oracle(int m, OracleBudget budget = {});

enum class CosetReading { Stated, AsUsed };

struct CosetResult {
    OracleResult main;
    /// Search at length one shorter; `tight` iff a failing sequence exists there.
    OracleResult shorter;
    bool tight() const noexcept { return !shorter.holds; }
};

/// Stated: every Δ:[1, m+k-1] -> Z_m has m terms summing to 0 mod k.
/// AsUsed: every length m+k-1 sequence from one coset of the order-k subgroup
/// of Z_m has m terms summing to 0 mod m. Requires k | m.
CosetResult coset_egz_oracle(int m, int k, CosetReading reading, OracleBudget budget = {});

}  // namespace zsdiam
