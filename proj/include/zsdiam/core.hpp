#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zsdiam {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidWitness : public Error {
public:
    using Error::Error;
};

class SymbolModeMismatch : public Error {
public:
    using Error::Error;
};

/// Raised by text parsers; carries the byte offset where parsing failed.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class NotEnoughOccurrences : public Error {
public:
    NotEnoughOccurrences(std::size_t have, std::size_t need);
    std::size_t have() const noexcept { return have_; }
    std::size_t need() const noexcept { return need_; }

private:
    std::size_t have_;
    std::size_t need_;
};

/// Which kind of coloring a problem is posed over.
class Mode {
public:
    enum class Kind { Finite, Residues, InfinityResidues };

    static Mode finite(int colors);
    static Mode residues() { return Mode(Kind::Residues, 0); }
    static Mode infinity_residues() { return Mode(Kind::InfinityResidues, 0); }

    /// Accepts the command-line spelling: `2`, `3`, `k:<n>`, `z`, `zinf`.
    static Mode parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    int colors() const noexcept { return colors_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool allows_infinity() const noexcept { return kind_ == Kind::InfinityResidues; }

    /// Inverse of parse().
    std::string to_string() const;

    friend bool operator==(const Mode&, const Mode&) = default;

private:
    Mode(Kind kind, int colors) : kind_(kind), colors_(colors) {}

    Kind kind_;
    int colors_;
};

/// The triple (s, r, mode) with its derived constants.
class ProblemSpec {
public:
    ProblemSpec(int s, int r, Mode mode);

    int s() const noexcept { return s_; }
    int r() const noexcept { return r_; }
    const Mode& mode() const noexcept { return mode_; }

    int gcd() const noexcept { return gcd_; }
    int lcm() const noexcept { return lcm_; }
    /// s / gcd(r, s)
    int h() const noexcept { return s_ / gcd_; }
    /// max(0, r - (2s - 2))
    int delta() const noexcept;

    /// Number of distinct symbols a coloring may use.
    int alphabet_size() const noexcept;

    std::string to_string() const;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

private:
    int s_;
    int r_;
    Mode mode_;
    int gcd_;
    int lcm_;
};

/// A color: a nonnegative value, or the extra color infinity.
class Symbol {
public:
    static constexpr std::uint16_t kInfinityCode = 0xFFFF;

    constexpr Symbol() = default;
    static constexpr Symbol value(int v) { return Symbol(static_cast<std::uint16_t>(v)); }
    static constexpr Symbol infinity() { return Symbol(kInfinityCode); }

    constexpr bool is_infinity() const noexcept { return code_ == kInfinityCode; }
    constexpr int value() const noexcept { return code_; }
    constexpr std::uint16_t code() const noexcept { return code_; }

    std::string to_string() const;

    friend constexpr auto operator<=>(const Symbol&, const Symbol&) = default;

private:
    constexpr explicit Symbol(std::uint16_t code) : code_(code) {}

    std::uint16_t code_ = 0;
};

/// Positions are 1-based; a set is stored sorted and duplicate-free.
using Position = int;
using PositionSet = std::vector<Position>;

/// diam(X) = max(X) - min(X); zero for a singleton or the empty set.
int diameter(std::span<const Position> sorted_set);

/// A finite coloring Δ(1) Δ(2) ... Δ(n).
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
    static Coloring from_values(std::span<const int> values);

    int size() const noexcept { return static_cast<int>(symbols_.size()); }
    bool empty() const noexcept { return symbols_.empty(); }

    /// 1-based access.
    Symbol at(Position p) const;
    Symbol operator[](Position p) const { return symbols_[static_cast<std::size_t>(p - 1)]; }

    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    Coloring prefix(int length) const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// Throws SymbolModeMismatch if some symbol is illegal for the spec's mode.
void check_symbols(const ProblemSpec& spec, const Coloring& coloring);
bool symbol_allowed(const ProblemSpec& spec, Symbol sym) noexcept;

/// Coloring text: compact digits for finite modes with at most 10 colors,
/// comma-separated tokens otherwise (`inf` for infinity). A comma-separated
/// text is accepted in every mode.
Coloring parse_coloring(std::string_view text, const ProblemSpec& spec);
std::string format_coloring(const Coloring& coloring, const ProblemSpec& spec);
/// Always comma-separated; used where no spec is at hand.
std::string format_coloring(const Coloring& coloring);

/// Why a set qualifies as S1 or S2.
struct SetKind {
    enum class Tag { MonoColor, ZeroSum, InfinityMono };
    Tag tag = Tag::ZeroSum;
    Symbol color{};  // meaningful for MonoColor only

    static SetKind mono(Symbol c) { return {Tag::MonoColor, c}; }
    static SetKind zero_sum() { return {Tag::ZeroSum, {}}; }
    static SetKind infinity_mono() { return {Tag::InfinityMono, Symbol::infinity()}; }

    std::string to_string() const;
    friend bool operator==(const SetKind&, const SetKind&) = default;
};

struct Witness {
    PositionSet s1;
    PositionSet s2;
    SetKind kind1;
    SetKind kind2;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Checks conditions (a)-(d) for the given mode. Returns false when any
/// condition fails; throws InvalidWitness when a position is outside 1..n.
bool validate_witness(const ProblemSpec& spec, const Coloring& coloring, const Witness& w);

/// Does the claimed kind hold for `set`? `modulus` is used by ZeroSum only.
bool set_has_kind(const Coloring& coloring, std::span<const Position> set, const SetKind& kind, int modulus);

/// Selects the i-th..j-th occurrences of a symbol inside an interval,
/// counted from the front (first_i^j) or from the back (last_i^j).
struct OccurrenceSelector {
    enum class From { Front, Back };
    From from;
    int i;
    int j;

    static OccurrenceSelector first(int i, int j) { return {From::Front, i, j}; }
    static OccurrenceSelector last(int i, int j) { return {From::Back, i, j}; }
};

struct Interval {
    Position lo;
    Position hi;
};

/// Front selections come back ascending; back selections in last_i^j order
/// (x_{n-i+1}, x_{n-i}, ..., x_{n-j+1}), i.e. descending.
PositionSet occurrence_slice(const Coloring& coloring, Symbol sym, OccurrenceSelector selector,
                             std::optional<Interval> within = std::nullopt);

}  // namespace zsdiam
