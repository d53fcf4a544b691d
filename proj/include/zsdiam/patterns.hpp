#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zsdiam/core.hpp"

namespace zsdiam {

/// Values of the pattern variables: s, r and the derived g = gcd(r, s),
/// h = s / g, d = max(0, r - (2s - 2)).
struct Bindings {
    int s = 0;
    int r = 0;
    int g = 0;
    int h = 0;
    int d = 0;

    static Bindings of(int s, int r);
    long long lookup(char var) const;
};

/// Integer arithmetic over constants and the variables s, r, g, h, d with
/// + - *, unary minus, min(a, b), max(a, b) and fdiv(a, b) (floor division).
class ExponentExpr {
public:
    enum class Op { Const, Var, Neg, Add, Sub, Mul, Min, Max, FloorDiv };

    static ExponentExpr constant(long long v);
    static ExponentExpr variable(char name);
    static ExponentExpr unary(Op op, ExponentExpr arg);
    static ExponentExpr binary(Op op, ExponentExpr lhs, ExponentExpr rhs);

    Op op() const noexcept { return op_; }
    long long evaluate(const Bindings& b) const;
    std::string to_string() const;

    friend bool operator==(const ExponentExpr&, const ExponentExpr&) = default;

private:
    Op op_ = Op::Const;
    long long value_ = 0;
    char var_ = 0;
    std::vector<ExponentExpr> args_;
};

ExponentExpr parse_expr(std::string_view text);

struct PatternItem {
    Symbol symbol;
    ExponentExpr exponent;

    friend bool operator==(const PatternItem&, const PatternItem&) = default;
};

/// Run-length notation x^{e}: a sequence of symbols, each repeated by an
/// exponent expression (implicitly 1).
struct PatternExpr {
    std::vector<PatternItem> items;

    std::string to_string() const;
    friend bool operator==(const PatternExpr&, const PatternExpr&) = default;
};

/// Symbols: a digit, `inf` (also `∞` or `\infty`), or `(<digits>)` for
/// multi-digit values. Whitespace is ignored.
PatternExpr parse_pattern(std::string_view text);

/// One pattern per line; `#` starts a comment; blank lines are skipped.
std::vector<PatternExpr> parse_pattern_file(std::string_view text);

class NegativeExponent : public Error {
public:
    NegativeExponent(std::string expr, long long value);
    const std::string& expr() const noexcept { return expr_; }
    long long value() const noexcept { return value_; }

private:
    std::string expr_;
    long long value_;
};

/// Concatenated runs; throws NegativeExponent.
Coloring expand(const PatternExpr& pattern, const Bindings& bindings);

/// A conjunction of comparisons between expressions, e.g. `s >= 3, g > 1`.
class Guard {
public:
    enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };
    struct Clause {
        ExponentExpr lhs;
        Cmp cmp;
        ExponentExpr rhs;
        friend bool operator==(const Clause&, const Clause&) = default;
    };

    static Guard parse(std::string_view text);
    bool holds(const Bindings& b) const;
    std::string to_string() const;
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

private:
    std::vector<Clause> clauses_;
};

struct BuiltinPattern {
    std::string name;
    Mode mode = Mode::residues();
    Guard guard;
    ExponentExpr expected_length;
    PatternExpr row_s;
    /// Row read mod r; absent when the same row serves both moduli.
    std::optional<PatternExpr> row_r;
};

/// `name | mode | guard | length | row [| row mod r]` lines, `#` comments.
std::vector<BuiltinPattern> parse_builtin_library(std::string_view text);

/// The shipped library of lower-bound constructions.
const std::vector<BuiltinPattern>& builtin_library();
std::string_view builtin_library_text();
const BuiltinPattern& find_builtin(std::string_view name);

struct Incompatible {
    Position position;
    Symbol residue_s;
    Symbol residue_r;

    friend bool operator==(const Incompatible&, const Incompatible&) = default;
};

/// Merges the two rows position by position: the least v mod lcm(s, r) with
/// v = row_s (mod s) and v = row_r (mod r). Finite-mode builtins expand their
/// single row unchanged.
std::variant<Coloring, Incompatible> expand_dual_row(const BuiltinPattern& b, const Bindings& bindings);

class GuardViolation : public Error {
public:
    using Error::Error;
};

struct VerifyReport {
    enum class Status { Ok, Incompatible, Finding };

    Status status = Status::Ok;
    int length = 0;
    long long expected_length = 0;
    bool length_ok = false;
    bool alive = false;
    std::optional<Coloring> coloring;
    std::optional<Witness> witness;
    std::optional<Incompatible> incompatible;
};

std::string to_string(VerifyReport::Status status);

/// Expands the builtin, checks its length and that it has no solution.
/// Throws GuardViolation when the bindings fall outside the guard.
VerifyReport verify_builtin(const BuiltinPattern& b, const Bindings& bindings);

/// (s, r) pairs from the ranges with r >= s >= 2 satisfying the guard.
std::vector<Bindings> admissible_bindings(const BuiltinPattern& b, const std::vector<int>& s_values,
                                          const std::vector<int>& r_values);

}  // namespace zsdiam
