#include "zsdiam/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "zsdiam/solver.hpp"

namespace zsdiam {

Bindings Bindings::of(int s, int r) {
    Bindings b;
    b.s = s;
    b.r = r;
    b.g = std::gcd(s, r);
    b.h = b.g == 0 ? 0 : s / b.g;
    b.d = std::max(0, r - (2 * s - 2));
    return b;
}

long long Bindings::lookup(char var) const {
    switch (var) {
    case 's': return s;
    case 'r': return r;
    case 'g': return g;
    case 'h': return h;
    case 'd': return d;
    default: throw Error(std::string("unknown variable '") + var + "'");
    }
}

ExponentExpr ExponentExpr::constant(long long v) {
    ExponentExpr e;
    e.op_ = Op::Const;
    e.value_ = v;
    return e;
}

ExponentExpr ExponentExpr::variable(char name) {
    ExponentExpr e;
    e.op_ = Op::Var;
    e.var_ = name;
    return e;
}

ExponentExpr ExponentExpr::unary(Op op, ExponentExpr arg) {
    ExponentExpr e;
    e.op_ = op;
    e.args_.push_back(std::move(arg));
    return e;
}

ExponentExpr ExponentExpr::binary(Op op, ExponentExpr lhs, ExponentExpr rhs) {
    ExponentExpr e;
    e.op_ = op;
    e.args_.push_back(std::move(lhs));
    e.args_.push_back(std::move(rhs));
    return e;
}

namespace {

long long floor_div(long long a, long long b) {
    if (b == 0) throw Error("fdiv by zero");
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

long long ExponentExpr::evaluate(const Bindings& b) const {
    switch (op_) {
    case Op::Const: return value_;
    case Op::Var: return b.lookup(var_);
    case Op::Neg: return -args_[0].evaluate(b);
    case Op::Add: return args_[0].evaluate(b) + args_[1].evaluate(b);
    case Op::Sub: return args_[0].evaluate(b) - args_[1].evaluate(b);
    case Op::Mul: return args_[0].evaluate(b) * args_[1].evaluate(b);
    case Op::Min: return std::min(args_[0].evaluate(b), args_[1].evaluate(b));
    case Op::Max: return std::max(args_[0].evaluate(b), args_[1].evaluate(b));
    case Op::FloorDiv: return floor_div(args_[0].evaluate(b), args_[1].evaluate(b));
    }
    return 0;
}

namespace {

bool additive(ExponentExpr::Op op) { return op == ExponentExpr::Op::Add || op == ExponentExpr::Op::Sub; }

std::string wrap(const std::string& s) { return "(" + s + ")"; }

}  // namespace

std::string ExponentExpr::to_string() const {
    switch (op_) {
    case Op::Const: return std::to_string(value_);
    case Op::Var: return std::string(1, var_);
    case Op::Neg: {
        const auto inner = args_[0].to_string();
        const bool bare = args_[0].op_ == Op::Const || args_[0].op_ == Op::Var || args_[0].op_ == Op::Min ||
                          args_[0].op_ == Op::Max || args_[0].op_ == Op::FloorDiv;
        return "-" + (bare ? inner : wrap(inner));
    }
    case Op::Add:
    case Op::Sub: {
        auto rhs = args_[1].to_string();
        if (additive(args_[1].op_)) rhs = wrap(rhs);
        return args_[0].to_string() + (op_ == Op::Add ? "+" : "-") + rhs;
    }
    case Op::Mul: {
        auto lhs = args_[0].to_string();
        auto rhs = args_[1].to_string();
        if (additive(args_[0].op_)) lhs = wrap(lhs);
        if (additive(args_[1].op_) || args_[1].op_ == Op::Mul) rhs = wrap(rhs);
        return lhs + "*" + rhs;
    }
    case Op::Min: return "min(" + args_[0].to_string() + ", " + args_[1].to_string() + ")";
    case Op::Max: return "max(" + args_[0].to_string() + ", " + args_[1].to_string() + ")";
    case Op::FloorDiv: return "fdiv(" + args_[0].to_string() + ", " + args_[1].to_string() + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool consume(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view token, const std::string& what) {
        if (!consume(token)) fail(pos_, "expected " + what);
    }
    [[noreturn]] void fail(std::size_t at, const std::string& message) { throw ParseError(at, message); }

    ExponentExpr expr() {
        auto lhs = term();
        while (true) {
            skip_ws();
            const std::size_t at = pos_;
            ExponentExpr::Op op;
            if (consume("+"))
                op = ExponentExpr::Op::Add;
            else if (consume("-"))
                op = ExponentExpr::Op::Sub;
            else
                return lhs;
            operand_follows(at, text_[at]);
            lhs = ExponentExpr::binary(op, std::move(lhs), term());
        }
    }

    PatternExpr pattern() {
        PatternExpr out;
        while (!at_end()) {
            PatternItem item{symbol(), ExponentExpr::constant(1)};
            if (consume("^")) {
                skip_ws();
                const std::size_t brace = pos_;
                expect("{", "'{' after '^'");
                if (peek() == '}') fail(pos_, "empty exponent");
                item.exponent = expr();
                if (at_end()) fail(brace, "unclosed '{'");
                expect("}", "'}'");
            }
            out.items.push_back(std::move(item));
        }
        if (out.items.empty()) fail(0, "empty pattern");
        return out;
    }

    Guard::Clause clause() {
        auto lhs = expr();
        skip_ws();
        Guard::Cmp cmp;
        if (consume("<="))
            cmp = Guard::Cmp::Le;
        else if (consume(">="))
            cmp = Guard::Cmp::Ge;
        else if (consume("==") || consume("="))
            cmp = Guard::Cmp::Eq;
        else if (consume("!="))
            cmp = Guard::Cmp::Ne;
        else if (consume("<"))
            cmp = Guard::Cmp::Lt;
        else if (consume(">"))
            cmp = Guard::Cmp::Gt;
        else
            fail(pos_, "expected a comparison operator");
        return {std::move(lhs), cmp, expr()};
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void operand_follows(std::size_t op_at, char op) {
        const char c = peek();
        if (c == '\0' || c == '}' || c == ')' || c == ',')
            fail(op_at, std::string("expected operand after '") + op + "'");
    }

    static bool starts_operand(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    ExponentExpr term() {
        auto lhs = unary();
        while (true) {
            skip_ws();
            const std::size_t at = pos_;
            if (consume("*")) {
                operand_follows(at, '*');
                lhs = ExponentExpr::binary(ExponentExpr::Op::Mul, std::move(lhs), unary());
            } else if (starts_operand(peek())) {
                // implicit product, as in 2s or 3(s-1)
                lhs = ExponentExpr::binary(ExponentExpr::Op::Mul, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    ExponentExpr unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (consume("-")) {
            operand_follows(at, '-');
            return ExponentExpr::unary(ExponentExpr::Op::Neg, unary());
        }
        return primary();
    }

    ExponentExpr call(ExponentExpr::Op op) {
        expect("(", "'('");
        auto a = expr();
        expect(",", "','");
        auto b = expr();
        expect(")", "')'");
        return ExponentExpr::binary(op, std::move(a), std::move(b));
    }

    ExponentExpr primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size()) fail(at, "expected an expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                if (v > 1'000'000'000LL) fail(at, "constant too large");
                ++pos_;
            }
            return ExponentExpr::constant(v);
        }
        if (consume("(")) {
            auto inner = expr();
            expect(")", "')'");
            return inner;
        }
        if (consume("min")) return call(ExponentExpr::Op::Min);
        if (consume("max")) return call(ExponentExpr::Op::Max);
        if (consume("fdiv")) return call(ExponentExpr::Op::FloorDiv);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            switch (c) {
            case 's': {
                // s/(r,s) is accepted as a spelling of h
                const std::size_t save = pos_;
                if (consume("/") && consume("(") && consume("r") && consume(",") && consume("s") && consume(")"))
                    return ExponentExpr::variable('h');
                pos_ = save;
                return ExponentExpr::variable('s');
            }
            case 'r':
            case 'g':
            case 'h':
            case 'd': return ExponentExpr::variable(c);
            default: fail(at, std::string("unknown variable '") + c + "'");
            }
        }
        fail(at, std::string("unexpected character '") + c + "'");
    }

    Symbol symbol() {
        skip_ws();
        const std::size_t at = pos_;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++pos_;
            return Symbol::value(c - '0');
        }
        if (consume("inf") || consume("\\infty") || consume("\xE2\x88\x9E")) return Symbol::infinity();
        if (consume("(")) {
            skip_ws();
            long long v = 0;
            const std::size_t digits_at = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                if (v >= Symbol::kInfinityCode) fail(digits_at, "symbol value too large");
                ++pos_;
            }
            if (pos_ == digits_at) fail(digits_at, "expected digits in '(...)' symbol");
            expect(")", "')'");
            return Symbol::value(static_cast<int>(v));
        }
        fail(at, std::string("expected a symbol, found '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExponentExpr parse_expr(std::string_view text) {
    Parser p(text);
    if (p.at_end()) throw ParseError(0, "empty expression");
    auto e = p.expr();
    if (!p.at_end()) p.fail(p.pos(), "trailing input");
    return e;
}

PatternExpr parse_pattern(std::string_view text) { return Parser(text).pattern(); }

std::string PatternExpr::to_string() const {
    std::string out;
    for (const auto& item : items) {
        if (item.symbol.is_infinity())
            out += "inf";
        else if (item.symbol.value() <= 9)
            out += static_cast<char>('0' + item.symbol.value());
        else
            out += "(" + std::to_string(item.symbol.value()) + ")";
        if (!(item.exponent == ExponentExpr::constant(1))) out += "^{" + item.exponent.to_string() + "}";
    }
    return out;
}

namespace {

std::vector<std::string_view> content_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const bool blank =
            std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

}  // namespace

std::vector<PatternExpr> parse_pattern_file(std::string_view text) {
    std::vector<PatternExpr> out;
    for (auto line : content_lines(text)) out.push_back(parse_pattern(line));
    return out;
}

NegativeExponent::NegativeExponent(std::string expr, long long value)
    : Error("exponent " + expr + " evaluates to " + std::to_string(value)), expr_(std::move(expr)), value_(value) {}

Coloring expand(const PatternExpr& pattern, const Bindings& bindings) {
    Coloring out;
    for (const auto& item : pattern.items) {
        const long long count = item.exponent.evaluate(bindings);
        if (count < 0) throw NegativeExponent(item.exponent.to_string(), count);
        for (long long t = 0; t < count; ++t) out.push_back(item.symbol);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Guards and builtins

Guard Guard::parse(std::string_view text) {
    Guard g;
    Parser p(text);
    if (p.at_end()) return g;
    while (true) {
        g.clauses_.push_back(p.clause());
        if (p.at_end()) break;
        if (!p.consume(",") && !p.consume("&&")) p.fail(p.pos(), "expected ',' between guard clauses");
    }
    return g;
}

bool Guard::holds(const Bindings& b) const {
    return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) {
        const long long l = c.lhs.evaluate(b);
        const long long r = c.rhs.evaluate(b);
        switch (c.cmp) {
        case Cmp::Lt: return l < r;
        case Cmp::Le: return l <= r;
        case Cmp::Gt: return l > r;
        case Cmp::Ge: return l >= r;
        case Cmp::Eq: return l == r;
        case Cmp::Ne: return l != r;
        }
        return false;
    });
}

std::string Guard::to_string() const {
    static constexpr const char* kOps[] = {"<", "<=", ">", ">=", "=", "!="};
    std::string out;
    for (const auto& c : clauses_) {
        if (!out.empty()) out += ", ";
        out += c.lhs.to_string() + " " + kOps[static_cast<int>(c.cmp)] + " " + c.rhs.to_string();
    }
    return out.empty() ? "true" : out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<BuiltinPattern> parse_builtin_library(std::string_view text) {
    std::vector<BuiltinPattern> out;
    for (auto line : content_lines(text)) {
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t bar = line.find('|', start);
            fields.push_back(trim(line.substr(start, bar == std::string_view::npos ? bar : bar - start)));
            if (bar == std::string_view::npos) break;
            start = bar + 1;
        }
        if (fields.size() != 5 && fields.size() != 6)
            throw Error("builtin line needs 5 or 6 '|'-separated fields: " + std::string(line));
        BuiltinPattern b;
        b.name = std::string(fields[0]);
        try {
            b.mode = Mode::parse(fields[1]);
            b.guard = Guard::parse(fields[2]);
            b.expected_length = parse_expr(fields[3]);
            b.row_s = parse_pattern(fields[4]);
            if (fields.size() == 6) b.row_r = parse_pattern(fields[5]);
        } catch (const Error& e) {
            throw Error("builtin '" + b.name + "': " + e.what());
        }
        out.push_back(std::move(b));
    }
    return out;
}

const std::vector<BuiltinPattern>& builtin_library() {
    static const std::vector<BuiltinPattern> library = parse_builtin_library(builtin_library_text());
    return library;
}

const BuiltinPattern& find_builtin(std::string_view name) {
    for (const auto& b : builtin_library()) {
        if (b.name == name) return b;
    }
    throw Error("no builtin pattern named '" + std::string(name) + "'");
}

namespace {

/// Least v in [0, lcm) with v = a (mod s), v = b (mod r), if one exists.
std::optional<int> crt(int a, int s, int b, int r) {
    const int g = std::gcd(s, r);
    const int lcm = s / g * r;
    a %= s;
    b %= r;
    if ((a - b) % g != 0) return std::nullopt;
    for (int v = a; v < lcm; v += s) {
        if (v % r == b) return v;
    }
    return std::nullopt;
}

}  // namespace

std::variant<Coloring, Incompatible> expand_dual_row(const BuiltinPattern& b, const Bindings& bindings) {
    Coloring row_s = expand(b.row_s, bindings);
    if (b.mode.is_finite()) return row_s;
    Coloring row_r = b.row_r ? expand(*b.row_r, bindings) : row_s;
    if (row_s.size() != row_r.size())
        throw Error("builtin '" + b.name + "': rows expand to lengths " + std::to_string(row_s.size()) + " and " +
                    std::to_string(row_r.size()));
    Coloring merged;
    for (Position p = 1; p <= row_s.size(); ++p) {
        const Symbol x = row_s[p];
        const Symbol y = row_r[p];
        if (x.is_infinity() || y.is_infinity()) {
            if (x != y) return Incompatible{p, x, y};
            merged.push_back(x);
            continue;
        }
        auto v = crt(x.value(), bindings.s, y.value(), bindings.r);
        if (!v) return Incompatible{p, x, y};
        merged.push_back(Symbol::value(*v));
    }
    return merged;
}

std::string to_string(VerifyReport::Status status) {
    switch (status) {
    case VerifyReport::Status::Ok: return "OK";
    case VerifyReport::Status::Incompatible: return "INCOMPATIBLE";
    case VerifyReport::Status::Finding: return "FINDING";
    }
    return "?";
}

VerifyReport verify_builtin(const BuiltinPattern& b, const Bindings& bindings) {
    if (!b.guard.holds(bindings))
        throw GuardViolation("builtin '" + b.name + "' does not apply at s=" + std::to_string(bindings.s) +
                             ", r=" + std::to_string(bindings.r) + " (guard: " + b.guard.to_string() + ")");
    VerifyReport report;
    report.expected_length = b.expected_length.evaluate(bindings);
    auto expanded = expand_dual_row(b, bindings);
    if (auto* bad = std::get_if<Incompatible>(&expanded)) {
        report.status = VerifyReport::Status::Incompatible;
        report.incompatible = *bad;
        report.length = expand(b.row_s, bindings).size();
        report.length_ok = report.length == report.expected_length;
        return report;
    }
    auto& coloring = std::get<Coloring>(expanded);
    report.length = coloring.size();
    report.length_ok = report.length == report.expected_length;
    ProblemSpec spec(bindings.s, bindings.r, b.mode);
    report.witness = has_solution(spec, coloring);
    report.alive = !report.witness.has_value();
    report.coloring = std::move(coloring);
    report.status = report.length_ok && report.alive ? VerifyReport::Status::Ok : VerifyReport::Status::Finding;
    return report;
}

std::vector<Bindings> admissible_bindings(const BuiltinPattern& b, const std::vector<int>& s_values,
                                          const std::vector<int>& r_values) {
    std::vector<Bindings> out;
    for (int s : s_values) {
        for (int r : r_values) {
            if (s < 2 || r < s) continue;
            auto bind = Bindings::of(s, r);
            if (b.guard.holds(bind)) out.push_back(bind);
        }
    }
    return out;
}

}  // namespace zsdiam
