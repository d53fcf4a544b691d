#include "zsdiam/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace zsdiam {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

NotEnoughOccurrences::NotEnoughOccurrences(std::size_t have, std::size_t need)
    : Error("not enough occurrences: have " + std::to_string(have) + ", need " + std::to_string(need)),
      have_(have),
      need_(need) {}

Mode Mode::finite(int colors) {
    if (colors < 2) throw Error("finite mode needs at least 2 colors, got " + std::to_string(colors));
    if (colors >= Symbol::kInfinityCode) throw Error("too many colors");
    return Mode(Kind::Finite, colors);
}

Mode Mode::parse(std::string_view text) {
    auto parse_int = [&](std::string_view digits) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
            throw Error("bad mode '" + std::string(text) + "' (expected 2|3|k:<n>|z|zinf)");
        return v;
    };
    if (text == "z") return residues();
    if (text == "zinf") return infinity_residues();
    if (text.starts_with("k:")) return finite(parse_int(text.substr(2)));
    return finite(parse_int(text));
}

std::string Mode::to_string() const {
    switch (kind_) {
    case Kind::Residues: return "z";
    case Kind::InfinityResidues: return "zinf";
    case Kind::Finite: break;
    }
    if (colors_ == 2 || colors_ == 3) return std::to_string(colors_);
    return "k:" + std::to_string(colors_);
}

ProblemSpec::ProblemSpec(int s, int r, Mode mode) : s_(s), r_(r), mode_(mode) {
    if (s < 2) throw Error("s must be at least 2");
    if (r < s) throw Error("r must be at least s");
    gcd_ = std::gcd(s, r);
    lcm_ = s / gcd_ * r;
    if (!mode_.is_finite() && lcm_ + 1 >= Symbol::kInfinityCode) throw Error("lcm(s, r) too large");
}

int ProblemSpec::delta() const noexcept { return std::max(0, r_ - (2 * s_ - 2)); }

int ProblemSpec::alphabet_size() const noexcept {
    switch (mode_.kind()) {
    case Mode::Kind::Finite: return mode_.colors();
    case Mode::Kind::Residues: return lcm_;
    case Mode::Kind::InfinityResidues: return lcm_ + 1;
    }
    return 0;
}

std::string ProblemSpec::to_string() const {
    return "(s=" + std::to_string(s_) + ", r=" + std::to_string(r_) + ", mode=" + mode_.to_string() + ")";
}

std::string Symbol::to_string() const { return is_infinity() ? "inf" : std::to_string(code_); }

int diameter(std::span<const Position> sorted_set) {
    if (sorted_set.empty()) return 0;
    return sorted_set.back() - sorted_set.front();
}

Coloring Coloring::from_values(std::span<const int> values) {
    Coloring c;
    for (int v : values) c.push_back(v < 0 ? Symbol::infinity() : Symbol::value(v));
    return c;
}

Symbol Coloring::at(Position p) const {
    if (p < 1 || p > size())
        throw Error("position " + std::to_string(p) + " outside [1, " + std::to_string(size()) + "]");
    return (*this)[p];
}

Coloring Coloring::prefix(int length) const {
    length = std::clamp(length, 0, size());
    return Coloring(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + length));
}

bool symbol_allowed(const ProblemSpec& spec, Symbol sym) noexcept {
    const Mode& mode = spec.mode();
    if (sym.is_infinity()) return mode.allows_infinity();
    if (mode.is_finite()) return sym.value() < mode.colors();
    return sym.value() < spec.lcm();
}

void check_symbols(const ProblemSpec& spec, const Coloring& coloring) {
    for (Position p = 1; p <= coloring.size(); ++p) {
        if (!symbol_allowed(spec, coloring[p]))
            throw SymbolModeMismatch("symbol " + coloring[p].to_string() + " at position " + std::to_string(p) +
                                     " is not allowed in mode " + spec.mode().to_string() + " for " +
                                     spec.to_string());
    }
}

namespace {

bool compact_format(const ProblemSpec& spec) { return spec.mode().is_finite() && spec.mode().colors() <= 10; }

Symbol checked(const ProblemSpec& spec, Symbol sym, std::size_t offset) {
    if (!symbol_allowed(spec, sym))
        throw ParseError(offset, "symbol " + sym.to_string() + " not allowed in mode " + spec.mode().to_string());
    return sym;
}

}  // namespace

Coloring parse_coloring(std::string_view text, const ProblemSpec& spec) {
    Coloring out;
    if (text.empty()) return out;
    if (compact_format(spec) && text.find(',') == std::string_view::npos) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            char ch = text[i];
            if (ch < '0' || ch > '9') throw ParseError(i, std::string("unexpected character '") + ch + "'");
            out.push_back(checked(spec, Symbol::value(ch - '0'), i));
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(start, end - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
            ++start;
        }
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (token == "inf") {
            out.push_back(checked(spec, Symbol::infinity(), start));
        } else {
            if (token.empty()) throw ParseError(start, "empty token");
            int v = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                std::size_t bad = static_cast<std::size_t>(ptr - text.data());
                throw ParseError(bad, "bad token '" + std::string(token) + "'");
            }
            if (v >= Symbol::kInfinityCode) throw ParseError(start, "value too large");
            out.push_back(checked(spec, Symbol::value(v), start));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

std::string format_coloring(const Coloring& coloring) {
    std::string out;
    for (Position p = 1; p <= coloring.size(); ++p) {
        if (p > 1) out += ',';
        out += coloring[p].to_string();
    }
    return out;
}

std::string format_coloring(const Coloring& coloring, const ProblemSpec& spec) {
    if (!compact_format(spec)) return format_coloring(coloring);
    std::string out;
    out.reserve(static_cast<std::size_t>(coloring.size()));
    for (Symbol sym : coloring.symbols()) out += static_cast<char>('0' + sym.value());
    return out;
}

std::string SetKind::to_string() const {
    switch (tag) {
    case Tag::MonoColor: return "mono(" + color.to_string() + ")";
    case Tag::ZeroSum: return "zero-sum";
    case Tag::InfinityMono: return "inf-mono";
    }
    return "?";
}

bool set_has_kind(const Coloring& coloring, std::span<const Position> set, const SetKind& kind, int modulus) {
    switch (kind.tag) {
    case SetKind::Tag::MonoColor:
        return std::all_of(set.begin(), set.end(), [&](Position p) { return coloring[p] == kind.color; });
    case SetKind::Tag::InfinityMono:
        return std::all_of(set.begin(), set.end(), [&](Position p) { return coloring[p].is_infinity(); });
    case SetKind::Tag::ZeroSum: {
        long long sum = 0;
        for (Position p : set) {
            if (coloring[p].is_infinity()) return false;
            sum += coloring[p].value();
        }
        return sum % modulus == 0;
    }
    }
    return false;
}

namespace {

bool kind_allowed(const Mode& mode, const SetKind& kind) {
    switch (mode.kind()) {
    case Mode::Kind::Finite: return kind.tag == SetKind::Tag::MonoColor;
    case Mode::Kind::Residues: return kind.tag == SetKind::Tag::ZeroSum;
    case Mode::Kind::InfinityResidues: return kind.tag != SetKind::Tag::MonoColor;
    }
    return false;
}

bool strictly_increasing(const PositionSet& set) {
    return std::adjacent_find(set.begin(), set.end(), std::greater_equal<>()) == set.end();
}

}  // namespace

bool validate_witness(const ProblemSpec& spec, const Coloring& coloring, const Witness& w) {
    for (const PositionSet* set : {&w.s1, &w.s2}) {
        for (Position p : *set) {
            if (p < 1 || p > coloring.size())
                throw InvalidWitness("witness position " + std::to_string(p) + " outside [1, " +
                                     std::to_string(coloring.size()) + "]");
        }
    }
    if (static_cast<int>(w.s1.size()) != spec.s() || static_cast<int>(w.s2.size()) != spec.r()) return false;
    if (!strictly_increasing(w.s1) || !strictly_increasing(w.s2)) return false;
    if (w.s1.back() >= w.s2.front()) return false;
    if (diameter(w.s1) > diameter(w.s2)) return false;
    if (!kind_allowed(spec.mode(), w.kind1) || !kind_allowed(spec.mode(), w.kind2)) return false;
    return set_has_kind(coloring, w.s1, w.kind1, spec.s()) && set_has_kind(coloring, w.s2, w.kind2, spec.r());
}

PositionSet occurrence_slice(const Coloring& coloring, Symbol sym, OccurrenceSelector selector,
                             std::optional<Interval> within) {
    if (selector.i < 1 || selector.i > selector.j) throw Error("occurrence selector needs 1 <= i <= j");
    Interval iv = within.value_or(Interval{1, coloring.size()});
    if (iv.lo < 1 || iv.hi > coloring.size()) throw Error("interval outside the coloring");

    PositionSet occurrences;
    for (Position p = iv.lo; p <= iv.hi; ++p) {
        if (coloring[p] == sym) occurrences.push_back(p);
    }
    const auto need = static_cast<std::size_t>(selector.j);
    if (occurrences.size() < need) throw NotEnoughOccurrences(occurrences.size(), need);

    PositionSet out;
    if (selector.from == OccurrenceSelector::From::Front) {
        out.assign(occurrences.begin() + (selector.i - 1), occurrences.begin() + selector.j);
    } else {
        const auto n = static_cast<int>(occurrences.size());
        for (int t = selector.i; t <= selector.j; ++t) out.push_back(occurrences[static_cast<std::size_t>(n - t)]);
    }
    return out;
}

}  // namespace zsdiam
