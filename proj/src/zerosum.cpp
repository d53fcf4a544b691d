#include "zsdiam/zerosum.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace zsdiam {

namespace {

int mod(long long v, int m) {
    long long r = v % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

ResidueMask::ResidueMask(int modulus)
    : modulus_(modulus), words_(static_cast<std::size_t>((modulus + 63) / 64), 0) {
    if (modulus < 1) throw Error("modulus must be positive");
}

void ResidueMask::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

bool ResidueMask::none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void ResidueMask::or_rotated(const ResidueMask& other, int shift) noexcept {
    shift = mod(shift, modulus_);
    if (modulus_ <= 64) {
        std::uint64_t w = other.words_[0];
        if (shift == 0) {
            words_[0] |= w;
            return;
        }
        const std::uint64_t full = modulus_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << modulus_) - 1;
        words_[0] |= ((w << shift) | (w >> (modulus_ - shift))) & full;
        return;
    }
    for (std::size_t wi = 0; wi < other.words_.size(); ++wi) {
        std::uint64_t w = other.words_[wi];
        while (w != 0) {
            int bit = std::countr_zero(w);
            w &= w - 1;
            int x = static_cast<int>(wi * 64) + bit + shift;
            if (x >= modulus_) x -= modulus_;
            set(x);
        }
    }
}

SubsetSumTable::SubsetSumTable(int max_count, int modulus)
    : modulus_(modulus), reach_(static_cast<std::size_t>(std::max(max_count, 0) + 1), ResidueMask(modulus)) {
    reset();
}

void SubsetSumTable::reset() noexcept {
    for (auto& mask : reach_) mask.clear();
    reach_[0].set(0);
}

void SubsetSumTable::add(int value) noexcept {
    const int v = mod(value, modulus_);
    for (std::size_t c = reach_.size() - 1; c >= 1; --c) reach_[c].or_rotated(reach_[c - 1], v);
}

bool SubsetSumTable::reachable(int count, int residue) const noexcept {
    if (count < 0 || count > max_count()) return false;
    return reach_[static_cast<std::size_t>(count)].test(mod(residue, modulus_));
}

bool exists_zero_sum_subset(std::span<const int> values, int m, int modulus, std::span<const int> anchors) {
    if (modulus < 1) throw Error("modulus must be positive");
    const int n = static_cast<int>(values.size());
    if (m < 0 || m > n) return false;
    std::set<int> anchor_set(anchors.begin(), anchors.end());
    if (static_cast<int>(anchor_set.size()) != static_cast<int>(anchors.size()))
        throw Error("duplicate anchor index");
    if (static_cast<int>(anchor_set.size()) > m) return false;
    long long anchor_sum = 0;
    for (int a : anchor_set) {
        if (a < 1 || a > n) throw Error("anchor index " + std::to_string(a) + " outside the sequence");
        anchor_sum += values[static_cast<std::size_t>(a - 1)];
    }
    const int need = m - static_cast<int>(anchor_set.size());
    SubsetSumTable table(need, modulus);
    for (int i = 1; i <= n; ++i) {
        if (!anchor_set.contains(i)) table.add(values[static_cast<std::size_t>(i - 1)]);
    }
    return table.reachable(need, mod(-anchor_sum, modulus));
}

std::optional<std::vector<int>> least_subset_with_sum(std::span<const int> values, int count, int target,
                                                      int modulus) {
    const int n = static_cast<int>(values.size());
    if (count < 0 || count > n) return std::nullopt;
    // suffix[i] covers values[i..n)
    std::vector<SubsetSumTable> suffix(static_cast<std::size_t>(n + 1), SubsetSumTable(count, modulus));
    for (int i = n - 1; i >= 0; --i) {
        suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i + 1)];
        suffix[static_cast<std::size_t>(i)].add(values[static_cast<std::size_t>(i)]);
    }
    int want = mod(target, modulus);
    if (!suffix[0].reachable(count, want)) return std::nullopt;
    std::vector<int> picked;
    int left = count;
    for (int i = 0; i < n && left > 0; ++i) {
        const int v = values[static_cast<std::size_t>(i)];
        if (suffix[static_cast<std::size_t>(i + 1)].reachable(left - 1, want - v)) {
            picked.push_back(i);
            want = mod(want - v, modulus);
            --left;
        }
    }
    return picked;
}

ValidityKind ValidityKind::zero_sum(int m) {
    if (m < 2) throw Error("zero-sum modulus must be at least 2");
    return {Tag::ZeroSumMod, m};
}

ValidityKind ValidityKind::infinity_mono_or_zero_sum(int m) {
    if (m < 2) throw Error("zero-sum modulus must be at least 2");
    return {Tag::InfinityMonoOrZeroSum, m};
}

ValidityKind ValidityKind::for_mode(const Mode& mode, int modulus) {
    switch (mode.kind()) {
    case Mode::Kind::Finite: return mono();
    case Mode::Kind::Residues: return zero_sum(modulus);
    case Mode::Kind::InfinityResidues: return infinity_mono_or_zero_sum(modulus);
    }
    return mono();
}

namespace {

bool better_min(const DiamResult& a, const std::optional<DiamResult>& b) {
    if (!b) return true;
    if (a.diameter != b->diameter) return a.diameter < b->diameter;
    return a.set < b->set;
}

bool better_max(const DiamResult& a, const std::optional<DiamResult>& b) {
    if (!b) return true;
    if (a.diameter != b->diameter) return a.diameter > b->diameter;
    return a.set < b->set;
}

void keep(std::optional<DiamResult>& best, std::optional<DiamResult> cand, bool maximize) {
    if (!cand) return;
    if (maximize ? better_max(*cand, best) : better_min(*cand, best)) best = std::move(cand);
}

/// Occurrence lists of each symbol inside [lo, hi]; only infinity if `only_infinity`.
std::vector<std::vector<Position>> occurrences(const Coloring& coloring, Position lo, Position hi,
                                               bool only_infinity) {
    std::vector<std::vector<Position>> occ;
    std::vector<Symbol> keys;
    for (Position p = lo; p <= hi; ++p) {
        Symbol sym = coloring[p];
        if (only_infinity && !sym.is_infinity()) continue;
        auto it = std::find(keys.begin(), keys.end(), sym);
        if (it == keys.end()) {
            keys.push_back(sym);
            occ.emplace_back();
            it = keys.end() - 1;
        }
        occ[static_cast<std::size_t>(it - keys.begin())].push_back(p);
    }
    return occ;
}

std::optional<DiamResult> mono_min(const Coloring& coloring, int m, Position max_pos, bool only_infinity) {
    std::optional<DiamResult> best;
    for (const auto& occ : occurrences(coloring, 1, max_pos, only_infinity)) {
        const auto size = static_cast<int>(occ.size());
        for (int t = 0; t + m <= size; ++t) {
            DiamResult cand{occ[static_cast<std::size_t>(t + m - 1)] - occ[static_cast<std::size_t>(t)],
                            PositionSet(occ.begin() + t, occ.begin() + t + m)};
            keep(best, std::move(cand), false);
        }
    }
    return best;
}

std::optional<DiamResult> mono_max(const Coloring& coloring, int m, Position min_pos, bool only_infinity) {
    std::optional<DiamResult> best;
    for (const auto& occ : occurrences(coloring, min_pos, coloring.size(), only_infinity)) {
        if (static_cast<int>(occ.size()) < m) continue;
        DiamResult cand;
        if (m == 1) {
            cand = {0, {occ.front()}};
        } else {
            cand.set.assign(occ.begin(), occ.begin() + (m - 1));
            cand.set.push_back(occ.back());
            cand.diameter = occ.back() - occ.front();
        }
        keep(best, std::move(cand), true);
    }
    return best;
}

struct ResiduePoint {
    Position pos;
    int value;
};

std::vector<ResiduePoint> residue_points(const Coloring& coloring, Position lo, Position hi, int modulus) {
    std::vector<ResiduePoint> pts;
    for (Position p = lo; p <= hi; ++p) {
        if (!coloring[p].is_infinity()) pts.push_back({p, coloring[p].value() % modulus});
    }
    return pts;
}

/// Builds the set {a} ∪ lex-least interior ∪ {b} for anchors pts[a], pts[b].
DiamResult assemble(const std::vector<ResiduePoint>& pts, std::size_t a, std::size_t b, int m, int modulus) {
    DiamResult out;
    out.diameter = pts[b].pos - pts[a].pos;
    out.set.push_back(pts[a].pos);
    std::vector<int> inner;
    for (std::size_t t = a + 1; t < b; ++t) inner.push_back(pts[t].value);
    const int target = -(pts[a].value + pts[b].value);
    auto chosen = least_subset_with_sum(inner, m - 2, target, modulus);
    for (int idx : *chosen) out.set.push_back(pts[a + 1 + static_cast<std::size_t>(idx)].pos);
    out.set.push_back(pts[b].pos);
    return out;
}

std::optional<DiamResult> single_zero(const std::vector<ResiduePoint>& pts) {
    for (const auto& pt : pts) {
        if (pt.value == 0) return DiamResult{0, {pt.pos}};
    }
    return std::nullopt;
}

std::optional<DiamResult> zero_sum_min(const Coloring& coloring, int m, int modulus, Position max_pos) {
    const auto pts = residue_points(coloring, 1, max_pos, modulus);
    if (m == 1) return single_zero(pts);
    std::optional<DiamResult> best;
    SubsetSumTable table(m - 2, modulus);
    for (std::size_t a = 0; a < pts.size(); ++a) {
        table.reset();
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const int d = pts[b].pos - pts[a].pos;
            if (best && d >= best->diameter) break;
            if (b > a + 1) table.add(pts[b - 1].value);
            if (table.reachable(m - 2, -(pts[a].value + pts[b].value))) {
                best = assemble(pts, a, b, m, modulus);
                break;
            }
        }
    }
    return best;
}

std::optional<DiamResult> zero_sum_max(const Coloring& coloring, int m, int modulus, Position min_pos) {
    const auto pts = residue_points(coloring, min_pos, coloring.size(), modulus);
    if (m == 1) return single_zero(pts);
    std::optional<DiamResult> best;
    SubsetSumTable table(m - 2, modulus);
    for (std::size_t a = 0; a < pts.size(); ++a) {
        if (best && pts.back().pos - pts[a].pos <= best->diameter) break;
        table.reset();
        std::optional<std::size_t> last;
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (b > a + 1) table.add(pts[b - 1].value);
            if (table.reachable(m - 2, -(pts[a].value + pts[b].value))) last = b;
        }
        if (last) keep(best, assemble(pts, a, *last, m, modulus), true);
    }
    return best;
}

void check_query(const Coloring& coloring, int m, Position pos) {
    if (m < 1) throw Error("set size must be positive");
    if (pos < 1 || pos > coloring.size())
        throw Error("position bound " + std::to_string(pos) + " outside [1, " + std::to_string(coloring.size()) + "]");
}

}  // namespace

std::optional<DiamResult> min_diam_valid(const Coloring& coloring, int m, ValidityKind kind, Position max_pos) {
    check_query(coloring, m, max_pos);
    switch (kind.tag) {
    case ValidityKind::Tag::Mono: return mono_min(coloring, m, max_pos, false);
    case ValidityKind::Tag::ZeroSumMod: return zero_sum_min(coloring, m, kind.modulus, max_pos);
    case ValidityKind::Tag::InfinityMonoOrZeroSum: {
        auto best = mono_min(coloring, m, max_pos, true);
        keep(best, zero_sum_min(coloring, m, kind.modulus, max_pos), false);
        return best;
    }
    }
    return std::nullopt;
}

std::optional<DiamResult> max_diam_valid(const Coloring& coloring, int m, ValidityKind kind, Position min_pos) {
    check_query(coloring, m, min_pos);
    switch (kind.tag) {
    case ValidityKind::Tag::Mono: return mono_max(coloring, m, min_pos, false);
    case ValidityKind::Tag::ZeroSumMod: return zero_sum_max(coloring, m, kind.modulus, min_pos);
    case ValidityKind::Tag::InfinityMonoOrZeroSum: {
        auto best = mono_max(coloring, m, min_pos, true);
        keep(best, zero_sum_max(coloring, m, kind.modulus, min_pos), true);
        return best;
    }
    }
    return std::nullopt;
}

SetKind classify_set(const Coloring& coloring, std::span<const Position> set, ValidityKind kind) {
    switch (kind.tag) {
    case ValidityKind::Tag::Mono: return SetKind::mono(coloring[set.front()]);
    case ValidityKind::Tag::ZeroSumMod: return SetKind::zero_sum();
    case ValidityKind::Tag::InfinityMonoOrZeroSum:
        return coloring[set.front()].is_infinity() ? SetKind::infinity_mono() : SetKind::zero_sum();
    }
    return SetKind::zero_sum();
}

// ---------------------------------------------------------------------------

namespace {

/// Visits nondecreasing index sequences of `length` over [0, alphabet) in
/// lexicographic order until `visit` returns false. Returns the count visited.
std::uint64_t for_each_multiset(int alphabet, int length, const OracleBudget& budget,
                                const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> seq(static_cast<std::size_t>(length), 0);
    std::uint64_t visited = 0;
    if (alphabet < 1) return 0;
    while (true) {
        if (++visited > budget.max_sequences)
            throw BudgetExceeded("oracle enumeration exceeded " + std::to_string(budget.max_sequences) + " sequences");
        if (!visit(seq)) return visited;
        int i = length - 1;
        while (i >= 0 && seq[static_cast<std::size_t>(i)] == alphabet - 1) --i;
        if (i < 0) return visited;
        const int next = seq[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < length; ++j) seq[static_cast<std::size_t>(j)] = next;
    }
}

int distinct_values(const std::vector<int>& sorted) {
    int count = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i] != sorted[i - 1]) ++count;
    }
    return count;
}

/// Searches multisets over `alphabet` of `length` for one lacking an
/// m-element subset with sum 0 mod `modulus`.
OracleResult search_failures(const std::vector<int>& alphabet, int length, int m, int modulus,
                             const OracleBudget& budget,
                             const std::function<bool(const std::vector<int>&)>& admissible = {}) {
    OracleResult result;
    std::vector<int> values(static_cast<std::size_t>(length));
    result.sequences_checked = for_each_multiset(
        static_cast<int>(alphabet.size()), length, budget, [&](const std::vector<int>& idx) {
            for (std::size_t i = 0; i < idx.size(); ++i) values[i] = alphabet[static_cast<std::size_t>(idx[i])];
            if (admissible && !admissible(values)) return true;
            if (exists_zero_sum_subset(values, m, modulus)) return true;
            result.holds = false;
            auto sorted = values;
            std::sort(sorted.begin(), sorted.end());
            result.counterexample = std::move(sorted);
            return false;
        });
    return result;
}

std::vector<int> iota_values(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

OracleResult egz_oracle(int m, int length, OracleBudget budget) {
    if (m < 2) throw Error("egz oracle needs m >= 2");
    if (length < m) throw Error("egz oracle needs length >= m");
    return search_failures(iota_values(m), length, m, m, budget);
}

ThreeValueResult three_color_egz_oracle(int m, OracleBudget budget) {
    if (m < 3) throw Error("three-value oracle needs m >= 3");
    const int length = 2 * m - 2;
    ThreeValueResult out;
    out.with_three_values = search_failures(iota_values(m), length, m, m, budget,
                                            [](const std::vector<int>& v) { return distinct_values(v) >= 3; });
    auto two = search_failures(iota_values(m), length, m, m, budget,
                               [](const std::vector<int>& v) { return distinct_values(v) == 2; });
    out.two_value_failure = two.counterexample;
    return out;
}

namespace {

OracleResult coset_search(int m, int k, CosetReading reading, int length, const OracleBudget& budget) {
    if (length < m) {
        // no m-element selection exists at all
        OracleResult r;
        r.holds = false;
        r.counterexample = std::vector<int>(static_cast<std::size_t>(std::max(length, 0)), 0);
        r.sequences_checked = 1;
        return r;
    }
    if (reading == CosetReading::Stated) return search_failures(iota_values(m), length, m, k, budget);

    const int step = m / k;  // the order-k subgroup is generated by m/k
    OracleResult total;
    for (int base = 0; base < step; ++base) {
        std::vector<int> coset;
        for (int t = 0; t < k; ++t) coset.push_back(base + t * step);
        auto part = search_failures(coset, length, m, m, budget);
        total.sequences_checked += part.sequences_checked;
        if (!part.holds && (total.holds || *part.counterexample < *total.counterexample)) {
            total.holds = false;
            total.counterexample = part.counterexample;
        }
    }
    return total;
}

}  // namespace

CosetResult coset_egz_oracle(int m, int k, CosetReading reading, OracleBudget budget) {
    if (m < 1 || k < 1 || m % k != 0) throw Error("coset oracle needs k | m");
    CosetResult out;
    out.main = coset_search(m, k, reading, m + k - 1, budget);
    out.shorter = coset_search(m, k, reading, m + k - 2, budget);
    return out;
}

}  // namespace zsdiam
