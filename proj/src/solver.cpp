#include "zsdiam/solver.hpp"

#include <algorithm>

namespace zsdiam {

std::vector<int> prefix_profile(const ProblemSpec& spec, const Coloring& coloring) {
    const auto kind = ValidityKind::for_mode(spec.mode(), spec.s());
    std::vector<int> profile(static_cast<std::size_t>(coloring.size() + 1), kNoSet);
    for (Position p = 1; p <= coloring.size(); ++p) {
        if (auto best = min_diam_valid(coloring, spec.s(), kind, p)) profile[static_cast<std::size_t>(p)] = best->diameter;
    }
    return profile;
}

std::optional<Witness> has_solution(const ProblemSpec& spec, const Coloring& coloring) {
    check_symbols(spec, coloring);
    const int n = coloring.size();
    if (n < spec.s() + spec.r()) return std::nullopt;

    const auto kind_s = ValidityKind::for_mode(spec.mode(), spec.s());
    const auto kind_r = ValidityKind::for_mode(spec.mode(), spec.r());
    const auto profile = prefix_profile(spec, coloring);

    for (Position p = spec.s(); p <= n - spec.r(); ++p) {
        const int a = profile[static_cast<std::size_t>(p)];
        if (a == kNoSet) continue;
        auto right = max_diam_valid(coloring, spec.r(), kind_r, p + 1);
        if (!right || a > right->diameter) continue;
        auto left = min_diam_valid(coloring, spec.s(), kind_s, p);
        Witness w;
        w.kind1 = classify_set(coloring, left->set, kind_s);
        w.kind2 = classify_set(coloring, right->set, kind_r);
        w.s1 = std::move(left->set);
        w.s2 = std::move(right->set);
        return w;
    }
    return std::nullopt;
}

SolverState::SolverState(ProblemSpec spec)
    : spec_(std::move(spec)),
      profile_{kNoSet},
      solved_{0},
      occurrences_(static_cast<std::size_t>(spec_.alphabet_size())),
      s_table_(spec_.s() - 2, spec_.s()),
      r_table_(spec_.r() - 2, spec_.r()) {}

int SolverState::occurrence_slot(Symbol sym) const noexcept {
    return sym.is_infinity() ? spec_.lcm() : sym.value();
}

namespace {

/// Sets of infinity (or any color, in finite mode) are judged by occurrence
/// lists; everything else by zero-sum reachability.
bool mono_branch(const Mode& mode, Symbol sym) { return mode.is_finite() || sym.is_infinity(); }

}  // namespace

int SolverState::min_new_s_diameter(Position i) {
    const int s = spec_.s();
    const Symbol last = prefix_[i];
    if (mono_branch(spec_.mode(), last)) {
        const auto& occ = occurrences_[static_cast<std::size_t>(occurrence_slot(last))];
        if (static_cast<int>(occ.size()) < s) return kNoSet;
        return i - occ[occ.size() - static_cast<std::size_t>(s)];
    }
    const int bound = profile_.back();
    const int vi = last.value();
    s_table_.reset();
    int interior = 0;
    for (Position q = i - 1; q >= 1; --q) {
        if (i - q >= bound) break;
        const Symbol sym = prefix_[q];
        if (sym.is_infinity()) continue;
        if (interior >= s - 2 && s_table_.reachable(s - 2, -(sym.value() + vi))) return i - q;
        s_table_.add(sym.value());
        ++interior;
    }
    return kNoSet;
}

bool SolverState::new_r_set_completes_solution(Position i) {
    const int r = spec_.r();
    const Symbol last = prefix_[i];
    if (mono_branch(spec_.mode(), last)) {
        const auto& occ = occurrences_[static_cast<std::size_t>(occurrence_slot(last))];
        if (static_cast<int>(occ.size()) < r) return false;
        const std::size_t top = occ.size() - static_cast<std::size_t>(r);
        for (std::size_t u = 0; u <= top; ++u) {
            const Position q = occ[u];
            if (profile_[static_cast<std::size_t>(q - 1)] <= i - q) return true;
        }
        return false;
    }
    const int vi = last.value();
    r_table_.reset();
    int interior = 0;
    for (Position q = i - 1; q > spec_.s(); --q) {
        const Symbol sym = prefix_[q];
        if (sym.is_infinity()) continue;
        if (interior >= r - 2 && profile_[static_cast<std::size_t>(q - 1)] <= i - q &&
            r_table_.reachable(r - 2, -(sym.value() + vi)))
            return true;
        r_table_.add(sym.value());
        ++interior;
    }
    return false;
}

bool SolverState::push(Symbol sym) {
    if (!symbol_allowed(spec_, sym))
        throw SymbolModeMismatch("symbol " + sym.to_string() + " not allowed in mode " + spec_.mode().to_string());
    prefix_.push_back(sym);
    const Position i = prefix_.size();
    occurrences_[static_cast<std::size_t>(occurrence_slot(sym))].push_back(i);
    const int fresh = min_new_s_diameter(i);
    profile_.push_back(std::min(profile_.back(), fresh));
    const bool found = solved_.back() != 0 || new_r_set_completes_solution(i);
    solved_.push_back(found ? 1 : 0);
    return found;
}

void SolverState::pop() {
    if (prefix_.empty()) throw Error("pop on an empty solver state");
    const Symbol sym = prefix_[prefix_.size()];
    occurrences_[static_cast<std::size_t>(occurrence_slot(sym))].pop_back();
    prefix_.pop_back();
    profile_.pop_back();
    solved_.pop_back();
}

}  // namespace zsdiam
