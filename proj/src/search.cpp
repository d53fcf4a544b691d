#include "zsdiam/search.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <thread>

namespace zsdiam {

void SearchLimits::validate() const {
    if (max_n < 0) throw Error("max_n must be nonnegative");
    if (node_budget == 0) throw Error("node budget must be positive");
    if (wall_budget.count() <= 0) throw Error("wall budget must be positive");
    if (workers < 0) throw Error("worker count must be nonnegative");
    if (split_depth < 0) throw Error("split depth must be nonnegative");
}

std::string to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::Exact: return "exact";
    case SearchStatus::LowerBoundOnly: return "lower-bound";
    case SearchStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

std::optional<int> ExtremalResult::value() const {
    if (status != SearchStatus::Exact) return std::nullopt;
    return deepest_alive + 1;
}

SymmetryRule canonical_first_symbol_rule(const ProblemSpec& spec) {
    if (spec.mode().is_finite())
        return {SymmetryRule::Kind::FirstUseColorOrder,
                "colors appear in first-use order: color c+1 never occurs before color c"};
    return {SymmetryRule::Kind::FirstResidueZero,
            "the first residue-valued symbol is 0 (translation by a constant mod lcm(s, r))"};
}

namespace {

/// Tracks what the canonical rule needs about the prefix: the largest color
/// used so far (finite modes) or whether any residue has appeared.
class CanonicalTracker {
public:
    explicit CanonicalTracker(const ProblemSpec& spec) : spec_(spec), marks_{-1} {}

    void push(Symbol sym) {
        int mark = marks_.back();
        if (!sym.is_infinity()) mark = std::max(mark, sym.value());
        marks_.push_back(mark);
    }
    void pop() { marks_.pop_back(); }

    void candidates(std::vector<Symbol>& out) const {
        out.clear();
        const int mark = marks_.back();
        int top = 0;
        switch (spec_.mode().kind()) {
        case Mode::Kind::Finite: top = std::min(spec_.mode().colors() - 1, mark + 1); break;
        case Mode::Kind::Residues:
        case Mode::Kind::InfinityResidues: top = mark < 0 ? 0 : spec_.lcm() - 1; break;
        }
        for (int v = 0; v <= top; ++v) out.push_back(Symbol::value(v));
        if (spec_.mode().allows_infinity()) out.push_back(Symbol::infinity());
    }

private:
    const ProblemSpec& spec_;
    std::vector<int> marks_;
};

struct SharedControl {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> budget_hit{false};
    std::atomic<int> deepest{0};
    std::uint64_t node_budget = 0;
    std::chrono::steady_clock::time_point deadline;
    /// find mode: lowest task index that produced a coloring of the target length.
    std::atomic<std::size_t> found_task{std::numeric_limits<std::size_t>::max()};
};

struct ExploreOutcome {
    int deepest = -1;
    Coloring best;
    bool found_target = false;
};

/// Depth-first exploration of canonical colorings below one prefix.
class Explorer {
public:
    static constexpr std::uint64_t kFlushEvery = 1024;

    Explorer(const ProblemSpec& spec, int max_n, std::optional<int> target, SharedControl& control,
             std::size_t task_index)
        : spec_(spec),
          state_(spec),
          tracker_(spec),
          max_n_(max_n),
          target_(target),
          control_(control),
          task_index_(task_index),
          scratch_(static_cast<std::size_t>(max_n) + 1) {}

    /// Returns false if the prefix itself already contains a solution.
    bool seed(const Coloring& prefix) {
        for (Symbol sym : prefix.symbols()) {
            tracker_.push(sym);
            if (state_.push(sym)) return false;
        }
        note_alive();
        return true;
    }

    void run() {
        if (!target_found()) dfs();
        flush();
    }

    void finish() { flush(); }

    /// Enumerates alive prefixes of exactly `depth` symbols, in DFS order.
    void collect(int depth, std::vector<Coloring>& out) {
        if (state_.size() == depth) {
            out.push_back(state_.coloring());
            return;
        }
        auto& cands = scratch_[static_cast<std::size_t>(state_.size())];
        tracker_.candidates(cands);
        for (Symbol sym : cands) {
            if (!count_node()) return;
            tracker_.push(sym);
            if (!state_.push(sym)) {
                note_alive();
                if (!target_found()) collect(depth, out);
            }
            state_.pop();
            tracker_.pop();
            if (target_found()) return;
        }
    }

    ExploreOutcome outcome() const { return outcome_; }

private:
    bool target_found() const { return outcome_.found_target; }

    bool aborted() const {
        if (control_.budget_hit.load(std::memory_order_relaxed)) return true;
        return target_ && control_.found_task.load(std::memory_order_relaxed) < task_index_;
    }

    void flush() {
        if (pending_ == 0) return;
        const auto total = control_.nodes.fetch_add(pending_, std::memory_order_relaxed) + pending_;
        pending_ = 0;
        if (total > control_.node_budget || std::chrono::steady_clock::now() > control_.deadline)
            control_.budget_hit.store(true, std::memory_order_relaxed);
    }

    bool count_node() {
        if (++pending_ >= kFlushEvery) flush();
        return !aborted();
    }

    void note_alive() {
        const int depth = state_.size();
        if (depth > outcome_.deepest) {
            outcome_.deepest = depth;
            outcome_.best = state_.coloring();
            int seen = control_.deepest.load(std::memory_order_relaxed);
            while (depth > seen && !control_.deepest.compare_exchange_weak(seen, depth)) {
            }
        }
        if (target_ && depth == *target_) {
            outcome_.found_target = true;
            auto cur = control_.found_task.load();
            while (task_index_ < cur && !control_.found_task.compare_exchange_weak(cur, task_index_)) {
            }
        }
    }

    void dfs() {
        if (state_.size() >= max_n_) return;
        auto& cands = scratch_[static_cast<std::size_t>(state_.size())];
        tracker_.candidates(cands);
        for (Symbol sym : cands) {
            if (!count_node()) return;
            tracker_.push(sym);
            if (!state_.push(sym)) {
                note_alive();
                if (!target_found()) dfs();
            }
            state_.pop();
            tracker_.pop();
            if (target_found()) return;
        }
    }

    const ProblemSpec& spec_;
    SolverState state_;
    CanonicalTracker tracker_;
    int max_n_;
    std::optional<int> target_;
    SharedControl& control_;
    std::size_t task_index_;
    std::vector<std::vector<Symbol>> scratch_;
    std::uint64_t pending_ = 0;
    ExploreOutcome outcome_;
};

struct RunSummary {
    ExploreOutcome merged;
    bool budget_hit = false;
    std::uint64_t nodes = 0;
    std::chrono::duration<double> elapsed{};
};

/// Splits the canonical tree at a shallow depth and explores the subtrees on
/// a worker pool. Results merge by (depth, task index), so they do not depend
/// on the number of workers.
RunSummary run_search(const ProblemSpec& spec, int max_n, std::optional<int> target, const SearchLimits& limits) {
    limits.validate();
    const auto start = std::chrono::steady_clock::now();
    SharedControl control;
    control.node_budget = limits.node_budget;
    control.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(limits.wall_budget);

    const int split = std::min(limits.split_depth, max_n);
    std::vector<Coloring> prefixes;
    Explorer root(spec, max_n, target, control, 0);
    root.seed(Coloring{});
    root.collect(split, prefixes);
    root.finish();
    RunSummary summary;
    summary.merged = root.outcome();

    if (!summary.merged.found_target && !control.budget_hit.load() && split < max_n) {
        std::vector<ExploreOutcome> outcomes(prefixes.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> done{0};
        std::mutex mu;
        std::condition_variable cv;

        auto worker = [&] {
            while (true) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= prefixes.size()) break;
                // 1 + idx: the root explorer owns index 0
                Explorer ex(spec, max_n, target, control, idx + 1);
                if (!control.budget_hit.load() && !(target && control.found_task.load() <= idx) &&
                    ex.seed(prefixes[idx]))
                    ex.run();
                outcomes[idx] = ex.outcome();
                done.fetch_add(1);
                cv.notify_all();
            }
        };

        int workers = limits.workers > 0 ? limits.workers : static_cast<int>(std::thread::hardware_concurrency());
        workers = std::clamp(workers, 1, std::max<int>(1, static_cast<int>(prefixes.size())));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

        if (limits.on_progress) {
            std::unique_lock lock(mu);
            while (done.load() < prefixes.size()) {
                cv.wait_for(lock, std::chrono::seconds(1));
                SearchProgress progress;
                progress.nodes = control.nodes.load();
                progress.tasks_done = done.load();
                progress.tasks_total = prefixes.size();
                progress.elapsed = std::chrono::steady_clock::now() - start;
                progress.deepest_alive = control.deepest.load();
                limits.on_progress(progress);
            }
        }
        for (auto& t : pool) t.join();

        for (std::size_t idx = 0; idx < outcomes.size(); ++idx) {
            auto& o = outcomes[idx];
            if (target) {
                if (o.found_target) {
                    summary.merged = std::move(o);
                    break;
                }
            } else if (o.deepest > summary.merged.deepest) {
                summary.merged = std::move(o);
            }
        }
    }
    summary.budget_hit = control.budget_hit.load();
    summary.nodes = control.nodes.load();
    summary.elapsed = std::chrono::steady_clock::now() - start;
    return summary;
}

}  // namespace

std::vector<Symbol> canonical_candidates(const ProblemSpec& spec, const Coloring& prefix) {
    CanonicalTracker tracker(spec);
    for (Symbol sym : prefix.symbols()) tracker.push(sym);
    std::vector<Symbol> out;
    tracker.candidates(out);
    return out;
}

bool is_canonical(const ProblemSpec& spec, const Coloring& coloring) {
    CanonicalTracker tracker(spec);
    std::vector<Symbol> cands;
    for (Symbol sym : coloring.symbols()) {
        tracker.candidates(cands);
        if (std::find(cands.begin(), cands.end(), sym) == cands.end()) return false;
        tracker.push(sym);
    }
    return true;
}

std::uint64_t count_canonical(const ProblemSpec& spec, int n) {
    CanonicalTracker tracker(spec);
    std::vector<std::vector<Symbol>> scratch(static_cast<std::size_t>(n) + 1);
    std::function<std::uint64_t(int)> walk = [&](int depth) -> std::uint64_t {
        if (depth == n) return 1;
        auto& cands = scratch[static_cast<std::size_t>(depth)];
        tracker.candidates(cands);
        std::uint64_t total = 0;
        for (Symbol sym : std::vector<Symbol>(cands)) {
            tracker.push(sym);
            total += walk(depth + 1);
            tracker.pop();
        }
        return total;
    };
    return walk(0);
}

ExtremalResult compute_f(const ProblemSpec& spec, const SearchLimits& limits) {
    auto run = run_search(spec, limits.max_n, std::nullopt, limits);
    ExtremalResult result;
    result.deepest_alive = std::max(run.merged.deepest, 0);
    result.counterexample = run.merged.best;
    result.nodes = run.nodes;
    result.elapsed = run.elapsed;
    if (run.budget_hit)
        result.status = SearchStatus::BudgetExceeded;
    else if (result.deepest_alive >= limits.max_n)
        result.status = SearchStatus::LowerBoundOnly;
    else
        result.status = SearchStatus::Exact;
    return result;
}

std::optional<Coloring> find_counterexample(const ProblemSpec& spec, int n, const SearchLimits& limits) {
    if (n < 0) throw Error("length must be nonnegative");
    if (n == 0) return Coloring{};
    auto run = run_search(spec, n, n, limits);
    if (run.merged.found_target) return run.merged.best.prefix(n);
    if (run.budget_hit)
        throw BudgetExceeded("counterexample search for n=" + std::to_string(n) + " exceeded its budget after " +
                             std::to_string(run.nodes) + " nodes");
    return std::nullopt;
}

}  // namespace zsdiam
