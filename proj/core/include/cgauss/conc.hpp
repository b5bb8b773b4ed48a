#pragma once

#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "cgauss/errors.hpp"

namespace cgauss::conc {

/// Cooperative cancellation flag, polled by race bodies between steps.
class CancelToken {
public:
    bool cancelled() const noexcept { return flag_.load(std::memory_order_acquire); }
    void cancel() noexcept { flag_.store(true, std::memory_order_release); }

private:
    std::atomic<bool> flag_{false};
};

enum class SchedMode { Parallel, DeterministicInterleave };

struct Scheduler {
    SchedMode mode = SchedMode::Parallel;
    /// Interleave: steps granted to each live task per round.
    int step_budget = 1;
    /// Parallel: max worker threads; 0 means one thread per task.
    unsigned worker_cap = 0;

    static Scheduler parallel(unsigned cap = 0) { return {SchedMode::Parallel, 1, cap}; }
    static Scheduler interleave(int budget = 1) {
        if (budget < 1) throw std::invalid_argument("step budget must be >= 1");
        return {SchedMode::DeterministicInterleave, budget, 0};
    }
};

/// How a task body spends simulated cost units.
enum class BurnMode { None, Busy, Sleep };

/// Spend `units` cost units: deterministic fixed-count spins in Busy mode,
/// microsleeps (aggregated into short slices) in Sleep mode. Returns early
/// when the token is cancelled; polls at sub-millisecond intervals.
void burn_units(BurnMode mode, long units, const CancelToken* token = nullptr);

/// Workers currently alive; equal before and after every race call.
long live_worker_count() noexcept;

namespace detail {

class WorkerGuard {
public:
    WorkerGuard();
    ~WorkerGuard();
};

} // namespace detail

/// A racing computation, driven one counted step at a time. Each call to
/// `step` performs one approximation query plus surrounding arithmetic and
/// returns the final value once available. A step may throw FuelExhausted,
/// which permanently removes the task from the race.
template <class T>
struct RaceTask {
    int id = 0; // 1-based
    std::function<std::optional<T>(const CancelToken&)> step;
};

struct RaceStats {
    std::vector<long> steps_per_task; // by task position
    int rounds = 0;                   // interleave mode only

    long total_steps() const {
        long t = 0;
        for (long s : steps_per_task) t += s;
        return t;
    }
};

template <class T>
struct RaceResult {
    int winner_id = 0;
    T value;
    RaceStats stats;
};

/// Race the tasks; return some terminating task's value. In Parallel mode the
/// winner is nondeterministic and all losers are cancelled and joined before
/// returning. In DeterministicInterleave mode tasks are stepped round-robin
/// on the calling thread; the winner is the lowest-id task among those
/// completing in the earliest round. Blocks forever if no task terminates
/// (unless every task eventually throws FuelExhausted, which yields
/// AllTasksExhausted). Callable from a single orchestrator thread only.
template <class T>
RaceResult<T> race(std::vector<RaceTask<T>> tasks, const Scheduler& sched);

// --- bounded-width nondeterministic process trees ---

template <class T>
class ProcTree;

/// Result of one raced child: a final value, or a deferred subtree.
template <class T>
class ProcOutcome {
public:
    using Thunk = std::function<ProcTree<T>()>;

    static ProcOutcome leaf(T v) { return ProcOutcome(std::variant<T, Thunk>(std::in_place_index<0>, std::move(v))); }
    static ProcOutcome descend(Thunk t) { return ProcOutcome(std::variant<T, Thunk>(std::in_place_index<1>, std::move(t))); }

    bool is_leaf() const { return v_.index() == 0; }
    T& leaf_value() { return std::get<0>(v_); }
    Thunk& thunk() { return std::get<1>(v_); }

private:
    explicit ProcOutcome(std::variant<T, Thunk> v) : v_(std::move(v)) {}
    std::variant<T, Thunk> v_;
};

/// One nondeterministic choice node: 1..n concurrently raced children, each
/// resolving to a leaf or to a deferred subtree. Subtrees of losing children
/// are never built; there is no backtracking.
template <class T>
class ProcTree {
public:
    using Outcome = ProcOutcome<T>;
    using ChildStep = std::function<std::optional<Outcome>(const CancelToken&)>;

    explicit ProcTree(std::vector<ChildStep> children) : children_(std::move(children)) {
        if (children_.empty()) throw std::invalid_argument("process tree node needs at least one child");
    }

    static ProcTree leaf(T value) {
        std::vector<ChildStep> one;
        one.push_back([v = std::move(value), emitted = false](const CancelToken&) mutable -> std::optional<Outcome> {
            if (emitted) return std::nullopt;
            emitted = true;
            return Outcome::leaf(std::move(v));
        });
        return ProcTree(std::move(one));
    }

    int width() const { return static_cast<int>(children_.size()); }
    std::vector<ChildStep> take_children() { return std::move(children_); }

private:
    std::vector<ChildStep> children_;
};

struct ProcTreeInstr {
    int max_width = 0;
    long races = 0;
    bool ended_at_leaf = false;
};

/// Monadic composition: every leaf v of `first` continues as then(v). Node
/// widths of both trees are preserved, so sequencing never widens a node.
template <class A, class B>
ProcTree<B> bind(ProcTree<A> first, std::function<ProcTree<B>(A)> then);

/// Run one race per node until some child resolves to a leaf.
template <class T>
T eval_proc_tree(ProcTree<T> t, const Scheduler& sched, ProcTreeInstr* instr = nullptr);

// --- implementation ---

template <class T>
RaceResult<T> race_interleaved(std::vector<RaceTask<T>>& tasks, int step_budget) {
    const std::size_t n = tasks.size();
    CancelToken never;
    RaceStats stats;
    stats.steps_per_task.assign(n, 0);
    std::vector<bool> alive(n, true);
    std::vector<std::optional<T>> done(n);
    std::exception_ptr first_error;

    for (;;) {
        ++stats.rounds;
        bool any_alive = false;
        bool any_done = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            any_alive = true;
            for (int b = 0; b < step_budget; ++b) {
                std::optional<T> r;
                try {
                    r = tasks[i].step(never);
                } catch (const FuelExhausted&) {
                    alive[i] = false;
                    break;
                } catch (...) {
                    // A throwing body counts as undefined; keep racing.
                    if (!first_error) first_error = std::current_exception();
                    alive[i] = false;
                    break;
                }
                ++stats.steps_per_task[i];
                if (r) {
                    done[i] = std::move(r);
                    alive[i] = false;
                    any_done = true;
                    break;
                }
            }
        }
        if (any_done) {
            std::size_t best = n;
            for (std::size_t i = 0; i < n; ++i)
                if (done[i] && (best == n || tasks[i].id < tasks[best].id)) best = i;
            return RaceResult<T>{tasks[best].id, std::move(*done[best]), std::move(stats)};
        }
        if (!any_alive) {
            if (first_error) std::rethrow_exception(first_error);
            throw AllTasksExhausted();
        }
    }
}

template <class T>
RaceResult<T> race_parallel(std::vector<RaceTask<T>>& tasks, unsigned cap) {
    const std::size_t n = tasks.size();
    // One thread per task unless capped: simulated-cost bodies spend their
    // time sleeping, and a multiplexed winner would stall behind a heavy
    // loser sharing its worker.
    unsigned workers = cap == 0 ? static_cast<unsigned>(n) : cap;
    if (workers > n) workers = static_cast<unsigned>(n);
    if (workers == 0) workers = 1;

    struct Shared {
        std::mutex m;
        std::condition_variable cv;
        bool have_winner = false;
        std::size_t winner_pos = 0;
        std::optional<T> winner_value;
        std::size_t dead = 0;
        std::exception_ptr first_error;
        CancelToken token;
    } shared;

    RaceStats stats;
    stats.steps_per_task.assign(n, 0);

    auto body = [&](unsigned w) {
        detail::WorkerGuard guard;
        std::vector<std::size_t> mine;
        for (std::size_t i = w; i < n; i += workers) mine.push_back(i);
        std::vector<bool> alive(mine.size(), true);
        std::size_t local_alive = mine.size();

        while (local_alive > 0 && !shared.token.cancelled()) {
            for (std::size_t j = 0; j < mine.size(); ++j) {
                if (!alive[j]) continue;
                if (shared.token.cancelled()) return;
                std::size_t i = mine[j];
                std::optional<T> r;
                try {
                    r = tasks[i].step(shared.token);
                } catch (...) {
                    alive[j] = false;
                    --local_alive;
                    std::lock_guard<std::mutex> lock(shared.m);
                    try {
                        throw;
                    } catch (const FuelExhausted&) {
                    } catch (...) {
                        if (!shared.first_error) shared.first_error = std::current_exception();
                    }
                    if (++shared.dead == n) shared.cv.notify_all();
                    continue;
                }
                ++stats.steps_per_task[i];
                if (r) {
                    std::lock_guard<std::mutex> lock(shared.m);
                    if (!shared.have_winner) {
                        shared.have_winner = true;
                        shared.winner_pos = i;
                        shared.winner_value = std::move(r);
                    }
                    shared.token.cancel();
                    shared.cv.notify_all();
                    return;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);

    {
        std::unique_lock<std::mutex> lock(shared.m);
        shared.cv.wait(lock, [&] { return shared.have_winner || shared.dead == n; });
    }
    shared.token.cancel();
    for (auto& th : pool) th.join();

    if (!shared.have_winner) {
        if (shared.first_error) std::rethrow_exception(shared.first_error);
        throw AllTasksExhausted();
    }
    return RaceResult<T>{tasks[shared.winner_pos].id, std::move(*shared.winner_value), std::move(stats)};
}

template <class T>
RaceResult<T> race(std::vector<RaceTask<T>> tasks, const Scheduler& sched) {
    if (tasks.empty()) throw std::invalid_argument("race needs at least one task");
    if (sched.mode == SchedMode::DeterministicInterleave)
        return race_interleaved(tasks, sched.step_budget);
    return race_parallel(tasks, sched.worker_cap);
}

template <class A, class B>
ProcTree<B> bind(ProcTree<A> first, std::function<ProcTree<B>(A)> then) {
    auto shared_then = std::make_shared<const std::function<ProcTree<B>(A)>>(std::move(then));
    std::vector<typename ProcTree<B>::ChildStep> out;
    for (auto& child : first.take_children()) {
        out.push_back([ch = std::move(child), shared_then](const CancelToken& tok) mutable
                          -> std::optional<ProcOutcome<B>> {
            auto r = ch(tok);
            if (!r) return std::nullopt;
            if (r->is_leaf()) {
                // The continuation subtree is built only if this child wins.
                return ProcOutcome<B>::descend(
                    [a = std::move(r->leaf_value()), shared_then]() { return (*shared_then)(a); });
            }
            return ProcOutcome<B>::descend(
                [sub = std::move(r->thunk()), shared_then]() {
                    return bind<A, B>(sub(), *shared_then);
                });
        });
    }
    return ProcTree<B>(std::move(out));
}

template <class T>
T eval_proc_tree(ProcTree<T> t, const Scheduler& sched, ProcTreeInstr* instr) {
    for (;;) {
        auto children = t.take_children();
        if (instr) {
            instr->max_width = std::max(instr->max_width, static_cast<int>(children.size()));
            ++instr->races;
        }
        std::vector<RaceTask<ProcOutcome<T>>> tasks;
        tasks.reserve(children.size());
        int id = 1;
        for (auto& ch : children) tasks.push_back({id++, std::move(ch)});
        auto rr = race(std::move(tasks), sched);
        if (rr.value.is_leaf()) {
            if (instr) instr->ended_at_leaf = true;
            return std::move(rr.value.leaf_value());
        }
        t = rr.value.thunk()();
    }
}

} // namespace cgauss::conc
