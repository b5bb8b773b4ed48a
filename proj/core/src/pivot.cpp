#include "cgauss/pivot.hpp"

namespace cgauss {

namespace {

conc::BurnMode burn_for(const conc::Scheduler& sched) {
    return sched.mode == conc::SchedMode::Parallel ? conc::BurnMode::Sleep
                                                   : conc::BurnMode::Busy;
}

std::vector<conc::RaceTask<PivotResult>> make_tasks(const std::vector<CReal>& xs,
                                                    conc::BurnMode burn,
                                                    std::optional<long> fuel) {
    std::vector<conc::RaceTask<PivotResult>> tasks;
    tasks.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        tasks.push_back({id, [search = ApartnessSearch(xs[i], fuel, burn),
                              id](const conc::CancelToken& tok) mutable -> std::optional<PivotResult> {
                             auto w = search.step(tok);
                             if (!w) return std::nullopt;
                             return PivotResult{id, *w};
                         }});
    }
    return tasks;
}

} // namespace

PivotRun pivot_race(const std::vector<CReal>& xs, const conc::Scheduler& sched,
                    std::optional<long> fuel) {
    if (xs.empty()) throw std::invalid_argument("pivot search over an empty vector");
    auto rr = conc::race(make_tasks(xs, burn_for(sched), fuel), sched);
    return PivotRun{std::move(rr.value), std::move(rr.stats)};
}

PivotResult pivotN(const std::vector<CReal>& xs, const conc::Scheduler& sched,
                   std::optional<long> fuel) {
    return pivot_race(xs, sched, fuel).result;
}

PivotResult pivot2(const CReal& x, const CReal& y, const conc::Scheduler& sched,
                   std::optional<long> fuel) {
    return pivotN({x, y}, sched, fuel);
}

PivotRun pivot_interleaved(const std::vector<CReal>& xs, int step_budget,
                           std::optional<long> fuel) {
    return pivot_race(xs, conc::Scheduler::interleave(step_budget), fuel);
}

conc::ProcTree<PivotResult> pivot_proc_tree(std::vector<CReal> xs, const conc::Scheduler& sched,
                                            std::optional<long> fuel) {
    if (xs.empty()) throw std::invalid_argument("pivot search over an empty vector");
    conc::BurnMode burn = burn_for(sched);
    std::vector<conc::ProcTree<PivotResult>::ChildStep> children;
    children.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        children.push_back([search = ApartnessSearch(xs[i], fuel, burn), id](const conc::CancelToken& tok) mutable
                               -> std::optional<conc::ProcOutcome<PivotResult>> {
            auto w = search.step(tok);
            if (!w) return std::nullopt;
            return conc::ProcOutcome<PivotResult>::leaf(PivotResult{id, *w});
        });
    }
    return conc::ProcTree<PivotResult>(std::move(children));
}

} // namespace cgauss
