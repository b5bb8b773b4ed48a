#pragma once

#include <optional>
#include <vector>

#include "cgauss/conc.hpp"
#include "cgauss/witness.hpp"

namespace cgauss {

/// Some entry of the queried vector apart from zero, with its certificate.
struct PivotResult {
    int index = 0; // 1-based position in the queried vector
    Witness witness;
};

struct PivotRun {
    PivotResult result;
    conc::RaceStats stats;
};

/// Race one apartness search per entry; requires at least one entry and at
/// least one represented real nonzero (otherwise the race never returns, or
/// throws AllTasksExhausted under fuel).
PivotRun pivot_race(const std::vector<CReal>& xs, const conc::Scheduler& sched,
                    std::optional<long> fuel = {});

PivotResult pivotN(const std::vector<CReal>& xs, const conc::Scheduler& sched,
                   std::optional<long> fuel = {});

PivotResult pivot2(const CReal& x, const CReal& y, const conc::Scheduler& sched,
                   std::optional<long> fuel = {});

/// Single-threaded round-robin baseline: same semantics and step accounting
/// as pivotN under a deterministic interleave scheduler.
PivotRun pivot_interleaved(const std::vector<CReal>& xs, int step_budget = 1,
                           std::optional<long> fuel = {});

/// The pivot race packaged as a one-node process tree, for sequencing with
/// bind; node width equals the vector length.
conc::ProcTree<PivotResult> pivot_proc_tree(std::vector<CReal> xs, const conc::Scheduler& sched,
                                            std::optional<long> fuel = {});

} // namespace cgauss
