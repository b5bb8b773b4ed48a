#include "cgauss/conc.hpp"

#include <chrono>

namespace cgauss::conc {

namespace {

std::atomic<long> g_live_workers{0};

// One busy unit spins a fixed count; one sleep unit stands for 50us. The spin
// count is sized so both unit kinds take wall time of the same order, keeping
// mode comparisons meaningful.
constexpr long kBusySpins = 100000;
constexpr std::chrono::microseconds kSleepPerUnit{50};
// Sleep in slices so cancellation is noticed promptly even on coarse timers.
constexpr std::chrono::microseconds kMaxSleepSlice{1000};

} // namespace

void burn_units(BurnMode mode, long units, const CancelToken* token) {
    if (units <= 0) return;
    switch (mode) {
    case BurnMode::None:
        return;
    case BurnMode::Busy: {
        for (long u = 0; u < units; ++u) {
            if (token && token->cancelled()) return;
            volatile long sink = 0;
            for (long i = 0; i < kBusySpins; ++i) sink = sink + 1;
            (void)sink;
        }
        return;
    }
    case BurnMode::Sleep: {
        auto remaining = kSleepPerUnit * units;
        while (remaining.count() > 0) {
            if (token && token->cancelled()) return;
            auto slice = remaining < kMaxSleepSlice ? remaining : kMaxSleepSlice;
            std::this_thread::sleep_for(slice);
            remaining -= slice;
        }
        return;
    }
    }
}

long live_worker_count() noexcept { return g_live_workers.load(); }

namespace detail {

WorkerGuard::WorkerGuard() { ++g_live_workers; }
WorkerGuard::~WorkerGuard() { --g_live_workers; }

} // namespace detail

} // namespace cgauss::conc
