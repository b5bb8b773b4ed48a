// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs against the library exactly as a consumer would.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "support.hpp"

using namespace cgauss;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << title;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// 1. invert() entries at p=60 within 2^-60 of the exact oracle inverse, for
// 50 random non-singular matrices of dims 1..6; under 60 s total.
void criterion_oracle_equivalence() {
    auto start = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> dim_dist(1, 6);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 50 && ok; ++i) {
        int dim = dim_dist(rng);
        RationalMatrix a = testing::random_nonsingular_matrix(rng, dim, 1024, 1024);
        RationalMatrix want = oracle_invert(a);
        auto sched = (i % 2 == 0) ? conc::Scheduler::interleave(1) : conc::Scheduler::parallel();
        CMatrix got = invert(CMatrix::from_rationals(a), sched);
        for (int r = 0; r < dim && ok; ++r)
            for (int c = 0; c < dim && ok; ++c) {
                if ((got.at(r, c).approx(60) - want.at(r, c)).abs() > pow2(-60)) {
                    ok = false;
                    detail = "entry mismatch at matrix " + std::to_string(i);
                }
            }
    }
    double elapsed = ms_since(start);
    if (ok && elapsed > 60000.0) {
        ok = false;
        detail = "too slow";
    }
    report(1, "oracle equivalence at p=60 over 50 random matrices", ok,
           detail.empty() ? std::to_string(elapsed / 1000.0) + " s" : detail);
}

// 2. residual_check(invert(A), A, 30) <= 2^-30 for 20 random non-singular 5x5
// matrices that include pow2(-30) entries, in both modes.
void criterion_residual() {
    std::mt19937_64 rng(2002);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 20 && ok; ++i) {
        RationalMatrix base = testing::random_nonsingular_matrix(rng, 5, 64, 16);
        CMatrix a = CMatrix::from_rationals(base);
        // Sprinkle near-zero dyadic entries while keeping the matrix
        // non-singular (checked through the oracle).
        RationalMatrix spiked = base;
        for (int r = 0; r < 5; ++r) {
            int c = static_cast<int>(rng() % 5);
            spiked.at(r, c) = pow2(-30);
        }
        try {
            oracle_invert(spiked);
            a = CMatrix::from_rationals(spiked);
        } catch (const SingularMatrix&) {
            // keep the unspiked matrix
        }
        for (auto sched : {conc::Scheduler::parallel(), conc::Scheduler::interleave(1)}) {
            CMatrix b = invert(a, sched);
            Rational res = residual_check(b, a, 30);
            if (res > pow2(-30)) {
                ok = false;
                detail = "residual " + res.str() + " at matrix " + std::to_string(i);
                break;
            }
        }
    }
    report(2, "residual <= 2^-30 for 5x5 matrices with 2^-30 entries, both modes", ok, detail);
}

// 3. phi1 sound over 1000 nonzero rationals spanning 2^-40..2^6; fuel never
// exhausted.
void criterion_witness_soundness() {
    std::mt19937_64 rng(3003);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 1000 && ok; ++i) {
        Rational q = testing::random_nonzero_magnitude(rng, -40, 6);
        try {
            Witness w = phi1(CReal::from_rational(q), 128);
            if (pow2(-w.k) > q.abs()) {
                ok = false;
                detail = "unsound witness k=" + std::to_string(w.k) + " for " + q.str();
            }
        } catch (const FuelExhausted&) {
            ok = false;
            detail = "fuel exhausted for " + q.str();
        }
    }
    report(3, "phi1 witness soundness over 1000 rationals", ok, detail);
}

// 4. Interleaving pays the sum, concurrency the minimum: entry 1 needs 5
// probes at cost 1, entry 2 needs 25 probes at cost 100. Interleaved counted
// steps >= 2 * winner steps; parallel wall time <= 0.5 * interleave wall time
// in at least 8 of 10 runs.
void criterion_concurrency_efficiency() {
    CReal cheap = CReal::from_rational(Rational(1, 4)); // 5 probes, cost 1
    CReal heavy = CReal::delayed(pow2(-22), 100);       // 25 probes, cost 100

    bool steps_ok = true;
    int wall_hits = 0;
    std::string detail;
    for (int run = 0; run < 10; ++run) {
        auto il_start = Clock::now();
        PivotRun il = pivot_interleaved({cheap, heavy});
        double il_ms = ms_since(il_start);

        long winner_steps = il.stats.steps_per_task[static_cast<std::size_t>(il.result.index - 1)];
        if (il.result.index != 1 || il.stats.total_steps() < 2 * winner_steps) {
            steps_ok = false;
            detail = "interleave steps " + std::to_string(il.stats.total_steps()) + " < 2*" +
                     std::to_string(winner_steps);
        }

        auto par_start = Clock::now();
        PivotRun par = pivot_race({cheap, heavy}, conc::Scheduler::parallel());
        double par_ms = ms_since(par_start);
        (void)par;
        if (par_ms <= 0.5 * il_ms) ++wall_hits;
    }
    bool ok = steps_ok && wall_hits >= 8;
    if (ok) detail = std::to_string(wall_hits) + "/10 wall-time wins";
    else if (steps_ok) detail = "only " + std::to_string(wall_hits) + "/10 wall-time wins";
    report(4, "concurrent pivoting: minimum vs interleaved sum", ok, detail);
}

// 5. Process-tree inversions of 10 random 4x4 matrices stay within Amb width
// 4 and always end at a leaf.
void criterion_width_bound() {
    std::mt19937_64 rng(5005);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 10 && ok; ++i) {
        RationalMatrix a = testing::random_nonsingular_matrix(rng, 4, 256, 64);
        conc::ProcTreeInstr instr;
        auto sched = (i % 2 == 0) ? conc::Scheduler::interleave(1) : conc::Scheduler::parallel();
        CMatrix b = invert_with_proc_tree(CMatrix::from_rationals(a), sched, {}, &instr);
        if (instr.max_width > 4 || !instr.ended_at_leaf) {
            ok = false;
            detail = "width " + std::to_string(instr.max_width);
        }
        if (ok && residual_check(b, CMatrix::from_rationals(a), 20) > pow2(-20)) {
            ok = false;
            detail = "bad inverse from process tree";
        }
    }
    report(5, "process-tree width <= 4 and leaf termination on 4x4 inversions", ok, detail);
}

// 6. Signed-digit streams of 100 random rationals in [-1,1] satisfy the
// partial-sum bound for n = 1..16.
void criterion_signed_digit() {
    std::mt19937_64 rng(6006);
    std::uniform_int_distribution<long> num(-4096, 4096);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 100 && ok; ++i) {
        Rational q(num(rng), 4096);
        SignedDigitStream s = to_signed_digit(CReal::from_rational(q));
        for (int n = 1; n <= 16 && ok; ++n) {
            if ((q - s.partial_sum(static_cast<std::size_t>(n))).abs() > pow2(-n)) {
                ok = false;
                detail = "bound broken at n=" + std::to_string(n) + " for " + q.str();
            }
        }
    }
    report(6, "signed-digit partial sums within 2^-n for n=1..16", ok, detail);
}

// 7. Exact rational elimination blows up: on a seeded 6x6 matrix of 64-bit
// integers, once column 3 has been eliminated (the elimination descends from
// column 6, so this is the fourth step) the max coefficient bit size is at
// least 4x the input bit size.
void criterion_bit_blowup() {
    RationalMatrix m = cli::random_int64_matrix(6, 7007);
    std::size_t input_bits = 0;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) input_bits = std::max(input_bits, m.at(r, c).bit_size());
    auto profile = bit_size_profile(m);
    std::size_t after_col3 = profile.at(6 - 3);
    bool ok = after_col3 >= 4 * input_bits;
    report(7, "rational coefficient blow-up >= 4x input bits after column 3", ok,
           std::to_string(after_col3) + " bits vs input " + std::to_string(input_bits));
}

// 8. 100 interleave-mode inversions produce byte-identical reports, and
// parallel runs leak no workers.
void criterion_determinism_and_leaks() {
    std::mt19937_64 rng(8008);
    RationalMatrix a = testing::random_nonsingular_matrix(rng, 3, 64, 16);

    std::string file = "/tmp/cgauss_acceptance_3x3.json";
    {
        std::ofstream out(file);
        out << "{\"dim\": 3, \"entries\": [";
        for (int r = 0; r < 3; ++r) {
            out << (r ? ", [" : "[");
            for (int c = 0; c < 3; ++c)
                out << (c ? ", \"" : "\"") << a.at(r, c).str() << "\"";
            out << "]";
        }
        out << "]}\n";
    }

    cli::RunConfig cfg;
    cfg.mode = cli::Mode::Interleave;
    cfg.precision = 20;

    bool ok = true;
    std::string detail;
    std::string first;
    for (int i = 0; i < 100 && ok; ++i) {
        std::ostringstream out, err;
        if (cli::cmd_invert(file, cfg, out, err) != 0) {
            ok = false;
            detail = "inversion failed";
            break;
        }
        if (first.empty()) first = out.str();
        if (out.str() != first) {
            ok = false;
            detail = "report diverged at run " + std::to_string(i);
        }
    }

    long before = conc::live_worker_count();
    for (int i = 0; i < 5 && ok; ++i) {
        cli::RunConfig pcfg = cfg;
        pcfg.mode = cli::Mode::Parallel;
        std::ostringstream out, err;
        if (cli::cmd_invert(file, pcfg, out, err) != 0) {
            ok = false;
            detail = "parallel inversion failed";
        }
        if (conc::live_worker_count() != before) {
            ok = false;
            detail = "worker leak";
        }
    }
    report(8, "interleave determinism over 100 runs, no worker leaks", ok, detail);
}

} // namespace

int main() {
    auto start = Clock::now();
    criterion_oracle_equivalence();
    criterion_residual();
    criterion_witness_soundness();
    criterion_concurrency_efficiency();
    criterion_width_bound();
    criterion_signed_digit();
    criterion_bit_blowup();
    criterion_determinism_and_leaks();
    std::cout << "ACCEPTANCE: " << (8 - g_failures) << "/8 passed in "
              << ms_since(start) / 1000.0 << " s" << std::endl;
    return g_failures > 0 ? 1 : 0;
}
