#include "cli.hpp"

#include <chrono>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

#include <json.hpp>

namespace cgauss::cli {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Parallel: return "parallel";
    case Mode::Interleave: return "interleave";
    default: return "rational-oracle";
    }
}

int guard(std::ostream& out, std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        out << ordered_json{{"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainViolation& e) {
        out << ordered_json{{"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) { // fuel exhaustion, singular matrix, ...
        out << ordered_json{{"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

ordered_json pivots_json(const InvertTrace& trace) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : trace.pivots) {
        ordered_json steps = ordered_json::array();
        for (long s : p.steps_per_candidate) steps.push_back(s);
        arr.push_back(ordered_json{{"column", p.column},
                                   {"row", p.pivot_row},
                                   {"witness_k", p.witness_k},
                                   {"candidates", p.candidates},
                                   {"steps", std::move(steps)}});
    }
    return arr;
}

ordered_json matrix_json(const CMatrix& m, PrecisionIndex p) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < m.dim(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c).approx(p).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json matrix_json(const RationalMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < m.dim(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Mode parse_mode(const std::string& name) {
    if (name == "parallel") return Mode::Parallel;
    if (name == "interleave") return Mode::Interleave;
    if (name == "rational-oracle") return Mode::RationalOracle;
    throw ParseError("unknown mode: \"" + name + "\"");
}

void RunConfig::validate() const {
    if (precision < 1) throw ParseError("precision must be >= 1");
    if (dim < 1) throw ParseError("dim must be >= 1");
    if (step_budget < 1) throw ParseError("step budget must be >= 1");
}

conc::Scheduler scheduler_for(const RunConfig& cfg) {
    if (cfg.mode == Mode::Interleave) return conc::Scheduler::interleave(cfg.step_budget);
    return conc::Scheduler::parallel(cfg.threads);
}

int cmd_invert(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(out, err, [&]() {
        cfg.validate();
        MatrixSpec spec = load_matrix_file(file);
        auto start = Clock::now();

        if (cfg.mode == Mode::RationalOracle) {
            RationalMatrix a = spec.to_rational_matrix();
            RationalMatrix inv = oracle_invert(a);
            auto profile = bit_size_profile(a);
            ordered_json report{{"command", "invert"},
                                {"mode", mode_name(cfg.mode)},
                                {"dim", spec.dim},
                                {"inverse", matrix_json(inv)},
                                {"residual", "0"},
                                {"residual_ok", true},
                                {"bit_profile", profile}};
            out << report.dump(2) << "\n";
            err << "exact inverse of dim=" << spec.dim << " in " << ms_since(start) << " ms\n";
            return 0;
        }

        conc::Scheduler sched = scheduler_for(cfg);
        CMatrix a = spec.to_cmatrix();
        InvertTrace trace;
        CMatrix b = invert(a, sched, cfg.fuel, &trace);
        Rational residual = residual_check(b, a, cfg.precision);
        bool ok = residual <= pow2(-cfg.precision);

        ordered_json report{{"command", "invert"},
                            {"mode", mode_name(cfg.mode)},
                            {"dim", spec.dim},
                            {"precision", cfg.precision},
                            {"inverse", matrix_json(b, cfg.precision)},
                            {"residual", residual.str()},
                            {"residual_ok", ok},
                            {"pivots", pivots_json(trace)}};
        out << report.dump(2) << "\n";
        // Timing stays off the report so interleave runs stay reproducible.
        err << "inverted dim=" << spec.dim << " (" << mode_name(cfg.mode) << ") in "
            << ms_since(start) << " ms, residual " << residual.str()
            << (ok ? " within " : " EXCEEDS ") << "2^-" << cfg.precision << "\n";
        return ok ? 0 : 2;
    });
}

int cmd_pivot(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(out, err, [&]() {
        cfg.validate();
        if (cfg.mode == Mode::RationalOracle)
            throw ParseError("pivot needs --mode parallel or interleave");
        auto specs = load_vector_file(file);
        auto start = Clock::now();
        PivotRun run = pivot_race(to_creals(specs), scheduler_for(cfg), cfg.fuel);

        ordered_json steps = ordered_json::array();
        for (long s : run.stats.steps_per_task) steps.push_back(s);
        ordered_json report{{"command", "pivot"},
                            {"mode", mode_name(cfg.mode)},
                            {"size", specs.size()},
                            {"index", run.result.index},
                            {"witness_k", run.result.witness.k},
                            {"steps_per_task", std::move(steps)}};
        out << report.dump(2) << "\n";
        err << "pivot index " << run.result.index << " (k=" << run.result.witness.k << ") in "
            << ms_since(start) << " ms\n";
        return 0;
    });
}

int cmd_convert(const std::string& expr, const std::string& target, int count, std::ostream& out,
                std::ostream& err) {
    return guard(out, err, [&]() {
        if (count < 1) throw ParseError("count must be >= 1");
        ScalarSpec spec = parse_scalar_expr(expr);
        CReal x = spec.to_creal();

        if (target == "cauchy" || target == "memo") {
            if (target == "memo") x = to_memo_stream(x);
            for (int i = 1; i <= count; ++i) out << x.approx(i).str() << "\n";
            err << count << " approximations of " << spec.value.str() << "\n";
            return 0;
        }
        if (target == "signed-digit") {
            SignedDigitStream s = to_signed_digit(x);
            // Force extraction before printing so a domain violation does not
            // leave a half-written list behind.
            auto digits = s.prefix(static_cast<std::size_t>(count));
            for (int d : digits) out << d << "\n";
            err << count << " signed digits of " << spec.value.str() << "\n";
            return 0;
        }
        throw ParseError("unknown target representation: \"" + target + "\"");
    });
}

MatrixSpec hard_pivot_matrix(int dim, unsigned long seed) {
    if (dim < 1) throw ParseError("dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> diag_pick(1, 3);
    std::uniform_int_distribution<int> tiny_exp(16, 23);

    MatrixSpec spec;
    spec.dim = dim;
    spec.entries.assign(static_cast<std::size_t>(dim) * dim, ScalarSpec{Rational(0), 1});
    for (int i = 0; i < dim; ++i) {
        // Cheap large candidate: a few probes at unit cost.
        spec.entries[static_cast<std::size_t>(i) * dim + i] =
            ScalarSpec{Rational(diag_pick(rng), 4), 1};
        // Expensive near-zero candidate raced against it.
        if (i > 0)
            spec.entries[static_cast<std::size_t>(i)] =
                ScalarSpec{pow2(-tiny_exp(rng)), 100};
    }
    return spec;
}

RationalMatrix random_int64_matrix(int dim, unsigned long seed) {
    for (unsigned long attempt = 0;; ++attempt) {
        std::mt19937_64 rng(seed + attempt * 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<long> dist(std::numeric_limits<long>::min(),
                                                 std::numeric_limits<long>::max());
        RationalMatrix m(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m.at(r, c) = Rational(mpz_class(dist(rng)), mpz_class(1));
        try {
            oracle_invert(m);
            return m;
        } catch (const SingularMatrix&) {
        }
    }
}

namespace {

struct TimedInversion {
    double wall_ms = 0;
    InvertTrace trace;
    Rational residual;
    bool ok = false;
    long total_steps = 0;
};

TimedInversion run_inversion(const MatrixSpec& spec, const RunConfig& cfg, Mode mode) {
    RunConfig local = cfg;
    local.mode = mode;
    conc::Scheduler sched = scheduler_for(local);
    CMatrix a = spec.to_cmatrix();
    TimedInversion res;
    auto start = Clock::now();
    EliminationState st = begin_elimination(a);
    while (st.active >= 1) {
        PivotTrace pt;
        st = eliminate_column(std::move(st), sched, cfg.fuel, &pt);
        for (long s : pt.steps_per_candidate) res.total_steps += s;
        res.trace.pivots.push_back(std::move(pt));
    }
    res.residual = residual_check(st.acc_b, a, cfg.precision);
    res.wall_ms = ms_since(start);
    res.ok = res.residual <= pow2(-cfg.precision);
    return res;
}

} // namespace

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(out, err, [&]() {
        cfg.validate();

        if (cfg.mode == Mode::RationalOracle) {
            RationalMatrix m = random_int64_matrix(cfg.dim, cfg.seed);
            std::size_t input_bits = 0;
            for (int r = 0; r < cfg.dim; ++r)
                for (int c = 0; c < cfg.dim; ++c)
                    input_bits = std::max(input_bits, m.at(r, c).bit_size());
            auto start = Clock::now();
            auto profile = bit_size_profile(m);
            ordered_json report{{"command", "bench"},
                                {"mode", mode_name(cfg.mode)},
                                {"dim", cfg.dim},
                                {"seed", cfg.seed},
                                {"input_bits", input_bits},
                                {"bit_profile", profile},
                                {"wall_ms", ms_since(start)}};
            out << report.dump(2) << "\n";
            err << "exact elimination bit growth: input " << input_bits << " bits -> peak "
                << profile.back() << " bits\n";
            return 0;
        }

        MatrixSpec spec = hard_pivot_matrix(cfg.dim, cfg.seed);

        // Race each raw column vector in isolation: the cleanest view of
        // "winner's cost vs sum of all searches".
        CMatrix raw = spec.to_cmatrix();
        ordered_json races = ordered_json::array();
        for (int col = cfg.dim; col >= 1; --col) {
            std::vector<CReal> candidates;
            for (int r = 0; r < col; ++r) candidates.push_back(raw.at(r, col - 1));

            auto pstart = Clock::now();
            PivotRun pr = pivot_race(candidates, conc::Scheduler::parallel(cfg.threads), cfg.fuel);
            double par_ms = ms_since(pstart);

            auto istart = Clock::now();
            PivotRun ir = pivot_race(candidates, conc::Scheduler::interleave(cfg.step_budget), cfg.fuel);
            double il_ms = ms_since(istart);

            races.push_back(ordered_json{
                {"column", col},
                {"parallel",
                 {{"winner", pr.result.index},
                  {"winner_steps", pr.stats.steps_per_task[static_cast<std::size_t>(pr.result.index - 1)]},
                  {"wall_ms", par_ms}}},
                {"interleave",
                 {{"winner", ir.result.index},
                  {"total_steps", ir.stats.total_steps()},
                  {"wall_ms", il_ms}}}});
        }

        TimedInversion par = run_inversion(spec, cfg, Mode::Parallel);
        TimedInversion il = run_inversion(spec, cfg, Mode::Interleave);

        auto run_json = [](const TimedInversion& t) {
            ordered_json winners = ordered_json::array();
            for (const auto& p : t.trace.pivots) winners.push_back(p.pivot_row);
            return ordered_json{{"wall_ms", t.wall_ms},
                                {"pivots", pivots_json(t.trace)},
                                {"winner_rows", std::move(winners)},
                                {"total_steps", t.total_steps},
                                {"residual", t.residual.str()},
                                {"residual_ok", t.ok}};
        };

        ordered_json report{{"command", "bench"},
                            {"dim", cfg.dim},
                            {"seed", cfg.seed},
                            {"precision", cfg.precision},
                            {"column_races", std::move(races)},
                            {"parallel", run_json(par)},
                            {"interleave", run_json(il)}};
        out << report.dump(2) << "\n";
        err << "bench dim=" << cfg.dim << ": parallel " << par.wall_ms << " ms vs interleave "
            << il.wall_ms << " ms (" << il.total_steps << " interleaved steps)\n";
        return (par.ok && il.ok) ? 0 : 2;
    });
}

} // namespace cgauss::cli
