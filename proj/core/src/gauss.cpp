#include "cgauss/gauss.hpp"

#include <string>

namespace cgauss {

namespace {

void check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
}

void check_same_dim(int a, int b) {
    if (a != b)
        throw DimensionMismatch("matrix dimensions differ: " + std::to_string(a) + " vs " +
                                std::to_string(b));
}

} // namespace

// --- RationalMatrix ---

RationalMatrix::RationalMatrix(int dim) : dim_(dim) {
    check_dim(dim);
    e_.assign(static_cast<std::size_t>(dim) * dim, Rational());
}

RationalMatrix::RationalMatrix(int dim, std::vector<Rational> entries) : dim_(dim), e_(std::move(entries)) {
    check_dim(dim);
    if (e_.size() != static_cast<std::size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dimension");
}

RationalMatrix RationalMatrix::identity(int dim) {
    RationalMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Rational(1);
    return m;
}

std::size_t RationalMatrix::idx(int r, int c) const {
    if (r < 0 || r >= dim_ || c < 0 || c >= dim_) throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * dim_ + c;
}

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    check_same_dim(a.dim(), b.dim());
    int n = a.dim();
    RationalMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Rational s;
            for (int i = 0; i < n; ++i) s += a.at(r, i) * b.at(i, c);
            out.at(r, c) = s;
        }
    return out;
}

// --- CMatrix ---

CMatrix::CMatrix(int dim) : dim_(dim) {
    check_dim(dim);
    e_.assign(static_cast<std::size_t>(dim) * dim, CReal::from_rational(Rational()));
}

CMatrix::CMatrix(int dim, std::vector<CReal> entries) : dim_(dim), e_(std::move(entries)) {
    check_dim(dim);
    if (e_.size() != static_cast<std::size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dimension");
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = CReal::from_rational(Rational(1));
    return m;
}

CMatrix CMatrix::from_rationals(const RationalMatrix& m) {
    CMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out.at(r, c) = CReal::from_rational(m.at(r, c));
    return out;
}

std::size_t CMatrix::idx(int r, int c) const {
    if (r < 0 || r >= dim_ || c < 0 || c >= dim_) throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * dim_ + c;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    check_same_dim(a.dim(), b.dim());
    int n = a.dim();
    CMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            CReal s = a.at(r, 0) * b.at(0, c);
            for (int i = 1; i < n; ++i) s = s + a.at(r, i) * b.at(i, c);
            out.at(r, c) = to_memo_stream(s);
        }
    return out;
}

Rational residual_check(const CMatrix& b, const CMatrix& a, PrecisionIndex p) {
    check_same_dim(b.dim(), a.dim());
    CMatrix prod = mat_mul(b, a);
    int n = prod.dim();
    Rational worst;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Rational target(r == c ? 1 : 0);
            Rational err = (prod.at(r, c).approx(p) - target).abs();
            if (err > worst) worst = err;
        }
    return worst;
}

// --- elimination ---

EliminationState begin_elimination(CMatrix a) {
    int n = a.dim();
    return EliminationState{n, std::move(a), CMatrix::identity(n)};
}

namespace {

// Scale row r0 by alpha, then swap rows r0 and ci; the first two of the
// three row operations of one column step.
void scale_and_swap(CMatrix& m, int ci, int r0, const CReal& alpha) {
    int n = m.dim();
    for (int c = 0; c < n; ++c) m.at(r0, c) = to_memo_stream(alpha * m.at(r0, c));
    if (r0 != ci)
        for (int c = 0; c < n; ++c) std::swap(m.at(r0, c), m.at(ci, c));
}

// The three row operations for the found pivot, applied to both accumulated
// matrices; moves the state down to the next column.
EliminationState apply_pivot(EliminationState st, const PivotResult& pr) {
    const int ci = st.active - 1;
    const int r0 = pr.index - 1;

    CReal alpha = inverse(st.acc_a.at(r0, ci), pr.witness);
    scale_and_swap(st.acc_a, ci, r0, alpha);
    scale_and_swap(st.acc_b, ci, r0, alpha);

    const int n = st.acc_a.dim();
    CMatrix a2 = st.acc_a;
    CMatrix b2 = st.acc_b;
    for (int r = 0; r < n; ++r) {
        if (r == ci) continue;
        CReal m = st.acc_a.at(r, ci);
        for (int c = 0; c < n; ++c) {
            a2.at(r, c) = to_memo_stream(st.acc_a.at(r, c) - m * st.acc_a.at(ci, c));
            b2.at(r, c) = to_memo_stream(st.acc_b.at(r, c) - m * st.acc_b.at(ci, c));
        }
    }
    return EliminationState{st.active - 1, std::move(a2), std::move(b2)};
}

} // namespace

EliminationState eliminate_column(EliminationState st, const conc::Scheduler& sched,
                                  std::optional<long> fuel, PivotTrace* trace) {
    if (st.active < 1) throw std::invalid_argument("no column left to eliminate");
    const int ci = st.active - 1; // 0-based active column

    std::vector<CReal> candidates;
    candidates.reserve(static_cast<std::size_t>(st.active));
    for (int r = 0; r < st.active; ++r) candidates.push_back(st.acc_a.at(r, ci));

    PivotRun run = pivot_race(candidates, sched, fuel);
    if (trace) {
        trace->column = st.active;
        trace->pivot_row = run.result.index;
        trace->witness_k = run.result.witness.k;
        trace->candidates = static_cast<int>(candidates.size());
        trace->steps_per_candidate = run.stats.steps_per_task;
    }
    return apply_pivot(std::move(st), run.result);
}

CMatrix invert(const CMatrix& a, const conc::Scheduler& sched, std::optional<long> fuel,
               InvertTrace* trace) {
    EliminationState st = begin_elimination(a);
    while (st.active >= 1) {
        PivotTrace pt;
        st = eliminate_column(std::move(st), sched, fuel, trace ? &pt : nullptr);
        if (trace) trace->pivots.push_back(std::move(pt));
    }
    return st.acc_b;
}

namespace {

conc::ProcTree<CMatrix> inversion_tree(EliminationState st, const conc::Scheduler& sched,
                                       std::optional<long> fuel, InvertTrace* trace) {
    if (st.active < 1) return conc::ProcTree<CMatrix>::leaf(std::move(st.acc_b));

    const int ci = st.active - 1;
    std::vector<CReal> candidates;
    for (int r = 0; r < st.active; ++r) candidates.push_back(st.acc_a.at(r, ci));

    auto continue_with = [st = std::move(st), &sched, fuel, trace](PivotResult pr) {
        if (trace) {
            PivotTrace pt;
            pt.column = st.active;
            pt.pivot_row = pr.index;
            pt.witness_k = pr.witness.k;
            pt.candidates = st.active;
            trace->pivots.push_back(std::move(pt));
        }
        return inversion_tree(apply_pivot(st, pr), sched, fuel, trace);
    };

    return conc::bind<PivotResult, CMatrix>(pivot_proc_tree(std::move(candidates), sched, fuel),
                                            std::move(continue_with));
}

} // namespace

CMatrix invert_with_proc_tree(const CMatrix& a, const conc::Scheduler& sched,
                              std::optional<long> fuel, conc::ProcTreeInstr* instr,
                              InvertTrace* trace) {
    auto tree = inversion_tree(begin_elimination(a), sched, fuel, trace);
    return conc::eval_proc_tree(std::move(tree), sched, instr);
}

// --- exact oracle ---

namespace {

struct ExactElimination {
    RationalMatrix a;
    RationalMatrix b;

    explicit ExactElimination(const RationalMatrix& in)
        : a(in), b(RationalMatrix::identity(in.dim())) {}

    // One column step with first-nonzero pivoting among rows 0..ci.
    void step(int ci) {
        int n = a.dim();
        int r0 = -1;
        for (int r = 0; r <= ci; ++r) {
            if (!a.at(r, ci).is_zero()) {
                r0 = r;
                break;
            }
        }
        if (r0 < 0) throw SingularMatrix();

        Rational alpha = Rational(1) / a.at(r0, ci);
        for (int c = 0; c < n; ++c) {
            a.at(r0, c) *= alpha;
            b.at(r0, c) *= alpha;
        }
        if (r0 != ci) {
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(r0, c), a.at(ci, c));
                std::swap(b.at(r0, c), b.at(ci, c));
            }
        }
        for (int r = 0; r < n; ++r) {
            if (r == ci) continue;
            Rational m = a.at(r, ci);
            if (m.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= m * a.at(ci, c);
                b.at(r, c) -= m * b.at(ci, c);
            }
        }
    }

    std::size_t max_bits() const {
        std::size_t worst = 0;
        int n = a.dim();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                worst = std::max(worst, a.at(r, c).bit_size());
                worst = std::max(worst, b.at(r, c).bit_size());
            }
        return worst;
    }
};

} // namespace

RationalMatrix oracle_invert(const RationalMatrix& in) {
    ExactElimination el(in);
    for (int ci = in.dim() - 1; ci >= 0; --ci) el.step(ci);
    if (!(mat_mul(el.b, in) == RationalMatrix::identity(in.dim())))
        throw Error("internal error: exact elimination produced a non-inverse");
    return el.b;
}

std::vector<std::size_t> bit_size_profile(const RationalMatrix& in) {
    ExactElimination el(in);
    std::vector<std::size_t> profile;
    profile.reserve(static_cast<std::size_t>(in.dim()));
    for (int ci = in.dim() - 1; ci >= 0; --ci) {
        el.step(ci);
        profile.push_back(el.max_bits());
    }
    return profile;
}

} // namespace cgauss
