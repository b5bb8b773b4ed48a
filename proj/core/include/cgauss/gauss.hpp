#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cgauss/pivot.hpp"
#include "cgauss/rational.hpp"

namespace cgauss {

class RationalMatrix {
public:
    explicit RationalMatrix(int dim);
    RationalMatrix(int dim, std::vector<Rational> entries);
    static RationalMatrix identity(int dim);

    int dim() const { return dim_; }
    const Rational& at(int r, int c) const { return e_[idx(r, c)]; }
    Rational& at(int r, int c) { return e_[idx(r, c)]; }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.dim_ == b.dim_ && a.e_ == b.e_;
    }

private:
    std::size_t idx(int r, int c) const;
    int dim_;
    std::vector<Rational> e_;
};

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b);

/// n x n matrix of constructive reals. Immutable snapshots: row operations
/// build new entries, so race workers never observe a half-updated matrix.
class CMatrix {
public:
    explicit CMatrix(int dim);
    CMatrix(int dim, std::vector<CReal> entries);
    static CMatrix identity(int dim);
    static CMatrix from_rationals(const RationalMatrix& m);

    int dim() const { return dim_; }
    const CReal& at(int r, int c) const { return e_[idx(r, c)]; }
    CReal& at(int r, int c) { return e_[idx(r, c)]; }

private:
    std::size_t idx(int r, int c) const;
    int dim_;
    std::vector<CReal> e_;
};

/// (A*B)(k,l) = sum_i A(k,i)*B(i,l), with the creal precision budgets.
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

/// max over entries of |(B*A)(k,l).approx(p) - E(k,l)|; at most 2^-p whenever
/// B is a true inverse of A.
Rational residual_check(const CMatrix& b, const CMatrix& a, PrecisionIndex p);

/// One pivot race per eliminated column.
struct PivotTrace {
    int column = 0;    // 1-based
    int pivot_row = 0; // 1-based
    int witness_k = 0;
    int candidates = 0;
    std::vector<long> steps_per_candidate;
};

struct InvertTrace {
    std::vector<PivotTrace> pivots;
};

/// Loop state of the elimination, descending on the active column index:
/// acc_a agrees with the identity on columns active+1..n, and
/// acc_b * A_original = acc_a as reals.
struct EliminationState {
    int active = 0; // 1-based index of the column being worked on
    CMatrix acc_a;
    CMatrix acc_b;
};

EliminationState begin_elimination(CMatrix a);

/// Race the apartness searches over rows 1..active of the active column,
/// then scale the pivot row, swap it into place and clear the column, applied
/// to both accumulated matrices. Returns the state for column active-1.
EliminationState eliminate_column(EliminationState st, const conc::Scheduler& sched,
                                  std::optional<long> fuel = {}, PivotTrace* trace = nullptr);

/// Gauss-Jordan inverse with concurrently raced pivots; for non-singular A
/// the returned B satisfies B*A = E as reals. Diverges on singular input
/// unless fuel is set (then AllTasksExhausted propagates).
CMatrix invert(const CMatrix& a, const conc::Scheduler& sched,
               std::optional<long> fuel = {}, InvertTrace* trace = nullptr);

/// Same inverse, with the per-column pivot races sequenced as a bounded-width
/// process tree (one bind per column).
CMatrix invert_with_proc_tree(const CMatrix& a, const conc::Scheduler& sched,
                              std::optional<long> fuel = {},
                              conc::ProcTreeInstr* instr = nullptr,
                              InvertTrace* trace = nullptr);

/// Exact Gauss-Jordan with first-nonzero pivoting; the independent reference
/// for the creal path. Verifies B*A = E exactly before returning.
RationalMatrix oracle_invert(const RationalMatrix& a);

/// Max entry bit size (over both accumulated matrices) after each column step
/// of the exact elimination.
std::vector<std::size_t> bit_size_profile(const RationalMatrix& a);

} // namespace cgauss
