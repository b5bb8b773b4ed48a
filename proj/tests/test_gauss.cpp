#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace cgauss;
using cgauss::testing::R;
using cgauss::testing::cmatrix_of;
using cgauss::testing::rmatrix_of;

namespace {

bool entry_within(const CMatrix& m, int r, int c, const Rational& want, int p) {
    return (m.at(r, c).approx(p) - want).abs() <= pow2(-p);
}

} // namespace

TEST_SUITE_BEGIN("gauss");

TEST_CASE("identity and mat_mul basics") {
    CMatrix e = CMatrix::identity(3);
    CHECK(e.at(0, 1).approx(10) == R("0"));
    CHECK(e.at(1, 1).approx(10) == R("1"));

    CMatrix ee = mat_mul(e, e);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(entry_within(ee, r, c, Rational(r == c ? 1 : 0), 10));

    CMatrix twos = cmatrix_of(2, {"2", "0", "0", "2"});
    CMatrix halves = cmatrix_of(2, {"1/2", "0", "0", "1/2"});
    CMatrix prod = mat_mul(twos, halves);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(entry_within(prod, r, c, Rational(r == c ? 1 : 0), 20));

    CHECK_THROWS_AS(mat_mul(CMatrix::identity(2), CMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("mat_mul agrees with the exact product") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 4; ++i) {
        RationalMatrix a = testing::random_rational_matrix(rng, 3, 64, 16);
        RationalMatrix b = testing::random_rational_matrix(rng, 3, 64, 16);
        RationalMatrix exact = mat_mul(a, b);
        CMatrix approx = mat_mul(CMatrix::from_rationals(a), CMatrix::from_rationals(b));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(entry_within(approx, r, c, exact.at(r, c), 40));
    }
}

TEST_CASE("eliminate_column hand traces") {
    // Identity at column 2: pivot row 2, nothing changes.
    EliminationState st = begin_elimination(CMatrix::identity(2));
    PivotTrace trace;
    st = eliminate_column(std::move(st), conc::Scheduler::interleave(1), {}, &trace);
    CHECK(st.active == 1);
    CHECK(trace.column == 2);
    CHECK(trace.candidates == 2);
    CHECK(entry_within(st.acc_a, 0, 1, R("0"), 20));
    CHECK(entry_within(st.acc_a, 1, 1, R("1"), 20));

    // Swap matrix at column 2: the only candidate is row 1; C2 swaps.
    EliminationState sw = begin_elimination(cmatrix_of(2, {"0", "1", "1", "0"}));
    sw = eliminate_column(std::move(sw), conc::Scheduler::interleave(1), {}, &trace);
    CHECK(trace.pivot_row == 1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(entry_within(sw.acc_a, r, c, Rational(r == c ? 1 : 0), 20));

    // 1x1 case: alpha = 1/2 lands in acc_b.
    EliminationState one = begin_elimination(cmatrix_of(1, {"2"}));
    one = eliminate_column(std::move(one), conc::Scheduler::interleave(1), {}, &trace);
    CHECK(one.active == 0);
    CHECK(entry_within(one.acc_b, 0, 0, R("1/2"), 20));
}

TEST_CASE("column invariant holds exactly for exact inputs") {
    std::mt19937_64 rng(67);
    RationalMatrix a = testing::random_nonsingular_matrix(rng, 4, 32, 8);
    EliminationState st = begin_elimination(CMatrix::from_rationals(a));
    int n = 4;
    while (st.active >= 1) {
        st = eliminate_column(std::move(st), conc::Scheduler::interleave(1));
        for (int c = st.active; c < n; ++c)
            for (int r = 0; r < n; ++r)
                // Exact embeds keep approximations exact through field ops.
                CHECK(st.acc_a.at(r, c).approx(0) == Rational(r == c ? 1 : 0));
    }
}

TEST_CASE("invert identity and the swap matrix") {
    CMatrix inv_e = invert(CMatrix::identity(3), conc::Scheduler::interleave(1));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(entry_within(inv_e, r, c, Rational(r == c ? 1 : 0), 30));

    CMatrix swap = cmatrix_of(2, {"0", "1", "1", "0"});
    CMatrix inv_swap = invert(swap, conc::Scheduler::parallel());
    RationalMatrix expect = rmatrix_of(2, {"0", "1", "1", "0"});
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(entry_within(inv_swap, r, c, expect.at(r, c), 20));
}

TEST_CASE("invert agrees with the exact oracle") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 3; ++i) {
        RationalMatrix a = testing::random_nonsingular_matrix(rng, 5, 1024, 1024);
        RationalMatrix want = oracle_invert(a);
        auto sched = (i % 2 == 0) ? conc::Scheduler::interleave(1) : conc::Scheduler::parallel();
        InvertTrace trace;
        CMatrix got = invert(CMatrix::from_rationals(a), sched, {}, &trace);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) CHECK(entry_within(got, r, c, want.at(r, c), 60));

        // The raced candidates for column i are exactly rows 1..i.
        REQUIRE(trace.pivots.size() == 5);
        for (const auto& p : trace.pivots) {
            CHECK(p.candidates == p.column);
            CHECK(p.pivot_row <= p.column);
        }

        CHECK(residual_check(got, CMatrix::from_rationals(a), 30) <= pow2(-30));
    }
}

TEST_CASE("proc-tree inversion stays within the width bound") {
    std::mt19937_64 rng(73);
    RationalMatrix a = testing::random_nonsingular_matrix(rng, 4, 64, 16);
    RationalMatrix want = oracle_invert(a);
    conc::ProcTreeInstr instr;
    CMatrix got = invert_with_proc_tree(CMatrix::from_rationals(a),
                                        conc::Scheduler::interleave(1), {}, &instr);
    CHECK(instr.max_width <= 4);
    CHECK(instr.ended_at_leaf);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(entry_within(got, r, c, want.at(r, c), 40));
}

TEST_CASE("residual_check flags a non-inverse") {
    CMatrix e = CMatrix::identity(1);
    CMatrix two = cmatrix_of(1, {"2"});
    CHECK(residual_check(e, e, 10) <= pow2(-10));
    CHECK(residual_check(e, two, 5) >= Rational(1) - pow2(-5));

    std::mt19937_64 rng(79);
    RationalMatrix a = testing::random_nonsingular_matrix(rng, 3, 64, 16);
    CMatrix b = CMatrix::from_rationals(oracle_invert(a));
    CHECK(residual_check(b, CMatrix::from_rationals(a), 30) <= pow2(-30));
}

TEST_CASE("fueled inversion of a singular matrix fails cleanly") {
    CMatrix singular = cmatrix_of(2, {"1", "1", "1", "1"});
    CHECK_THROWS_AS(invert(singular, conc::Scheduler::interleave(1), 2000), AllTasksExhausted);
}

TEST_CASE("oracle_invert") {
    RationalMatrix e = RationalMatrix::identity(3);
    CHECK(oracle_invert(e) == e);

    RationalMatrix d = rmatrix_of(2, {"2", "0", "0", "4"});
    CHECK(oracle_invert(d) == rmatrix_of(2, {"1/2", "0", "0", "1/4"}));

    RationalMatrix m = rmatrix_of(2, {"1", "2", "3", "4"});
    RationalMatrix inv = oracle_invert(m);
    CHECK(inv == rmatrix_of(2, {"-2", "1", "3/2", "-1/2"}));
    CHECK(mat_mul(inv, m) == RationalMatrix::identity(2));

    CHECK_THROWS_AS(oracle_invert(rmatrix_of(2, {"1", "1", "1", "1"})), SingularMatrix);
}

TEST_CASE("bit size profile") {
    auto flat = bit_size_profile(RationalMatrix::identity(4));
    for (std::size_t b : flat) CHECK(b <= 1);

    auto small = bit_size_profile(rmatrix_of(2, {"3", "5", "7", "11"}));
    for (std::size_t b : small) CHECK(b <= 8);

    // Random 64-bit integer entries: growth over the first three column steps.
    std::mt19937_64 rng(83);
    RationalMatrix big(6);
    std::uniform_int_distribution<long> dist(std::numeric_limits<long>::min() / 2,
                                             std::numeric_limits<long>::max() / 2);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) big.at(r, c) = Rational(mpz_class(dist(rng)), mpz_class(1));
    auto profile = bit_size_profile(big);
    REQUIRE(profile.size() == 6);
    CHECK(profile[0] < profile[1]);
    CHECK(profile[1] < profile[2]);
}

TEST_SUITE_END();
