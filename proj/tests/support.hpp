#pragma once

#include <random>
#include <vector>

#include "cgauss/gauss.hpp"

namespace cgauss::testing {

inline Rational R(const char* s) { return Rational::parse(s); }

inline Rational random_fraction(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

/// Nonzero rational with |q| in roughly [2^lo, 2^hi].
inline Rational random_nonzero_magnitude(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> exp_dist(lo, hi);
    std::uniform_int_distribution<long> mant_num(1 << 10, (1 << 11) - 1); // mantissa in [1,2)
    std::uniform_int_distribution<int> coin(0, 1);
    Rational m(mant_num(rng), 1 << 10);
    Rational q = m * pow2(exp_dist(rng));
    return coin(rng) ? q : -q;
}

inline RationalMatrix random_rational_matrix(std::mt19937_64& rng, int dim, long num_bound = 1024,
                                             long den_bound = 1024) {
    RationalMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.at(r, c) = random_fraction(rng, num_bound, den_bound);
    return m;
}

inline RationalMatrix random_nonsingular_matrix(std::mt19937_64& rng, int dim,
                                                long num_bound = 1024, long den_bound = 1024) {
    for (;;) {
        RationalMatrix m = random_rational_matrix(rng, dim, num_bound, den_bound);
        try {
            oracle_invert(m);
            return m;
        } catch (const SingularMatrix&) {
        }
    }
}

inline CMatrix cmatrix_of(int dim, const std::vector<const char*>& entries) {
    std::vector<CReal> out;
    out.reserve(entries.size());
    for (const char* s : entries) out.push_back(CReal::from_rational(Rational::parse(s)));
    return CMatrix(dim, std::move(out));
}

inline RationalMatrix rmatrix_of(int dim, const std::vector<const char*>& entries) {
    std::vector<Rational> out;
    out.reserve(entries.size());
    for (const char* s : entries) out.push_back(Rational::parse(s));
    return RationalMatrix(dim, std::move(out));
}

} // namespace cgauss::testing
