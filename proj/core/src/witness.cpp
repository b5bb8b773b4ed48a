#include "cgauss/witness.hpp"

namespace cgauss {

ApartnessSearch::ApartnessSearch(CReal x, std::optional<long> fuel, conc::BurnMode burn)
    : current_(std::move(x)), fuel_(fuel), burn_(burn) {}

std::optional<Witness> ApartnessSearch::step(const conc::CancelToken& token) {
    if (fuel_ && probes_ >= *fuel_) throw FuelExhausted();

    conc::burn_units(burn_, current_.query_cost() - 1, &token);
    if (token.cancelled()) return std::nullopt;

    Rational q = current_.approx(PrecisionIndex(0));
    ++probes_;
    if (q.abs() > Rational(2)) return Witness{static_cast<int>(probes_ - 1)};
    current_ = current_ + current_;
    return std::nullopt;
}

ApartnessTrace phi1_trace(const Rational& q, std::optional<long> fuel) {
    ApartnessTrace t;
    Rational cur = q;
    const Rational two(2);
    for (;;) {
        if (fuel && t.probes >= *fuel) throw FuelExhausted();
        ++t.probes;
        if (cur.abs() > two) return t;
        ++t.k;
        cur = cur * two;
    }
}

Witness phi1(const CReal& x, std::optional<long> fuel) {
    ApartnessSearch search(x, fuel);
    conc::CancelToken never;
    for (;;) {
        if (auto w = search.step(never)) return *w;
    }
}

} // namespace cgauss
