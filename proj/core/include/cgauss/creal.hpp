#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cgauss/rational.hpp"

namespace cgauss {

enum class ReprTag { Function, MemoStream, SignedDigit, ExactRational };

/// A natural number k certifying |x| >= 2^-k for the real it was produced for.
struct Witness {
    int k = 0;
};

namespace detail {

/// A capability producing, for every n >= 0, a rational within 2^-n of the
/// represented real. Implementations must be deterministic and safe to query
/// from multiple threads.
class CRealImpl {
public:
    virtual ~CRealImpl() = default;
    virtual Rational approx(int n) const = 0;
    virtual ReprTag repr() const { return ReprTag::Function; }

    /// Simulated cost units consumed by a race worker per query of this value.
    virtual long query_cost() const { return 1; }
};

} // namespace detail

/// A constructive real: for the represented x, |x - approx(n)| <= 2^-n.
/// Values are immutable and cheap to copy; sharing across threads is safe.
class CReal {
public:
    CReal() : CReal(from_rational(Rational())) {}

    Rational approx(PrecisionIndex n) const { return impl_->approx(n.value()); }
    ReprTag repr() const { return impl_->repr(); }
    long query_cost() const { return impl_->query_cost(); }

    static CReal from_rational(Rational q);
    /// Exact rational whose queries carry a simulated cost of `cost` units
    /// when probed inside a race.
    static CReal delayed(Rational q, long cost);
    static CReal from_function(std::function<Rational(int)> f);

    static CReal wrap(std::shared_ptr<const detail::CRealImpl> impl) { return CReal(std::move(impl)); }
    const std::shared_ptr<const detail::CRealImpl>& impl() const { return impl_; }

private:
    explicit CReal(std::shared_ptr<const detail::CRealImpl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const detail::CRealImpl> impl_;
};

/// approx(n) = x.approx(n+1) + y.approx(n+1).
CReal operator+(const CReal& x, const CReal& y);
CReal operator-(const CReal& x, const CReal& y);

/// Cross-budgeted product: with bx = |x.approx(0)|+1, by = |y.approx(0)|+1,
/// kx = ceil(log2 bx)+1, ky = ceil(log2 by)+1,
/// approx(n) = x.approx(n+ky+1) * y.approx(n+kx+1).
CReal operator*(const CReal& x, const CReal& y);

/// Reciprocal of a real apart from zero: requires |x| >= 2^-k.
/// approx(n) = 1 / x.approx(n+2k+2); throws WitnessViolation if the queried
/// approximation contradicts the witness.
CReal inverse(const CReal& x, Witness k);

/// Same real behind a write-once, internally synchronized approximation
/// cache; repeated queries at precision <= max-so-far recompute nothing.
CReal to_memo_stream(const CReal& x);

/// Lazy stream of digits in {-1,0,+1}; the represented x in [-1,1] satisfies
/// |x - sum_{i=1..n} d_i 2^-i| <= 2^-n for every n.
class SignedDigitStream {
public:
    /// Digit extraction from an arbitrary real in [-1,1].
    static SignedDigitStream extract(CReal x);
    /// Stream with explicitly given digits (generator indexed from 1).
    static SignedDigitStream from_generator(std::function<int(std::size_t)> gen);

    /// i >= 1; forces production up to i.
    int digit(std::size_t i) const;
    std::vector<int> prefix(std::size_t n) const;
    /// sum_{i=1..n} d_i 2^-i.
    Rational partial_sum(std::size_t n) const;

private:
    struct State;
    explicit SignedDigitStream(std::shared_ptr<State> st) : st_(std::move(st)) {}
    std::shared_ptr<State> st_;
};

/// Requires |x| <= 1; throws DomainViolation if a queried approximation
/// proves |x| > 1.
SignedDigitStream to_signed_digit(const CReal& x);

/// approx(n) = partial_sum(n); valid by the stream invariant.
CReal from_signed_digit(SignedDigitStream s);

} // namespace cgauss
