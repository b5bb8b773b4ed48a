#include "cgauss/creal.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "cgauss/errors.hpp"

namespace cgauss {

using detail::CRealImpl;

namespace {

class ExactImpl final : public CRealImpl {
public:
    explicit ExactImpl(Rational q) : q_(std::move(q)) {}
    Rational approx(int) const override { return q_; }
    ReprTag repr() const override { return ReprTag::ExactRational; }

private:
    Rational q_;
};

class DelayedImpl final : public CRealImpl {
public:
    DelayedImpl(Rational q, long cost) : q_(std::move(q)), cost_(cost) {
        if (cost < 1) throw std::invalid_argument("simulated cost must be >= 1");
    }
    Rational approx(int) const override { return q_; }
    ReprTag repr() const override { return ReprTag::ExactRational; }
    long query_cost() const override { return cost_; }

private:
    Rational q_;
    long cost_;
};

class FunctionImpl final : public CRealImpl {
public:
    explicit FunctionImpl(std::function<Rational(int)> f) : f_(std::move(f)) {}
    Rational approx(int n) const override { return f_(n); }

private:
    std::function<Rational(int)> f_;
};

class AddImpl final : public CRealImpl {
public:
    AddImpl(CReal x, CReal y)
        : x_(std::move(x)), y_(std::move(y)),
          cost_(x_.impl() == y_.impl() ? x_.query_cost() : x_.query_cost() + y_.query_cost()) {}

    Rational approx(int n) const override {
        if (x_.impl() == y_.impl()) {
            // Deterministic operands: both queries would return the same
            // rational, so one traversal suffices. Keeps the repeated-doubling
            // ladder of the apartness search linear in its depth.
            Rational q = x_.impl()->approx(n + 1);
            return q + q;
        }
        return x_.impl()->approx(n + 1) + y_.impl()->approx(n + 1);
    }
    long query_cost() const override { return cost_; }

private:
    CReal x_, y_;
    long cost_;
};

class SubImpl final : public CRealImpl {
public:
    SubImpl(CReal x, CReal y)
        : x_(std::move(x)), y_(std::move(y)), cost_(x_.query_cost() + y_.query_cost()) {}

    Rational approx(int n) const override {
        return x_.impl()->approx(n + 1) - y_.impl()->approx(n + 1);
    }
    long query_cost() const override { return cost_; }

private:
    CReal x_, y_;
    long cost_;
};

// Minimal k >= 0 with 2^k >= b, for b >= 1.
int ceil_log2(const Rational& b) {
    int k = 0;
    Rational p(1);
    const Rational two(2);
    while (p < b) {
        p = p * two;
        ++k;
    }
    return k;
}

class MulImpl final : public CRealImpl {
public:
    MulImpl(CReal x, CReal y)
        : x_(std::move(x)), y_(std::move(y)),
          cost_(x_.impl() == y_.impl() ? x_.query_cost() : x_.query_cost() + y_.query_cost()) {
        // Rational upper bounds on |x| and |y| from the coarsest query.
        Rational bx = x_.impl()->approx(0).abs() + Rational(1);
        Rational by = y_.impl()->approx(0).abs() + Rational(1);
        kx_ = ceil_log2(bx) + 1;
        ky_ = ceil_log2(by) + 1;
    }

    // |x*y - q| <= bx*2^-(n+kx+1) + (by+1)*2^-(n+ky+1) <= 3*2^-(n+2) < 2^-n.
    Rational approx(int n) const override {
        if (x_.impl() == y_.impl()) {
            Rational q = x_.impl()->approx(n + kx_ + 1);
            return q * q;
        }
        Rational qx = x_.impl()->approx(n + ky_ + 1);
        Rational qy = y_.impl()->approx(n + kx_ + 1);
        return qx * qy;
    }
    long query_cost() const override { return cost_; }

private:
    CReal x_, y_;
    long cost_;
    int kx_ = 1, ky_ = 1;
};

class InvImpl final : public CRealImpl {
public:
    InvImpl(CReal x, Witness k) : x_(std::move(x)), k_(k.k), cost_(x_.query_cost()) {
        if (k_ < 0) throw std::invalid_argument("witness must be >= 0");
    }

    // |1/x - 1/q| = |x-q| / (|x||q|) <= 2^-(n+2k+2) / (2^-k * 2^-(k+1)) <= 2^-n.
    Rational approx(int n) const override {
        Rational q = x_.impl()->approx(n + 2 * k_ + 2);
        if (q.abs() < pow2(-(k_ + 1)))
            throw WitnessViolation("approximation contradicts apartness witness k=" + std::to_string(k_));
        return Rational(1) / q;
    }
    long query_cost() const override { return cost_; }

private:
    CReal x_;
    int k_;
    long cost_;
};

class MemoImpl final : public CRealImpl {
public:
    explicit MemoImpl(CReal inner) : inner_(std::move(inner)), cost_(inner_.query_cost()) {}

    Rational approx(int n) const override {
        std::lock_guard<std::mutex> lock(m_);
        // Any cached entry at precision >= n is a valid (and free) answer.
        auto it = cache_.lower_bound(n);
        if (it != cache_.end()) return it->second;
        Rational q = inner_.impl()->approx(n);
        cache_.emplace(n, q);
        return q;
    }
    ReprTag repr() const override { return ReprTag::MemoStream; }
    long query_cost() const override { return cost_; }

private:
    CReal inner_;
    long cost_;
    mutable std::mutex m_;
    mutable std::map<int, Rational> cache_;
};

} // namespace

CReal CReal::from_rational(Rational q) {
    return CReal(std::make_shared<ExactImpl>(std::move(q)));
}

CReal CReal::delayed(Rational q, long cost) {
    return CReal(std::make_shared<DelayedImpl>(std::move(q), cost));
}

CReal CReal::from_function(std::function<Rational(int)> f) {
    return CReal(std::make_shared<FunctionImpl>(std::move(f)));
}

CReal operator+(const CReal& x, const CReal& y) {
    return CReal::wrap(std::make_shared<AddImpl>(x, y));
}

CReal operator-(const CReal& x, const CReal& y) {
    return CReal::wrap(std::make_shared<SubImpl>(x, y));
}

CReal operator*(const CReal& x, const CReal& y) {
    return CReal::wrap(std::make_shared<MulImpl>(x, y));
}

CReal inverse(const CReal& x, Witness k) {
    return CReal::wrap(std::make_shared<InvImpl>(x, k));
}

CReal to_memo_stream(const CReal& x) {
    if (x.repr() == ReprTag::MemoStream) return x;
    return CReal::wrap(std::make_shared<MemoImpl>(x));
}

// --- signed digit streams ---

struct SignedDigitStream::State {
    std::mutex m;
    std::vector<int> digits;

    // Exactly one source is active.
    std::function<int(std::size_t)> generator;
    bool extracting = false;
    CReal residual; // represents 2^n * (x - partial_sum(n)) after n digits

    void produce_locked() {
        std::size_t i = digits.size() + 1;
        if (!extracting) {
            int d = generator(i);
            if (d < -1 || d > 1) throw DomainViolation("signed digit outside {-1,0,1}");
            digits.push_back(d);
            return;
        }
        Rational q = residual.approx(PrecisionIndex(2));
        const Rational quarter = pow2(-2);
        if (q.abs() > Rational(5, 4))
            throw DomainViolation("value proven outside [-1,1] during digit extraction");
        int d = 0;
        if (q <= -quarter) d = -1;
        else if (q >= quarter) d = 1;
        digits.push_back(d);
        CReal doubled = residual + residual;
        if (d != 0) doubled = doubled - CReal::from_rational(Rational(d));
        residual = to_memo_stream(doubled);
    }

    void ensure_locked(std::size_t n) {
        while (digits.size() < n) produce_locked();
    }
};

SignedDigitStream SignedDigitStream::extract(CReal x) {
    auto st = std::make_shared<State>();
    st->extracting = true;
    st->residual = to_memo_stream(x);
    return SignedDigitStream(std::move(st));
}

SignedDigitStream SignedDigitStream::from_generator(std::function<int(std::size_t)> gen) {
    auto st = std::make_shared<State>();
    st->generator = std::move(gen);
    return SignedDigitStream(std::move(st));
}

int SignedDigitStream::digit(std::size_t i) const {
    if (i == 0) throw std::invalid_argument("digit index starts at 1");
    std::lock_guard<std::mutex> lock(st_->m);
    st_->ensure_locked(i);
    return st_->digits[i - 1];
}

std::vector<int> SignedDigitStream::prefix(std::size_t n) const {
    std::lock_guard<std::mutex> lock(st_->m);
    st_->ensure_locked(n);
    return std::vector<int>(st_->digits.begin(), st_->digits.begin() + static_cast<long>(n));
}

Rational SignedDigitStream::partial_sum(std::size_t n) const {
    std::lock_guard<std::mutex> lock(st_->m);
    st_->ensure_locked(n);
    Rational sum;
    for (std::size_t i = 1; i <= n; ++i) {
        if (st_->digits[i - 1] != 0)
            sum += Rational(st_->digits[i - 1]) * pow2(-static_cast<int>(i));
    }
    return sum;
}

SignedDigitStream to_signed_digit(const CReal& x) {
    return SignedDigitStream::extract(x);
}

namespace {

class SignedDigitImpl final : public CRealImpl {
public:
    explicit SignedDigitImpl(SignedDigitStream s) : s_(std::move(s)) {}
    Rational approx(int n) const override { return s_.partial_sum(static_cast<std::size_t>(n)); }
    ReprTag repr() const override { return ReprTag::SignedDigit; }

private:
    SignedDigitStream s_;
};

} // namespace

CReal from_signed_digit(SignedDigitStream s) {
    return CReal::wrap(std::make_shared<SignedDigitImpl>(std::move(s)));
}

} // namespace cgauss
