#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "cgauss/conc.hpp"
#include "cgauss/creal.hpp"

namespace cgauss {

/// One unfolding of the Archimedean recursion: either a final value, or a
/// transform to apply to the result obtained from the doubled state.
template <class Value>
class StepOutcome {
public:
    using Transform = std::function<Value(Value)>;

    static StepOutcome done(Value v) {
        return StepOutcome(std::variant<Value, Transform>(std::in_place_index<0>, std::move(v)));
    }
    static StepOutcome descend(Transform t) {
        return StepOutcome(std::variant<Value, Transform>(std::in_place_index<1>, std::move(t)));
    }

    bool is_done() const { return v_.index() == 0; }
    Value& value() { return std::get<0>(v_); }
    Transform& transform() { return std::get<1>(v_); }

private:
    explicit StepOutcome(std::variant<Value, Transform> v) : v_(std::move(v)) {}
    std::variant<Value, Transform> v_;
};

/// Recursion on repeated doubling:
///   rec(s) = case step(s) of { Done(b) -> b; Continue(f) -> f(rec(double(s))) }.
/// May legitimately never terminate; an optional fuel bound on the number of
/// doublings turns divergence into FuelExhausted.
template <class State, class Value>
Value archimedean_rec(const std::function<StepOutcome<Value>(const State&)>& step,
                      const std::function<State(const State&)>& doubler,
                      State s0,
                      std::optional<long> fuel = {}) {
    std::vector<typename StepOutcome<Value>::Transform> pending;
    State s = std::move(s0);
    for (;;) {
        if (fuel && static_cast<long>(pending.size()) >= *fuel) throw FuelExhausted();
        StepOutcome<Value> o = step(s);
        if (o.is_done()) {
            Value v = std::move(o.value());
            for (auto it = pending.rbegin(); it != pending.rend(); ++it) v = (*it)(std::move(v));
            return v;
        }
        pending.push_back(std::move(o.transform()));
        s = doubler(s);
    }
}

/// The apartness-from-zero search as a resumable machine: each step() probes
/// the coarsest approximation of the current (repeatedly doubled) value and
/// either yields the witness or doubles and continues. Queries carrying a
/// simulated cost burn cost-1 extra units before the probe, polling the
/// cancellation token between units.
class ApartnessSearch {
public:
    explicit ApartnessSearch(CReal x, std::optional<long> fuel = {},
                             conc::BurnMode burn = conc::BurnMode::None);

    /// One counted step. Returns the witness when the search completes,
    /// nullopt while it continues (or when cancelled mid-burn); throws
    /// FuelExhausted when the probe budget runs out.
    std::optional<Witness> step(const conc::CancelToken& token);

    long probes() const { return probes_; }

private:
    CReal current_;
    long probes_ = 0;
    std::optional<long> fuel_;
    conc::BurnMode burn_;
};

/// Probe-count trace of the search run on an exact rational; the independent
/// cost/result model used by tests and step accounting.
struct ApartnessTrace {
    int k = 0;
    long probes = 0;
};
ApartnessTrace phi1_trace(const Rational& q, std::optional<long> fuel = {});

/// Blocking search: the k with |x| >= 2^-k found by repeated doubling.
/// Diverges when x = 0 unless fuel is set (then FuelExhausted).
Witness phi1(const CReal& x, std::optional<long> fuel = {});

} // namespace cgauss
