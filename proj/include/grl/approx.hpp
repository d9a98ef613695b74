#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "grl/rational.hpp"

namespace grl {

// Default refinement budget wherever one is needed.
inline constexpr unsigned kDefaultBudget = 64;

// One endpoint of an enclosure: a rational, or an infinity sentinel.
// The sentinels are explicit states, never encoded as special rationals.
class Bound {
public:
    static Bound minusInf() { return Bound(-1, Rational(0)); }
    static Bound plusInf() { return Bound(+1, Rational(0)); }
    static Bound finite(Rational v) { return Bound(0, std::move(v)); }

    bool isFinite() const { return inf_ == 0; }
    bool isPlusInf() const { return inf_ > 0; }
    bool isMinusInf() const { return inf_ < 0; }
    // Valid only when finite.
    const Rational& value() const { return v_; }

    friend bool operator==(const Bound& a, const Bound& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ != 0 || a.v_ == b.v_;
    }
    friend bool operator<(const Bound& a, const Bound& b) {
        if (a.inf_ != b.inf_) return a.inf_ < b.inf_;
        return a.inf_ == 0 && a.v_ < b.v_;
    }
    friend bool operator<=(const Bound& a, const Bound& b) { return a < b || a == b; }

    std::string str() const;

private:
    Bound(int inf, Rational v) : inf_(inf), v_(std::move(v)) {}
    int inf_;  // -1, 0, +1
    Rational v_;
};

// Closed enclosure [lo, hi]; endpoints may be infinite.
struct Interval {
    Bound lo;
    Bound hi;

    Interval(Bound l, Bound h);
    static Interval point(const Rational& v) { return Interval(Bound::finite(v), Bound::finite(v)); }
    static Interval finite(const Rational& l, const Rational& h) { return Interval(Bound::finite(l), Bound::finite(h)); }

    bool isPoint() const { return lo.isFinite() && hi.isFinite() && lo.value() == hi.value(); }
    bool contains(const Rational& v) const;
    // Width as a rational; nullopt when an endpoint is infinite.
    std::optional<Rational> width() const;

    std::string str() const;
};

enum class Mode {
    Exact,          // lo(k) == hi(k) for all k
    LowerMonotone,  // finite nondecreasing lo(k); hi may be +inf
    Interval,       // general nested enclosure, either endpoint may be infinite
};

// An anytime real: a budget-indexed sequence of nested enclosures
// lo(0) <= lo(1) <= ... <= x <= ... <= hi(1) <= hi(0) for the represented
// value x. Values are immutable; refine is a pure function of the budget and
// results are memoized, so concurrent use from several threads is safe.
class ApproxReal {
public:
    // The exact rational q: refine(k) = [q, q] for all k.
    static ApproxReal exact(Rational q);
    // A pure lower semicomputation: refine(k) = [lo(k), +inf). lo must be
    // nondecreasing in k; this is checked as refinements are produced.
    static ApproxReal fromLowerBounds(std::function<Rational(unsigned)> lo);
    // A general enclosure sequence; successive intervals must be nested
    // (checked as refinements are produced).
    static ApproxReal fromIntervals(std::function<Interval(unsigned)> f);
    // A fixed enclosure, identical at every budget.
    static ApproxReal constant(Interval iv);

    Interval refine(unsigned k) const;
    Mode mode() const;
    // The represented rational when mode == Exact.
    std::optional<Rational> exactValue() const;

    friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);

    // Division. Searches for a budget k0 <= kMax with b.lo(k0) > 0 (divisors
    // must be certified positive); throws DivisorNotSeparated when none is
    // found.
    static ApproxReal div(const ApproxReal& a, const ApproxReal& b, unsigned kMax = kDefaultBudget);

private:
    struct Core;
    explicit ApproxReal(std::shared_ptr<Core> core) : core_(std::move(core)) {}
    std::shared_ptr<Core> core_;
};

enum class CompareResult { Less, Greater, WithinTol, Unresolved };

// Tolerance-bounded comparison of two anytime reals. Greater iff some budget
// k <= kMax certifies a.lo(k) > b.hi(k), Less symmetrically; WithinTol iff
// the enclosures prove |a - b| < tol; Unresolved once the budget is spent.
// Requires tol > 0.
CompareResult compare(const ApproxReal& a, const ApproxReal& b, const Rational& tol,
                      unsigned kMax = kDefaultBudget);

const char* compareResultName(CompareResult r);

}  // namespace grl
