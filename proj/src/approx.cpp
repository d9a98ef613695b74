#include "grl/approx.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grl/errors.hpp"

namespace grl {

std::string Bound::str() const {
    if (isMinusInf()) return "-inf";
    if (isPlusInf()) return "+inf";
    return v_.str();
}

Interval::Interval(Bound l, Bound h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.isPlusInf() || hi.isMinusInf() || hi < lo)
        throw std::logic_error("malformed interval [" + lo.str() + ", " + hi.str() + "]");
}

bool Interval::contains(const Rational& v) const {
    bool aboveLo = !lo.isFinite() || lo.value() <= v;
    bool belowHi = !hi.isFinite() || v <= hi.value();
    return aboveLo && belowHi;
}

std::optional<Rational> Interval::width() const {
    if (!lo.isFinite() || !hi.isFinite()) return std::nullopt;
    return hi.value() - lo.value();
}

std::string Interval::str() const {
    return "[" + lo.str() + ", " + hi.str() + "]";
}

namespace {

Bound addBounds(const Bound& a, const Bound& b) {
    if (a.isFinite() && b.isFinite()) return Bound::finite(a.value() + b.value());
    if (a.isMinusInf() || b.isMinusInf()) {
        if (a.isPlusInf() || b.isPlusInf()) throw std::logic_error("inf - inf in bound addition");
        return Bound::minusInf();
    }
    return Bound::plusInf();
}

Bound negBound(const Bound& a) {
    if (a.isFinite()) return Bound::finite(-a.value());
    return a.isPlusInf() ? Bound::minusInf() : Bound::plusInf();
}

// Product of endpoint bounds with the exact-zero convention 0 * inf = 0
// (sound for enclosures: if one factor is exactly 0, so is the product).
Bound mulBounds(const Bound& a, const Bound& b) {
    if (a.isFinite() && b.isFinite()) return Bound::finite(a.value() * b.value());
    int sa = a.isFinite() ? a.value().sign() : (a.isPlusInf() ? 1 : -1);
    int sb = b.isFinite() ? b.value().sign() : (b.isPlusInf() ? 1 : -1);
    if ((a.isFinite() && sa == 0) || (b.isFinite() && sb == 0)) return Bound::finite(Rational(0));
    return sa * sb > 0 ? Bound::plusInf() : Bound::minusInf();
}

Interval addIv(const Interval& x, const Interval& y) {
    return Interval(addBounds(x.lo, y.lo), addBounds(x.hi, y.hi));
}

Interval subIv(const Interval& x, const Interval& y) {
    return Interval(addBounds(x.lo, negBound(y.hi)), addBounds(x.hi, negBound(y.lo)));
}

Interval mulIv(const Interval& x, const Interval& y) {
    Bound cands[4] = {mulBounds(x.lo, y.lo), mulBounds(x.lo, y.hi), mulBounds(x.hi, y.lo),
                      mulBounds(x.hi, y.hi)};
    Bound lo = cands[0], hi = cands[0];
    for (int i = 1; i < 4; ++i) {
        if (cands[i] < lo) lo = cands[i];
        if (hi < cands[i]) hi = cands[i];
    }
    return Interval(lo, hi);
}

// x / y where y is certified to lie in (0, +inf].
Interval divIvPositive(const Interval& x, const Interval& y) {
    Bound lo = Bound::minusInf();
    Bound hi = Bound::plusInf();
    if (x.lo.isFinite()) {
        if (x.lo.value().sign() >= 0) {
            // Infimum over growing denominators tends to 0.
            lo = y.hi.isFinite() ? Bound::finite(x.lo.value() / y.hi.value())
                                 : Bound::finite(Rational(0));
        } else {
            lo = Bound::finite(x.lo.value() / y.lo.value());
        }
    }
    if (x.hi.isFinite()) {
        if (x.hi.value().sign() >= 0) {
            hi = Bound::finite(x.hi.value() / y.lo.value());
        } else {
            hi = y.hi.isFinite() ? Bound::finite(x.hi.value() / y.hi.value())
                                 : Bound::finite(Rational(0));
        }
    }
    return Interval(lo, hi);
}

}  // namespace

struct ApproxReal::Core {
    std::function<Interval(unsigned)> raw;
    std::optional<Rational> exact;
    bool loFinite = true;
    bool hiFinite = true;
    mutable std::mutex mu;
    mutable std::vector<Interval> memo;
};

Interval ApproxReal::refine(unsigned k) const {
    const Core& c = *core_;
    std::lock_guard<std::mutex> lock(c.mu);
    while (c.memo.size() <= k) {
        unsigned j = static_cast<unsigned>(c.memo.size());
        Interval next = c.raw(j);
        if (!c.memo.empty()) {
            const Interval& prev = c.memo.back();
            // Enclosures must be nested; a violation is a bug in the producer.
            if (next.lo < prev.lo || prev.hi < next.hi)
                throw std::logic_error("enclosure sequence not nested at budget " + std::to_string(j) +
                                       ": " + prev.str() + " then " + next.str());
        }
        c.memo.push_back(next);
    }
    return c.memo[k];
}

Mode ApproxReal::mode() const {
    if (core_->exact) return Mode::Exact;
    if (core_->loFinite && !core_->hiFinite) return Mode::LowerMonotone;
    return Mode::Interval;
}

std::optional<Rational> ApproxReal::exactValue() const {
    return core_->exact;
}

ApproxReal ApproxReal::exact(Rational q) {
    auto core = std::make_shared<Core>();
    Interval iv = Interval::point(q);
    core->raw = [iv](unsigned) { return iv; };
    core->exact = std::move(q);
    return ApproxReal(std::move(core));
}

ApproxReal ApproxReal::fromLowerBounds(std::function<Rational(unsigned)> lo) {
    auto core = std::make_shared<Core>();
    core->raw = [lo = std::move(lo)](unsigned k) {
        return Interval(Bound::finite(lo(k)), Bound::plusInf());
    };
    core->hiFinite = false;
    return ApproxReal(std::move(core));
}

ApproxReal ApproxReal::fromIntervals(std::function<Interval(unsigned)> f) {
    auto core = std::make_shared<Core>();
    core->raw = std::move(f);
    ApproxReal r(core);
    Interval head = r.refine(0);
    core->loFinite = head.lo.isFinite();
    core->hiFinite = head.hi.isFinite();
    if (head.isPoint()) core->exact = head.lo.value();
    return r;
}

ApproxReal ApproxReal::constant(Interval iv) {
    auto core = std::make_shared<Core>();
    core->loFinite = iv.lo.isFinite();
    core->hiFinite = iv.hi.isFinite();
    if (iv.isPoint()) core->exact = iv.lo.value();
    core->raw = [iv = std::move(iv)](unsigned) { return iv; };
    return ApproxReal(std::move(core));
}

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
    if (a.exactValue() && b.exactValue()) return ApproxReal::exact(*a.exactValue() + *b.exactValue());
    auto core = std::make_shared<ApproxReal::Core>();
    core->raw = [a, b](unsigned k) { return addIv(a.refine(k), b.refine(k)); };
    core->loFinite = a.core_->loFinite && b.core_->loFinite;
    core->hiFinite = a.core_->hiFinite && b.core_->hiFinite;
    return ApproxReal(std::move(core));
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) {
    if (a.exactValue() && b.exactValue()) return ApproxReal::exact(*a.exactValue() - *b.exactValue());
    auto core = std::make_shared<ApproxReal::Core>();
    core->raw = [a, b](unsigned k) { return subIv(a.refine(k), b.refine(k)); };
    core->loFinite = a.core_->loFinite && b.core_->hiFinite;
    core->hiFinite = a.core_->hiFinite && b.core_->loFinite;
    return ApproxReal(std::move(core));
}

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
    if (a.exactValue() && b.exactValue()) return ApproxReal::exact(*a.exactValue() * *b.exactValue());
    auto core = std::make_shared<ApproxReal::Core>();
    core->raw = [a, b](unsigned k) { return mulIv(a.refine(k), b.refine(k)); };
    // Products of nonnegative values keep finite lower bounds; this is what
    // keeps lower-monotone closure under multiplication.
    Interval ia = a.refine(0), ib = b.refine(0);
    bool bothNonneg = ia.lo.isFinite() && ia.lo.value().sign() >= 0 && ib.lo.isFinite() &&
                      ib.lo.value().sign() >= 0;
    if (bothNonneg) {
        core->loFinite = a.core_->loFinite && b.core_->loFinite;
        core->hiFinite = a.core_->hiFinite && b.core_->hiFinite;
    } else {
        bool allFinite = a.core_->loFinite && a.core_->hiFinite && b.core_->loFinite && b.core_->hiFinite;
        core->loFinite = allFinite;
        core->hiFinite = allFinite;
    }
    return ApproxReal(std::move(core));
}

ApproxReal ApproxReal::div(const ApproxReal& a, const ApproxReal& b, unsigned kMax) {
    // Separation certificate: some budget must witness the divisor > 0.
    std::optional<unsigned> k0;
    for (unsigned k = 0; k <= kMax; ++k) {
        Interval ib = b.refine(k);
        if (ib.lo.isFinite() && ib.lo.value().sign() > 0) {
            k0 = k;
            break;
        }
        if (b.exactValue()) break;  // exact divisors cannot improve with budget
    }
    if (!k0) throw DivisorNotSeparated("no budget k <= " + std::to_string(kMax) +
                                       " certifies divisor lower bound > 0");
    if (a.exactValue() && b.exactValue()) return ApproxReal::exact(*a.exactValue() / *b.exactValue());
    auto core = std::make_shared<Core>();
    unsigned kSep = *k0;
    core->raw = [a, b, kSep](unsigned k) {
        unsigned j = k < kSep ? kSep : k;
        return divIvPositive(a.refine(j), b.refine(j));
    };
    core->loFinite = a.core_->loFinite;
    core->hiFinite = a.core_->hiFinite;
    return ApproxReal(std::move(core));
}

CompareResult compare(const ApproxReal& a, const ApproxReal& b, const Rational& tol, unsigned kMax) {
    if (tol.sign() <= 0) throw std::invalid_argument("compare tolerance must be positive");
    for (unsigned k = 0; k <= kMax; ++k) {
        Interval ia = a.refine(k);
        Interval ib = b.refine(k);
        if (ib.hi < ia.lo) return CompareResult::Greater;
        if (ia.hi < ib.lo) return CompareResult::Less;
        if (ia.hi.isFinite() && ia.lo.isFinite() && ib.hi.isFinite() && ib.lo.isFinite()) {
            Rational d1 = ia.hi.value() - ib.lo.value();
            Rational d2 = ib.hi.value() - ia.lo.value();
            if (d1 < tol && d2 < tol) return CompareResult::WithinTol;
        }
        bool aFixed = a.exactValue().has_value();
        bool bFixed = b.exactValue().has_value();
        if (aFixed && bFixed) break;  // nothing will change with more budget
    }
    return CompareResult::Unresolved;
}

const char* compareResultName(CompareResult r) {
    switch (r) {
        case CompareResult::Less: return "Less";
        case CompareResult::Greater: return "Greater";
        case CompareResult::WithinTol: return "WithinTol";
        case CompareResult::Unresolved: return "Unresolved";
    }
    return "?";
}

}  // namespace grl
