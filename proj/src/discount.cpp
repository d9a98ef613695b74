#include "grl/discount.hpp"

#include "grl/errors.hpp"

namespace grl {

namespace {

Rational powRat(const Rational& q, unsigned e) {
    Rational r(1);
    Rational base = q;
    unsigned n = e;
    while (n > 0) {
        if (n & 1u) r *= base;
        base *= base;
        n >>= 1u;
    }
    return r;
}

}  // namespace

Discount Discount::geometric(Rational q) {
    if (q.sign() <= 0 || q >= Rational(1)) throw SpecError("geometric discount needs 0 < q < 1");
    Discount d;
    d.kind_ = Kind::Geometric;
    d.q_ = std::move(q);
    return d;
}

Discount Discount::finiteLifetime(unsigned m) {
    if (m == 0) throw SpecError("finite lifetime needs m >= 1");
    Discount d;
    d.kind_ = Kind::FiniteLifetime;
    d.m_ = m;
    return d;
}

Discount Discount::tabular(std::vector<Rational> gammas, Tail tail, Rational tailRatio) {
    Discount d;
    d.kind_ = Kind::Tabular;
    d.tail_ = tail;
    for (const Rational& g : gammas)
        if (g.sign() < 0) throw SpecError("discount values must be nonnegative");
    if (tail == Tail::Geometric) {
        if (gammas.empty()) throw SpecError("geometric tail needs a nonempty table");
        if (tailRatio.sign() <= 0 || tailRatio >= Rational(1))
            throw SpecError("tabular geometric tail needs 0 < q < 1");
        d.q_ = std::move(tailRatio);
    }
    d.table_ = std::move(gammas);
    d.suffix_.assign(d.table_.size() + 1, Rational(0));
    for (size_t i = d.table_.size(); i-- > 0;) d.suffix_[i] = d.table_[i] + d.suffix_[i + 1];
    return d;
}

Rational Discount::gamma(unsigned t) const {
    if (t == 0) throw SpecError("discount time indices are 1-based");
    switch (kind_) {
        case Kind::Geometric:
            return powRat(q_, t);
        case Kind::FiniteLifetime:
            return t <= m_ ? Rational(1) : Rational(0);
        case Kind::Tabular: {
            if (t <= table_.size()) return table_[t - 1];
            if (tail_ == Tail::Zero) return Rational(0);
            return table_.back() * powRat(q_, t - static_cast<unsigned>(table_.size()));
        }
    }
    return Rational(0);
}

Rational Discount::Gamma(unsigned t) const {
    if (t == 0) throw SpecError("discount time indices are 1-based");
    switch (kind_) {
        case Kind::Geometric:
            // sum_{i>=t} q^i = q^t / (1 - q)
            return powRat(q_, t) / (Rational(1) - q_);
        case Kind::FiniteLifetime:
            return t <= m_ ? Rational(static_cast<long>(m_ - t + 1)) : Rational(0);
        case Kind::Tabular: {
            Rational tailSum(0);
            if (tail_ == Tail::Geometric) {
                if (t <= table_.size()) {
                    tailSum = table_.back() * q_ / (Rational(1) - q_);
                } else {
                    return table_.back() * powRat(q_, t - static_cast<unsigned>(table_.size())) /
                           (Rational(1) - q_);
                }
            } else if (t > table_.size()) {
                return Rational(0);
            }
            return suffix_[t - 1] + tailSum;
        }
    }
    return Rational(0);
}

unsigned Discount::lifetime() const {
    if (kind_ != Kind::FiniteLifetime) throw SpecError("not a finite-lifetime discount");
    return m_;
}

bool Discount::finiteSupport() const {
    if (kind_ == Kind::FiniteLifetime) return true;
    return kind_ == Kind::Tabular && tail_ == Tail::Zero;
}

unsigned Discount::supportEnd() const {
    if (kind_ == Kind::FiniteLifetime) return m_;
    if (kind_ == Kind::Tabular && tail_ == Tail::Zero) {
        for (size_t i = table_.size(); i-- > 0;)
            if (table_[i].sign() > 0) return static_cast<unsigned>(i + 1);
        return 0;
    }
    throw SpecError("discount has infinite support");
}

unsigned Discount::effectiveHorizon(unsigned t, const Rational& eps) const {
    if (eps.sign() <= 0) throw SpecError("effective horizon needs eps > 0");
    Rational gt = Gamma(t);
    if (gt.sign() <= 0) throw SpecError("effective horizon needs Gamma(t) > 0");
    Rational threshold = eps / Rational(2) * gt;
    for (unsigned k = 1;; ++k) {
        if (Gamma(k) < threshold) return k;
    }
}

std::string Discount::str() const {
    switch (kind_) {
        case Kind::Geometric:
            return "geometric " + q_.str();
        case Kind::FiniteLifetime:
            return "lt " + std::to_string(m_);
        case Kind::Tabular: {
            std::string s = "tabular";
            for (const Rational& g : table_) s += " " + g.str();
            s += tail_ == Tail::Zero ? " tail=zero" : " tail=geometric:" + q_.str();
            return s;
        }
    }
    return "?";
}

}  // namespace grl
