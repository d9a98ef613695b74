#include "grl/rational.hpp"

#include <ostream>

#include "grl/errors.hpp"

namespace grl {

Rational::Rational(long num, long den) {
    if (den == 0) throw SpecError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw SpecError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw SpecError("empty fraction");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw SpecError("malformed fraction: '" + s + "'");
    if (sgn(q.get_den()) == 0) throw SpecError("fraction with zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::pow2(long e) {
    mpz_class p = 1;
    if (e >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(p, mpz_class(1));
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return Rational(mpz_class(1), p);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.isZero()) throw SpecError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.get_str();
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

}  // namespace grl
