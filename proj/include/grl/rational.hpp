#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace grl {

// Exact rational number, always canonical (lowest terms, denominator > 0).
// Thin wrapper over GMP's mpq_class; every constructor canonicalizes, so a
// Rational can never hold an unreduced or negative-denominator fraction.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
    Rational(long num, long den);
    explicit Rational(const mpq_class& q);
    Rational(const mpz_class& num, const mpz_class& den);

    // Parses "n", "-n", or "n/d". Throws SpecError on malformed input or d=0.
    static Rational parse(const std::string& s);

    // 2^e for any integer e (e may be negative).
    static Rational pow2(long e);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool isZero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    // Canonical textual form: "n" for integers, "n/d" otherwise.
    std::string str() const { return v_.get_str(); }

    // Largest integer <= this.
    mpz_class floor() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational abs(const Rational& a);

}  // namespace grl
