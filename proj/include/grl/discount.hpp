#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grl/rational.hpp"

namespace grl {

// Summable discount function gamma with exactly computable tail sums
// Gamma(t) = sum_{i>=t} gamma(i). Time indices are 1-based.
class Discount {
public:
    enum class Kind { Geometric, FiniteLifetime, Tabular };
    enum class Tail { Zero, Geometric };

    // Defaults to geometric 1/2.
    Discount() = default;

    // gamma(t) = q^t with 0 < q < 1; Gamma(t) = q^t / (1 - q).
    static Discount geometric(Rational q);
    // gamma(t) = 1 for t <= m, 0 afterwards; Gamma(t) = max(0, m - t + 1).
    static Discount finiteLifetime(unsigned m);
    // Explicit gamma(1..n) plus a tail rule: Zero (gamma = 0 beyond the
    // table) or Geometric(q) (gamma(n+j) = gamma(n) * q^j).
    static Discount tabular(std::vector<Rational> gammas, Tail tail, Rational tailRatio = Rational(0));

    Kind kind() const { return kind_; }
    Rational gamma(unsigned t) const;
    Rational Gamma(unsigned t) const;

    // Lifetime m for FiniteLifetime.
    unsigned lifetime() const;

    // True when gamma has finite support; supportEnd() is then the last t
    // with gamma(t) > 0 (0 when gamma is identically zero).
    bool finiteSupport() const;
    unsigned supportEnd() const;

    // Least k with Gamma(k) / Gamma(t) < eps / 2. Requires Gamma(t) > 0 and
    // eps > 0. Truncating value sums at this horizon changes them by less
    // than eps/2.
    unsigned effectiveHorizon(unsigned t, const Rational& eps) const;

    std::string str() const;

private:
    Kind kind_ = Kind::Geometric;
    Rational q_ = Rational(1, 2);   // Geometric ratio, or tabular tail ratio
    unsigned m_ = 0;                // FiniteLifetime lifetime
    std::vector<Rational> table_;   // Tabular gammas (1-based at index 0)
    Tail tail_ = Tail::Zero;
    std::vector<Rational> suffix_;  // Tabular: suffix_[i] = sum_{j>=i} table_[j]
};

}  // namespace grl
