#pragma once

#include <functional>
#include <optional>
#include <unordered_map>

#include "grl/approx.hpp"
#include "grl/discount.hpp"
#include "grl/environment.hpp"
#include "grl/history.hpp"

namespace grl {

enum class ValueVariant {
    IterativeV,  // rewards weighted by the mass of the full horizon path
    RecursiveW,  // each reward weighted by the mass at its own time step
};

using PolicyFn = std::function<Action(const History&)>;

// Unnormalized pieces of a value evaluation, exposed for branch-level
// inspection: the truncated numerator and its sound upper bound, the mass of
// the conditioning prefix, and the discount normalizer.
struct ValueParts {
    Rational numeratorLow;
    Rational numeratorHigh;
    Rational conditioningMass;
    Rational gammaT;
    unsigned horizon = 0;
};

struct ValueResult {
    Interval enclosure = Interval::point(Rational(0));  // normalized value enclosure, within [0, 1]
    bool exact = false;
    ValueParts parts;

    ApproxReal asApprox() const {
        return exact ? ApproxReal::exact(enclosure.lo.value()) : ApproxReal::constant(enclosure);
    }
    // Truncated value: numeratorLow / (Gamma_t * conditioningMass).
    Rational pointValue() const;
};

struct ValueQuery {
    EnvPtr env;
    Discount discount;
    History history;
    ValueVariant variant = ValueVariant::RecursiveW;
    std::optional<PolicyFn> policy;  // absent = optimal (expectimax)
    // Absolute truncation horizon m >= current time; when absent, eps picks
    // it through the effective-horizon rule. Explicit horizonCap overrides.
    std::optional<unsigned> horizonCap;
    std::optional<Rational> eps;
    // Cap on eps-driven horizon refinements past t.
    unsigned budget = kDefaultBudget;
};

// Evaluates value queries against one (environment, discount, variant,
// policy) binding. Subtree results are cached per query, keyed by
// (prefix, remaining depth); the cache is reset on every evaluate call since
// entries are relative to the query's conditioning history.
class Evaluator {
public:
    Evaluator(EnvPtr env, Discount discount, ValueVariant variant,
              std::optional<PolicyFn> policy = std::nullopt);

    ValueResult evaluate(const History& h, unsigned horizonCap);

    const Discount& discount() const { return discount_; }

private:
    struct Node {
        Rational mass;
        Rational low;
        Rational high;
    };

    Node walk(std::vector<Action>& a, std::vector<PerceptId>& e, size_t historySteps,
              std::optional<Action> pending, const Rational& accR, unsigned m);

    EnvPtr env_;
    Discount discount_;
    ValueVariant variant_;
    std::optional<PolicyFn> policy_;
    std::unordered_map<std::string, Node> cache_;
};

// One-shot evaluation of a query. Gamma_t = 0 yields exact 0; a measure-zero
// conditioning prefix throws ConditioningOnNull.
ValueResult evaluate(const ValueQuery& q);

// Optimal iterative value (expectimax, survival-weighted rewards). The
// enclosure is symmetric about the truncated value: the truncation sequence
// is not monotone, so the lower side is a convention, while the upper side
// is a sound bound. Exact when the tail provably carries no mass.
ValueResult iterativeVOpt(ValueQuery q);

// Optimal recursive value. The lower endpoint is a sound monotone lower
// bound (nondecreasing in the horizon); the upper adds the largest possible
// tail on surviving mass. Exact when the environment provably ends or the
// discount has finite support within the horizon.
ValueResult recursiveWOpt(ValueQuery q);

// Value of the fixed policy carried by the query (pending actions in the
// history still take precedence for their step).
ValueResult policyValue(ValueQuery q);

}  // namespace grl
