#include "grl/value.hpp"

#include "grl/errors.hpp"

namespace grl {

namespace {

std::string prefixKey(const std::vector<Action>& a, const std::vector<PerceptId>& e, unsigned remaining) {
    std::string key;
    key.reserve(2 * a.size() + 4);
    for (size_t i = 0; i < a.size(); ++i) {
        key.push_back(static_cast<char>(a[i].i));
        key.push_back(static_cast<char>(e[i].i));
    }
    key.push_back('|');
    key.push_back(static_cast<char>(remaining & 0xff));
    key.push_back(static_cast<char>((remaining >> 8) & 0xff));
    return key;
}

}  // namespace

Rational ValueResult::pointValue() const {
    Rational den = parts.gammaT * parts.conditioningMass;
    if (den.isZero()) return Rational(0);
    return parts.numeratorLow / den;
}

Evaluator::Evaluator(EnvPtr env, Discount discount, ValueVariant variant,
                     std::optional<PolicyFn> policy)
    : env_(std::move(env)), discount_(std::move(discount)), variant_(variant), policy_(std::move(policy)) {
    if (!env_) throw SpecError("evaluator needs an environment");
    if (!env_->hasExact()) throw ExactUnavailable("value evaluation needs exact environment masses");
}

Evaluator::Node Evaluator::walk(std::vector<Action>& a, std::vector<PerceptId>& e, size_t historySteps,
                                std::optional<Action> pending, const Rational& accR, unsigned m) {
    size_t j = a.size();
    unsigned remaining = m - static_cast<unsigned>(j);
    std::string key = prefixKey(a, e, remaining);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    Node node;
    node.mass = env_->exactMass(a, e);
    if (node.mass.isZero()) {
        // Superadditivity: no extension can carry mass, so nothing deeper
        // contributes to either bound.
        node.low = Rational(0);
        node.high = Rational(0);
        cache_.emplace(std::move(key), node);
        return node;
    }
    if (j == static_cast<size_t>(m)) {
        Rational tail = discount_.Gamma(m + 1) * node.mass;
        if (variant_ == ValueVariant::IterativeV) {
            node.low = accR * node.mass;
            node.high = node.low + tail;
        } else {
            node.low = Rational(0);
            node.high = tail;
        }
        cache_.emplace(std::move(key), node);
        return node;
    }

    unsigned stepTime = static_cast<unsigned>(j) + 1;
    Rational gammaStep = discount_.gamma(stepTime);

    std::vector<Action> actionChoices;
    if (j == historySteps && pending) {
        actionChoices.push_back(*pending);
    } else if (policy_) {
        History hNow;
        for (size_t i = 0; i < j; ++i) {
            hNow.pushAction(a[i]);
            hNow.pushPercept(e[i]);
        }
        actionChoices.push_back((*policy_)(hNow));
    } else {
        for (size_t ai = 0; ai < env_->alphabets().actionCount(); ++ai)
            actionChoices.push_back(Action{static_cast<uint8_t>(ai)});
    }

    std::optional<Rational> bestLow, bestHigh;
    for (Action act : actionChoices) {
        Rational sumLow(0), sumHigh(0);
        a.push_back(act);
        for (size_t pi = 0; pi < env_->alphabets().perceptCount(); ++pi) {
            PerceptId p{static_cast<uint8_t>(pi)};
            e.push_back(p);
            Rational accNext = accR;
            Rational rewardTerm(0);
            if (variant_ == ValueVariant::IterativeV) {
                accNext += gammaStep * env_->alphabets().reward(p);
            }
            Node child = walk(a, e, historySteps, pending, accNext, m);
            if (variant_ == ValueVariant::RecursiveW)
                rewardTerm = gammaStep * env_->alphabets().reward(p) * child.mass;
            sumLow += rewardTerm + child.low;
            sumHigh += rewardTerm + child.high;
            e.pop_back();
        }
        a.pop_back();
        if (!bestLow || sumLow > *bestLow) bestLow = sumLow;
        if (!bestHigh || sumHigh > *bestHigh) bestHigh = sumHigh;
    }
    node.low = *bestLow;
    node.high = *bestHigh;
    cache_.emplace(std::move(key), node);
    return node;
}

ValueResult Evaluator::evaluate(const History& h, unsigned horizonCap) {
    unsigned t = h.currentTime();
    if (horizonCap < t) throw SpecError("horizonCap must be >= current time");
    ValueResult res;
    res.parts.gammaT = discount_.Gamma(t);
    res.parts.horizon = horizonCap;

    std::vector<Action> a = h.actions();
    std::vector<PerceptId> e = h.percepts();
    res.parts.conditioningMass = env_->exactMass(a, e);
    if (res.parts.conditioningMass.isZero())
        throw ConditioningOnNull("value query conditions on a measure-zero history in " + env_->name());

    if (res.parts.gammaT.isZero()) {
        res.parts.numeratorLow = Rational(0);
        res.parts.numeratorHigh = Rational(0);
        res.enclosure = Interval::point(Rational(0));
        res.exact = true;
        return res;
    }

    cache_.clear();  // entries are relative to this query's history
    Node root = walk(a, e, h.length(), h.pendingAction(), Rational(0), horizonCap);
    res.parts.numeratorLow = root.low;
    res.parts.numeratorHigh = root.high;

    Rational den = res.parts.gammaT * res.parts.conditioningMass;
    Rational vLow = root.low / den;
    Rational vHigh = root.high / den;
    Rational width = vHigh - vLow;
    Rational lo, hi;
    if (variant_ == ValueVariant::IterativeV) {
        // Symmetric about the truncated value: the limit is approached from
        // no particular side, so the width is charged both ways.
        lo = vLow - width;
        hi = vHigh;
    } else {
        lo = vLow;
        hi = vHigh;
    }
    lo = max(Rational(0), min(lo, Rational(1)));
    hi = max(Rational(0), min(hi, Rational(1)));
    res.enclosure = Interval::finite(lo, hi);
    res.exact = lo == hi;
    return res;
}

ValueResult evaluate(const ValueQuery& q) {
    if (!q.env) throw SpecError("value query needs an environment");
    unsigned t = q.history.currentTime();
    unsigned horizon;
    if (q.horizonCap) {
        horizon = *q.horizonCap;
    } else if (q.eps) {
        if (q.discount.Gamma(t).isZero()) {
            horizon = t;  // value is exactly 0 regardless
        } else {
            horizon = q.discount.effectiveHorizon(t, *q.eps);
            if (horizon < t) horizon = t;
            if (horizon - t > q.budget)
                throw BudgetExhausted("effective horizon " + std::to_string(horizon) +
                                      " needs more than budget=" + std::to_string(q.budget) +
                                      " refinements past t=" + std::to_string(t));
        }
    } else {
        throw SpecError("value query needs horizonCap or eps");
    }
    Evaluator ev(q.env, q.discount, q.variant, q.policy);
    return ev.evaluate(q.history, horizon);
}

ValueResult iterativeVOpt(ValueQuery q) {
    q.variant = ValueVariant::IterativeV;
    q.policy.reset();
    return evaluate(q);
}

ValueResult recursiveWOpt(ValueQuery q) {
    q.variant = ValueVariant::RecursiveW;
    q.policy.reset();
    return evaluate(q);
}

ValueResult policyValue(ValueQuery q) {
    if (!q.policy) throw SpecError("policyValue needs a policy");
    return evaluate(q);
}

}  // namespace grl
