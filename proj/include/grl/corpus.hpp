#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "grl/approx.hpp"
#include "grl/environment.hpp"

namespace grl {

// Total decision rule used as an adversarial target: any computable function
// from histories to actions.
using TargetPolicy = std::function<Action(const History&)>;

// Two-action environment where the first action pays reward 1 and then the
// environment ends (all longer continuations have measure zero), while the
// second pays epsReward once and then reward 0 forever. The canonical
// example separating expected-reward maximization from survival-conditioned
// value. Actions: {alpha, beta}; rewards {0, epsReward, 1}. Requires
// 0 < epsReward < 1.
EnvPtr makeProp1Env(const Rational& epsReward);

// Deterministic measure that pays reward 0 while the agent's actions match
// the target policy and reward 1 from the first deviation onward
// (r_k = 1 for k >= first deviation index). Observations are a single
// symbol; rewards {0, 1}.
EnvPtr makeAdversarialEnv(TargetPolicy target, std::vector<std::string> actionNames = {"alpha", "beta"},
                          std::string name = "adversarial");

// Decidable stand-in for the relation searched inside the rho family: the
// existential "exists k: S(n, i, t', k)" is resolved by a bounded scan.
class SRelation {
public:
    virtual ~SRelation() = default;
    virtual bool holds(unsigned n, unsigned i, unsigned tPrime, unsigned k) const = 0;
    // A stand-in may know the search is hopeless; nullopt means "scan".
    virtual std::optional<bool> decided(unsigned, unsigned, unsigned) const { return std::nullopt; }
    virtual std::string str() const = 0;

    static std::shared_ptr<const SRelation> alwaysTrue();
    // Decidably false exactly at tPrime == t0, true elsewhere at k = 0.
    static std::shared_ptr<const SRelation> falseAt(unsigned t0);
    // True exactly at k == kFound: found by a scan iff kFound <= searchBound.
    static std::shared_ptr<const SRelation> foundAt(unsigned kFound);
};

// Member i of the branching family: observations 1^t with probability 2^-t
// before the branch; after observing 1^n 0, taking alpha at step n+2 yields
// rewards 0 forever at probability 2^-n-1, while beta yields rewards
// 1_{t' > n+1} at probability 2^-n-1 as long as every t' <= t passes the
// bounded existential search over S; failed prefixes have measure zero.
// Observations {"1","0"}, rewards {0,1}, actions {alpha, beta}. Throws
// SearchBudgetExceeded when a scan exceeds searchBound without deciding.
EnvPtr makeRhoFamilyEnv(unsigned i, std::shared_ptr<const SRelation> s, unsigned searchBound = kDefaultBudget);

}  // namespace grl
