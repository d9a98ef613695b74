#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grl/environment.hpp"

namespace grl {

struct WeightedMember {
    EnvPtr env;
    Rational weight;
};

// A finite weighted environment class: positive weights summing to at most 1
// over members sharing the same alphabets.
class WeightedClass {
public:
    explicit WeightedClass(std::vector<WeightedMember> members);

    const std::vector<WeightedMember>& members() const { return members_; }
    const Alphabets& alphabets() const { return members_.front().env->alphabets(); }
    Rational weightSum() const;

private:
    std::vector<WeightedMember> members_;
};

// The weighted sum nu_mix = sum_i w_i nu_i as an environment. Exact when all
// members are exact; budgeted lower bounds sum the members' lower bounds; a
// measure iff all members are measures and the weights sum to exactly 1.
EnvPtr mixtureEnv(const WeightedClass& c);

// Posterior weights w_i nu_i(h) / nu_mix(h) after the completed steps of h.
// Entries sum to exactly 1. Throws ConditioningOnNull when the mixture
// assigns h mass zero.
std::vector<std::pair<std::string, Rational>> posterior(const WeightedClass& c, const History& h);

// Lower bound w * (nu_member(h) / nu_mix(h)) * vMember on the mixture value
// of any policy achieving vMember in the named member.
Rational dominanceBound(const WeightedClass& c, const std::string& memberName, const History& h,
                        const Rational& vMember);

}  // namespace grl
