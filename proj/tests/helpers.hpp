#pragma once

#include <map>
#include <random>
#include <vector>

#include "grl/environment.hpp"

namespace grltest {

using namespace grl;

// Alphabets with distinct observation names per percept and random rewards
// of denominator denCap.
inline Alphabets randomAlphabets(std::mt19937_64& rng, size_t nActions, size_t nPercepts, long denCap) {
    std::vector<std::string> actionNames;
    for (size_t i = 0; i < nActions; ++i) actionNames.push_back("a" + std::to_string(i));
    std::vector<PerceptInfo> percepts;
    std::uniform_int_distribution<long> rewardDist(0, denCap);
    for (size_t i = 0; i < nPercepts; ++i)
        percepts.push_back({"o" + std::to_string(i), Rational(rewardDist(rng), denCap)});
    return Alphabets(actionNames, percepts);
}

// Random table environment with explicit rows at every prefix up to `depth`.
// When `measure` is set, every one-step conditional sums to exactly the
// parent mass and the tail continues uniformly; otherwise rows may leak mass
// and the environment ends beyond the table.
inline EnvPtr randomTableEnv(std::mt19937_64& rng, const Alphabets& al, unsigned depth, long denCap,
                             bool measure, const std::string& name) {
    size_t nActions = al.actionCount();
    size_t nPercepts = al.perceptCount();
    std::map<TableEnvironment::Key, Rational> rows;
    std::uniform_int_distribution<long> numDist(0, denCap);

    // Depth-first over prefixes, multiplying exact conditionals downward.
    std::function<void(TableEnvironment::Key&, const Rational&)> fill =
        [&](TableEnvironment::Key& key, const Rational& mass) {
            if (key.first.size() == depth) return;
            for (size_t ai = 0; ai < nActions; ++ai) {
                // Random numerators over denCap; a measure env rescales them
                // to sum exactly to denCap.
                std::vector<long> numer(nPercepts);
                long total = 0;
                for (size_t pi = 0; pi < nPercepts; ++pi) {
                    numer[pi] = numDist(rng);
                    total += numer[pi];
                }
                std::vector<Rational> cond(nPercepts);
                if (measure) {
                    if (total == 0) {
                        numer[0] = 1;
                        total = 1;
                    }
                    for (size_t pi = 0; pi < nPercepts; ++pi)
                        cond[pi] = Rational(numer[pi], 1) / Rational(total, 1);
                } else {
                    long cap = denCap * static_cast<long>(nPercepts);
                    for (size_t pi = 0; pi < nPercepts; ++pi) cond[pi] = Rational(numer[pi], cap);
                }
                for (size_t pi = 0; pi < nPercepts; ++pi) {
                    key.first.push_back(static_cast<uint8_t>(ai));
                    key.second.push_back(static_cast<uint8_t>(pi));
                    Rational child = mass * cond[pi];
                    rows.emplace(key, child);
                    if (!child.isZero()) fill(key, child);
                    key.first.pop_back();
                    key.second.pop_back();
                }
            }
        };
    TableEnvironment::Key root;
    fill(root, Rational(1));
    auto tail = measure ? TableEnvironment::TailRule::Uniform : TableEnvironment::TailRule::End;
    return std::make_shared<TableEnvironment>(name, al, depth, tail, std::move(rows), Rational(1),
                                              measure);
}

inline EnvPtr randomTableEnv(std::mt19937_64& rng, size_t nActions, size_t nPercepts, unsigned depth,
                             long denCap, bool measure, const std::string& name) {
    return randomTableEnv(rng, randomAlphabets(rng, nActions, nPercepts, denCap), depth, denCap, measure,
                          name);
}

// Exact environment wrapped with a nontrivial budgeted lower-bound sequence:
// lower(k) = exact * min(1, k/8).
class LowerBoundedEnv : public Environment {
public:
    explicit LowerBoundedEnv(EnvPtr base)
        : Environment(base->name() + "_lb", base->alphabets(), base->declaredMeasure()),
          base_(std::move(base)) {}

protected:
    Rational doExact(std::span<const Action> a, std::span<const PerceptId> e) const override {
        return base_->exactMass(a, e);
    }
    Rational doLower(std::span<const Action> a, std::span<const PerceptId> e, unsigned k) const override {
        Rational scale = k >= 8 ? Rational(1) : Rational(static_cast<long>(k), 8);
        return base_->exactMass(a, e) * scale;
    }

private:
    EnvPtr base_;
};

}  // namespace grltest
