#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grl/mixture.hpp"
#include "grl/policy.hpp"

namespace grl {

// Deterministic generator of exact dyadic draws from [0, 1), built on the
// splitmix64 stream. Cell selection against rational thresholds is exact:
// the draw's precision is extended until the dyadic interval it denotes fits
// inside a single cell.
class DyadicSampler {
public:
    explicit DyadicSampler(uint64_t seed) : state_(seed) {}

    // Index of the half-open cell [bounds[i], bounds[i+1]) containing the
    // draw. bounds must be strictly increasing, starting at 0 and ending at
    // 1.
    size_t drawCell(const std::vector<Rational>& bounds);

    uint64_t next64();

private:
    uint64_t state_;
};

struct RunConfig {
    EnvPtr env;  // the environment interacted with (a mixture when built from a class)
    std::optional<WeightedClass> mixtureClass;  // posterior reporting
    PolicySpec agent;
    Discount discount;
    ValueVariant variant = ValueVariant::RecursiveW;
    std::optional<TieOrder> tieOrder;  // default: alphabetical
    unsigned steps = 1;
    uint64_t seed = 0;
    unsigned kMax = kDefaultBudget;
};

struct TraceRecord {
    unsigned t = 0;
    Action action;
    PerceptId percept;
    Interval value = Interval::point(Rational(0));  // agent's enclosure for the chosen continuation
    std::vector<std::pair<std::string, Rational>> posterior;
    Rational cumulativeDiscountedReward;
};

enum class RunOutcome { Completed, EnvironmentEnded };

struct RunResult {
    std::vector<TraceRecord> records;
    RunOutcome outcome = RunOutcome::Completed;
    unsigned endedAt = 0;  // the step whose percept never arrived (0 = n/a)
    Rational totalDiscountedReward;
    History history;
};

// Runs the interaction loop: the agent picks an action, the percept is
// sampled from the environment's one-step conditional with the seeded exact
// sampler, and any conditional mass deficit becomes an "environment ended"
// outcome with exactly the deficit probability. Policy errors
// (UnresolvableTie, BudgetExhausted, SearchBudgetExceeded) propagate.
RunResult simulate(const RunConfig& config);

// Deterministic line-oriented rendering; equal configs yield byte-identical
// text. All numbers are exact fractions.
std::string renderTrace(const RunConfig& config, const RunResult& result);

const char* runOutcomeName(RunOutcome o);

}  // namespace grl
