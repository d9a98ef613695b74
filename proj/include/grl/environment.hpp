#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "grl/history.hpp"
#include "grl/rational.hpp"

namespace grl {

// A chronological conditional semimeasure over percept sequences given
// actions. Evaluation receives equal-length action/percept prefixes, so a
// percept can never depend on an action after its own time step.
//
// Environments are immutable after construction and evaluation is pure;
// concurrent evaluation from several threads is permitted.
class Environment {
public:
    virtual ~Environment() = default;

    const std::string& name() const { return name_; }
    const Alphabets& alphabets() const { return alphabets_; }
    // Declared measure flag: one-step sums claimed equal to the parent mass.
    bool declaredMeasure() const { return isMeasure_; }
    bool hasExact() const { return hasExact_; }

    // nu(e_{1:t} || a_{1:t}), exact. Throws ExactUnavailable when the
    // environment only supports lower bounds.
    Rational exactMass(std::span<const Action> actions, std::span<const PerceptId> percepts) const;

    // Budgeted lower bound, nondecreasing in k and converging to the true
    // mass. Defaults to the exact value when one exists.
    Rational lowerMass(std::span<const Action> actions, std::span<const PerceptId> percepts,
                       unsigned k) const;

    Rational rootMass() const { return exactMass({}, {}); }

protected:
    Environment(std::string name, Alphabets alphabets, bool isMeasure, bool hasExact = true)
        : name_(std::move(name)), alphabets_(std::move(alphabets)), isMeasure_(isMeasure), hasExact_(hasExact) {}

    virtual Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const;
    virtual Rational doLower(std::span<const Action> actions, std::span<const PerceptId> percepts,
                             unsigned k) const;

private:
    std::string name_;
    Alphabets alphabets_;
    bool isMeasure_;
    bool hasExact_;
};

using EnvPtr = std::shared_ptr<const Environment>;

// nu(e_next | h.percepts || h.actions ++ pending ++ a_next): the exact
// conditional mass of the continuation given the history prefix. The pending
// action of h (if any) consumes the first percept of e_next; a_next supplies
// actions for the remaining percepts. Throws ConditioningOnNull when the
// history prefix has measure zero.
Rational conditional(const Environment& env, const History& h, std::span<const PerceptId> eNext,
                     std::span<const Action> aNext);

// Solomonoff normalization: nu_norm(eps) = 1 and
// nu_norm(xb) = nu_norm(x) * nu(xb) / sum_b' nu(xb'). The result is a measure
// along every path where it is defined; evaluation throws
// NormalizationSingular at prefixes with positive normalized mass whose
// one-step sum is zero.
EnvPtr normalize(EnvPtr env);

struct ValidityIssue {
    std::string kind;     // "root", "negative-mass", "superadditivity", "measure-equality"
    std::string witness;  // offending prefix, rendered
    std::string detail;
};

struct ValidityReport {
    unsigned depth = 0;
    std::vector<ValidityIssue> issues;
    // Prefixes where superadditivity is strict (mass vanishes): informative,
    // not a violation unless the environment is declared a measure.
    std::vector<std::string> strictPrefixes;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

// Exhaustively checks semimeasure axioms, range constraints, and (for
// declared measures) one-step equality on every action/percept sequence up
// to maxDepth. Requires exact evaluation.
ValidityReport checkValidity(const Environment& env, unsigned maxDepth);

// Renders a prefix like "(a1,o:r)(a2,o:r)" for reports and errors.
std::string renderPrefix(const Alphabets& al, std::span<const Action> actions,
                         std::span<const PerceptId> percepts);

// Environment defined by an explicit mass table to a fixed depth plus a tail
// rule. Masses absent from the table at depth < tableDepth default to the
// largest one-step continuation sum, so the table only needs leaves.
class TableEnvironment : public Environment {
public:
    enum class TailRule { End, RepeatLast, Uniform };

    using Key = std::pair<std::vector<uint8_t>, std::vector<uint8_t>>;  // action idxs, percept idxs

    TableEnvironment(std::string name, Alphabets alphabets, unsigned tableDepth, TailRule tail,
                     std::map<Key, Rational> rows, Rational root = Rational(1),
                     bool declaredMeasure = false);

    unsigned tableDepth() const { return depth_; }
    TailRule tail() const { return tail_; }

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override;

private:
    Rational massAt(std::vector<uint8_t>& a, std::vector<uint8_t>& e) const;

    unsigned depth_;
    TailRule tail_;
    std::map<Key, Rational> rows_;
    Rational root_;
};

}  // namespace grl
