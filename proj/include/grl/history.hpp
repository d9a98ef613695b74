#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grl/rational.hpp"

namespace grl {

// Index into the action alphabet.
struct Action {
    uint8_t i = 0;
    friend bool operator==(Action, Action) = default;
};

// Index into the percept alphabet.
struct PerceptId {
    uint8_t i = 0;
    friend bool operator==(PerceptId, PerceptId) = default;
};

// A percept symbol: an observation paired with a rational reward in [0, 1].
struct PerceptInfo {
    std::string obs;
    Rational reward;
};

// Finite action and percept alphabets shared by an environment. Actions are
// named symbols; percepts are (observation, reward) pairs with rewards drawn
// from a finite set of rationals in [0, 1].
class Alphabets {
public:
    Alphabets(std::vector<std::string> actionNames, std::vector<PerceptInfo> percepts);

    size_t actionCount() const { return actions_.size(); }
    size_t perceptCount() const { return percepts_.size(); }

    const std::string& actionName(Action a) const { return actions_[a.i]; }
    const PerceptInfo& percept(PerceptId e) const { return percepts_[e.i]; }
    const Rational& reward(PerceptId e) const { return percepts_[e.i].reward; }

    std::optional<Action> actionByName(const std::string& name) const;
    std::optional<PerceptId> perceptBy(const std::string& obs, const Rational& reward) const;

    std::string perceptLabel(PerceptId e) const;

    friend bool operator==(const Alphabets& a, const Alphabets& b);

private:
    std::vector<std::string> actions_;
    std::vector<PerceptInfo> percepts_;
};

struct Step {
    Action action;
    PerceptId percept;
};

// Alternating interaction record. A history may end after an action whose
// percept has not arrived yet (the pending action).
class History {
public:
    History() = default;

    void pushAction(Action a);
    void pushPercept(PerceptId e);

    size_t length() const { return steps_.size(); }  // complete steps
    bool empty() const { return steps_.empty() && !pending_; }
    // t: the index of the next interaction, 1-based.
    unsigned currentTime() const { return static_cast<unsigned>(steps_.size()) + 1; }

    const std::vector<Step>& steps() const { return steps_; }
    const std::optional<Action>& pendingAction() const { return pending_; }

    std::vector<Action> actions() const;      // completed steps only
    std::vector<PerceptId> percepts() const;  // completed steps only

private:
    std::vector<Step> steps_;
    std::optional<Action> pending_;
};

}  // namespace grl
