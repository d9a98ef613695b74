#include "grl/history.hpp"

#include "grl/errors.hpp"

namespace grl {

Alphabets::Alphabets(std::vector<std::string> actionNames, std::vector<PerceptInfo> percepts)
    : actions_(std::move(actionNames)), percepts_(std::move(percepts)) {
    if (actions_.size() < 2) throw SpecError("need at least two actions");
    if (percepts_.empty()) throw SpecError("need at least one percept");
    if (actions_.size() > 255 || percepts_.size() > 255) throw SpecError("alphabet too large");
    for (size_t i = 0; i < actions_.size(); ++i)
        for (size_t j = i + 1; j < actions_.size(); ++j)
            if (actions_[i] == actions_[j]) throw SpecError("duplicate action name: " + actions_[i]);
    for (const PerceptInfo& p : percepts_) {
        if (p.reward.sign() < 0 || p.reward > Rational(1))
            throw SpecError("reward out of [0,1]: " + p.reward.str());
    }
    for (size_t i = 0; i < percepts_.size(); ++i)
        for (size_t j = i + 1; j < percepts_.size(); ++j)
            if (percepts_[i].obs == percepts_[j].obs && percepts_[i].reward == percepts_[j].reward)
                throw SpecError("duplicate percept: " + percepts_[i].obs);
}

std::optional<Action> Alphabets::actionByName(const std::string& name) const {
    for (size_t i = 0; i < actions_.size(); ++i)
        if (actions_[i] == name) return Action{static_cast<uint8_t>(i)};
    return std::nullopt;
}

std::optional<PerceptId> Alphabets::perceptBy(const std::string& obs, const Rational& reward) const {
    for (size_t i = 0; i < percepts_.size(); ++i)
        if (percepts_[i].obs == obs && percepts_[i].reward == reward)
            return PerceptId{static_cast<uint8_t>(i)};
    return std::nullopt;
}

std::string Alphabets::perceptLabel(PerceptId e) const {
    const PerceptInfo& p = percepts_[e.i];
    return p.obs + ":" + p.reward.str();
}

bool operator==(const Alphabets& a, const Alphabets& b) {
    if (a.actions_ != b.actions_) return false;
    if (a.percepts_.size() != b.percepts_.size()) return false;
    for (size_t i = 0; i < a.percepts_.size(); ++i)
        if (a.percepts_[i].obs != b.percepts_[i].obs || a.percepts_[i].reward != b.percepts_[i].reward)
            return false;
    return true;
}

void History::pushAction(Action a) {
    if (pending_) throw SpecError("history already has a pending action");
    pending_ = a;
}

void History::pushPercept(PerceptId e) {
    if (!pending_) throw SpecError("percept without a preceding action");
    steps_.push_back(Step{*pending_, e});
    pending_.reset();
}

std::vector<Action> History::actions() const {
    std::vector<Action> out;
    out.reserve(steps_.size());
    for (const Step& s : steps_) out.push_back(s.action);
    return out;
}

std::vector<PerceptId> History::percepts() const {
    std::vector<PerceptId> out;
    out.reserve(steps_.size());
    for (const Step& s : steps_) out.push_back(s.percept);
    return out;
}

}  // namespace grl
