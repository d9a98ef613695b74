#include "grl/mixture.hpp"

#include "grl/errors.hpp"

namespace grl {

WeightedClass::WeightedClass(std::vector<WeightedMember> members) : members_(std::move(members)) {
    if (members_.empty()) throw SpecError("weighted class must be nonempty");
    Rational sum(0);
    for (const WeightedMember& m : members_) {
        if (!m.env) throw SpecError("weighted class member is null");
        if (m.weight.sign() <= 0) throw SpecError("class weights must be positive");
        sum += m.weight;
        if (!(m.env->alphabets() == members_.front().env->alphabets()))
            throw AlphabetMismatch("class members disagree on alphabets: " + m.env->name());
    }
    if (sum > Rational(1)) throw SpecError("class weights sum to " + sum.str() + " > 1");
    // Posteriors and dominance bounds are keyed by member name.
    for (size_t i = 0; i < members_.size(); ++i)
        for (size_t j = i + 1; j < members_.size(); ++j)
            if (members_[i].env->name() == members_[j].env->name())
                throw SpecError("duplicate member name in class: " + members_[i].env->name());
}

Rational WeightedClass::weightSum() const {
    Rational sum(0);
    for (const WeightedMember& m : members_) sum += m.weight;
    return sum;
}

namespace {

class MixtureEnvironment : public Environment {
public:
    explicit MixtureEnvironment(WeightedClass c)
        : Environment(makeName(c), c.alphabets(), computeIsMeasure(c), computeHasExact(c)),
          class_(std::move(c)) {}

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override {
        Rational sum(0);
        for (const WeightedMember& m : class_.members())
            sum += m.weight * m.env->exactMass(actions, percepts);
        return sum;
    }

    Rational doLower(std::span<const Action> actions, std::span<const PerceptId> percepts,
                     unsigned k) const override {
        Rational sum(0);
        for (const WeightedMember& m : class_.members())
            sum += m.weight * m.env->lowerMass(actions, percepts, k);
        return sum;
    }

private:
    static std::string makeName(const WeightedClass& c) {
        std::string n = "mixture(";
        for (size_t i = 0; i < c.members().size(); ++i) {
            if (i) n += ",";
            n += c.members()[i].env->name();
        }
        return n + ")";
    }
    static bool computeIsMeasure(const WeightedClass& c) {
        if (!(c.weightSum() == Rational(1))) return false;
        for (const WeightedMember& m : c.members())
            if (!m.env->declaredMeasure()) return false;
        return true;
    }
    static bool computeHasExact(const WeightedClass& c) {
        for (const WeightedMember& m : c.members())
            if (!m.env->hasExact()) return false;
        return true;
    }

    WeightedClass class_;
};

}  // namespace

EnvPtr mixtureEnv(const WeightedClass& c) {
    return std::make_shared<MixtureEnvironment>(c);
}

std::vector<std::pair<std::string, Rational>> posterior(const WeightedClass& c, const History& h) {
    std::vector<Action> actions = h.actions();
    std::vector<PerceptId> percepts = h.percepts();
    Rational mix(0);
    std::vector<Rational> parts;
    parts.reserve(c.members().size());
    for (const WeightedMember& m : c.members()) {
        Rational p = m.weight * m.env->exactMass(actions, percepts);
        parts.push_back(p);
        mix += p;
    }
    if (mix.isZero()) throw ConditioningOnNull("mixture mass of history is zero");
    std::vector<std::pair<std::string, Rational>> out;
    out.reserve(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
        out.emplace_back(c.members()[i].env->name(), parts[i] / mix);
    return out;
}

Rational dominanceBound(const WeightedClass& c, const std::string& memberName, const History& h,
                        const Rational& vMember) {
    std::vector<Action> actions = h.actions();
    std::vector<PerceptId> percepts = h.percepts();
    Rational mix(0);
    Rational memberMass(0);
    Rational weight(0);
    bool found = false;
    for (const WeightedMember& m : c.members()) {
        Rational mass = m.env->exactMass(actions, percepts);
        mix += m.weight * mass;
        if (m.env->name() == memberName) {
            memberMass = mass;
            weight = m.weight;
            found = true;
        }
    }
    if (!found) throw SpecError("no class member named " + memberName);
    if (mix.isZero()) throw ConditioningOnNull("mixture mass of history is zero");
    return weight * (memberMass / mix) * vMember;
}

}  // namespace grl
