#include "grl/environment.hpp"

#include <functional>

#include "grl/errors.hpp"

namespace grl {

Rational Environment::exactMass(std::span<const Action> actions,
                                std::span<const PerceptId> percepts) const {
    if (actions.size() != percepts.size())
        throw SpecError("environment evaluation needs equal-length action/percept prefixes");
    if (!hasExact_) throw ExactUnavailable(name_ + " has no exact evaluation");
    return doExact(actions, percepts);
}

Rational Environment::lowerMass(std::span<const Action> actions, std::span<const PerceptId> percepts,
                                unsigned k) const {
    if (actions.size() != percepts.size())
        throw SpecError("environment evaluation needs equal-length action/percept prefixes");
    return doLower(actions, percepts, k);
}

Rational Environment::doExact(std::span<const Action>, std::span<const PerceptId>) const {
    throw ExactUnavailable(name_ + " has no exact evaluation");
}

Rational Environment::doLower(std::span<const Action> actions, std::span<const PerceptId> percepts,
                              unsigned) const {
    return doExact(actions, percepts);
}

Rational conditional(const Environment& env, const History& h, std::span<const PerceptId> eNext,
                     std::span<const Action> aNext) {
    std::vector<Action> actions = h.actions();
    std::vector<PerceptId> percepts = h.percepts();
    Rational den = env.exactMass(actions, percepts);
    if (den.isZero())
        throw ConditioningOnNull("history prefix has measure zero in " + env.name());
    // A pending action with no requested percepts cannot matter (percepts
    // never depend on later actions): the empty continuation has mass 1.
    if (h.pendingAction() && !eNext.empty()) actions.push_back(*h.pendingAction());
    actions.insert(actions.end(), aNext.begin(), aNext.end());
    percepts.insert(percepts.end(), eNext.begin(), eNext.end());
    if (actions.size() != percepts.size())
        throw SpecError("continuation actions and percepts do not align");
    Rational num = env.exactMass(actions, percepts);
    return num / den;
}

std::string renderPrefix(const Alphabets& al, std::span<const Action> actions,
                         std::span<const PerceptId> percepts) {
    if (actions.empty()) return "(empty)";
    std::string out;
    for (size_t i = 0; i < actions.size(); ++i) {
        out += "(" + al.actionName(actions[i]);
        if (i < percepts.size()) out += "," + al.perceptLabel(percepts[i]);
        out += ")";
    }
    return out;
}

namespace {

// Wrapper environment realizing Solomonoff normalization along the prefix.
class NormalizedEnvironment : public Environment {
public:
    explicit NormalizedEnvironment(EnvPtr base)
        : Environment(base->name() + "_norm", base->alphabets(), /*isMeasure=*/true),
          base_(std::move(base)) {}

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override {
        const Alphabets& al = alphabets();
        Rational nrm(1);
        std::vector<Action> a(actions.begin(), actions.end());
        std::vector<PerceptId> e;
        e.reserve(percepts.size());
        for (size_t i = 0; i < percepts.size(); ++i) {
            // One-step sum under the action taken at step i+1.
            Rational den(0);
            std::span<const Action> aHere(a.data(), i + 1);
            for (size_t p = 0; p < al.perceptCount(); ++p) {
                e.push_back(PerceptId{static_cast<uint8_t>(p)});
                den += base_->exactMass(aHere, e);
                e.pop_back();
            }
            if (den.isZero())
                throw NormalizationSingular("one-step sum is zero at prefix " +
                                            renderPrefix(al, aHere.subspan(0, i), {e.begin(), e.begin() + i}) +
                                            " of " + base_->name());
            e.push_back(percepts[i]);
            Rational num = base_->exactMass(aHere, e);
            if (num.isZero()) return Rational(0);
            nrm *= num / den;
        }
        return nrm;
    }

private:
    EnvPtr base_;
};

}  // namespace

EnvPtr normalize(EnvPtr env) {
    if (!env->hasExact()) throw ExactUnavailable("normalization needs exact evaluation");
    return std::make_shared<NormalizedEnvironment>(std::move(env));
}

std::string ValidityReport::str() const {
    std::string out = "validity to depth " + std::to_string(depth) + ": ";
    if (ok()) {
        out += "valid";
        if (!strictPrefixes.empty())
            out += " (strict superadditivity at " + std::to_string(strictPrefixes.size()) + " prefixes)";
        return out;
    }
    out += std::to_string(issues.size()) + " violation(s)\n";
    for (const ValidityIssue& v : issues)
        out += "  " + v.kind + " at " + v.witness + ": " + v.detail + "\n";
    return out;
}

ValidityReport checkValidity(const Environment& env, unsigned maxDepth) {
    ValidityReport report;
    report.depth = maxDepth;
    const Alphabets& al = env.alphabets();

    Rational root = env.rootMass();
    if (root > Rational(1))
        report.issues.push_back({"root", "(empty)", "nu(eps) = " + root.str() + " > 1"});
    if (root.sign() < 0) report.issues.push_back({"negative-mass", "(empty)", root.str()});

    std::vector<Action> a;
    std::vector<PerceptId> e;
    std::function<void(const Rational&, unsigned)> walk = [&](const Rational& mass, unsigned depth) {
        if (depth == maxDepth) return;
        for (size_t ai = 0; ai < al.actionCount(); ++ai) {
            a.push_back(Action{static_cast<uint8_t>(ai)});
            Rational sum(0);
            std::vector<Rational> childMass(al.perceptCount());
            for (size_t pi = 0; pi < al.perceptCount(); ++pi) {
                e.push_back(PerceptId{static_cast<uint8_t>(pi)});
                Rational c = env.exactMass(a, e);
                if (c.sign() < 0)
                    report.issues.push_back({"negative-mass", renderPrefix(al, a, e), c.str()});
                childMass[pi] = c;
                sum += c;
                e.pop_back();
            }
            std::string prefix = renderPrefix(al, {a.data(), a.size() - 1}, e) + "+" + al.actionName(a.back());
            if (sum > mass)
                report.issues.push_back({"superadditivity", prefix,
                                         "children sum " + sum.str() + " > parent " + mass.str()});
            else if (sum < mass) {
                if (env.declaredMeasure())
                    report.issues.push_back({"measure-equality", prefix,
                                             "children sum " + sum.str() + " < parent " + mass.str()});
                else if (mass.sign() > 0)
                    report.strictPrefixes.push_back(prefix);
            }
            for (size_t pi = 0; pi < al.perceptCount(); ++pi) {
                e.push_back(PerceptId{static_cast<uint8_t>(pi)});
                walk(childMass[pi], depth + 1);
                e.pop_back();
            }
            a.pop_back();
        }
    };
    walk(root, 0);
    if (env.declaredMeasure() && !(root == Rational(1)))
        report.issues.push_back({"measure-equality", "(empty)", "nu(eps) = " + root.str() + " != 1"});
    return report;
}

TableEnvironment::TableEnvironment(std::string name, Alphabets alphabets, unsigned tableDepth,
                                   TailRule tail, std::map<Key, Rational> rows, Rational root,
                                   bool declaredMeasure)
    : Environment(std::move(name), std::move(alphabets), declaredMeasure),
      depth_(tableDepth),
      tail_(tail),
      rows_(std::move(rows)),
      root_(std::move(root)) {
    if (depth_ == 0) throw SpecError("table depth must be >= 1");
    if (root_.sign() < 0 || root_ > Rational(1)) throw SpecError("table root mass must lie in [0,1]");
    for (const auto& [key, mass] : rows_) {
        if (key.first.size() != key.second.size() || key.first.empty() || key.first.size() > depth_)
            throw SpecError("table row with invalid prefix length");
        if (mass.sign() < 0) throw SpecError("table row with negative mass");
        for (uint8_t ai : key.first)
            if (ai >= this->alphabets().actionCount()) throw SpecError("table row action out of range");
        for (uint8_t pi : key.second)
            if (pi >= this->alphabets().perceptCount()) throw SpecError("table row percept out of range");
    }
}

Rational TableEnvironment::massAt(std::vector<uint8_t>& a, std::vector<uint8_t>& e) const {
    size_t t = a.size();
    if (t == 0) return root_;
    if (t <= depth_) {
        auto it = rows_.find(Key{a, e});
        if (it != rows_.end()) return it->second;
        if (t == depth_) return Rational(0);
        // Unlisted interior prefix: complete as the largest one-step
        // continuation sum, which keeps superadditivity for every action.
        Rational best(0);
        for (size_t ai = 0; ai < alphabets().actionCount(); ++ai) {
            Rational sum(0);
            a.push_back(static_cast<uint8_t>(ai));
            for (size_t pi = 0; pi < alphabets().perceptCount(); ++pi) {
                e.push_back(static_cast<uint8_t>(pi));
                sum += massAt(a, e);
                e.pop_back();
            }
            a.pop_back();
            if (sum > best) best = sum;
        }
        return best;
    }
    // Beyond the table: apply the tail rule to the depth-level prefix.
    std::vector<uint8_t> aCut(a.begin(), a.begin() + depth_);
    std::vector<uint8_t> eCut(e.begin(), e.begin() + depth_);
    Rational base = massAt(aCut, eCut);
    if (base.isZero()) return base;
    switch (tail_) {
        case TailRule::End:
            return Rational(0);
        case TailRule::RepeatLast: {
            for (size_t i = depth_; i < e.size(); ++i)
                if (e[i] != e[depth_ - 1]) return Rational(0);
            return base;
        }
        case TailRule::Uniform: {
            Rational unit(1, static_cast<long>(alphabets().perceptCount()));
            for (size_t i = depth_; i < e.size(); ++i) base *= unit;
            return base;
        }
    }
    return Rational(0);
}

Rational TableEnvironment::doExact(std::span<const Action> actions,
                                   std::span<const PerceptId> percepts) const {
    std::vector<uint8_t> a(actions.size());
    std::vector<uint8_t> e(percepts.size());
    for (size_t i = 0; i < actions.size(); ++i) a[i] = actions[i].i;
    for (size_t i = 0; i < percepts.size(); ++i) e[i] = percepts[i].i;
    return massAt(a, e);
}

}  // namespace grl
