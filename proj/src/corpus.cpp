#include "grl/corpus.hpp"

#include "grl/errors.hpp"

namespace grl {

namespace {

class Prop1Env : public Environment {
public:
    explicit Prop1Env(Rational eps)
        : Environment("prop1",
                      Alphabets({"alpha", "beta"},
                                {{"0", Rational(0)}, {"0", eps}, {"0", Rational(1)}}),
                      /*isMeasure=*/false),
          eps_(std::move(eps)) {}

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override {
        size_t t = percepts.size();
        if (t == 0) return Rational(1);
        const Alphabets& al = alphabets();
        const Rational& r1 = al.reward(percepts[0]);
        if (actions[0] == Action{0}) {  // alpha: reward 1, then the environment ends
            return (t == 1 && r1 == Rational(1)) ? Rational(1) : Rational(0);
        }
        // beta: reward eps once, then 0 forever
        if (!(r1 == eps_)) return Rational(0);
        for (size_t k = 1; k < t; ++k)
            if (!al.reward(percepts[k]).isZero()) return Rational(0);
        return Rational(1);
    }

private:
    Rational eps_;
};

class AdversarialEnv : public Environment {
public:
    AdversarialEnv(TargetPolicy target, std::vector<std::string> actionNames, std::string name)
        : Environment(std::move(name),
                      Alphabets(std::move(actionNames), {{"0", Rational(0)}, {"0", Rational(1)}}),
                      /*isMeasure=*/true),
          target_(std::move(target)) {}

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override {
        size_t t = percepts.size();
        if (t == 0) return Rational(1);
        const Alphabets& al = alphabets();
        // First index where the agent's action deviates from the target.
        size_t firstDev = 0;  // 1-based; 0 = no deviation
        History h;
        for (size_t k = 0; k < t; ++k) {
            Action want = target_(h);
            if (!(actions[k] == want)) {
                firstDev = k + 1;
                break;
            }
            h.pushAction(actions[k]);
            h.pushPercept(percepts[k]);
        }
        for (size_t k = 0; k < t; ++k) {
            bool expectOne = firstDev != 0 && k + 1 >= firstDev;
            const Rational& r = al.reward(percepts[k]);
            if (expectOne ? !(r == Rational(1)) : !r.isZero()) return Rational(0);
        }
        return Rational(1);
    }

private:
    TargetPolicy target_;
};

class AlwaysTrueS : public SRelation {
public:
    bool holds(unsigned, unsigned, unsigned, unsigned) const override { return true; }
    std::optional<bool> decided(unsigned, unsigned, unsigned) const override { return true; }
    std::string str() const override { return "true"; }
};

class FalseAtS : public SRelation {
public:
    explicit FalseAtS(unsigned t0) : t0_(t0) {}
    bool holds(unsigned, unsigned, unsigned tPrime, unsigned) const override { return tPrime != t0_; }
    std::optional<bool> decided(unsigned, unsigned, unsigned tPrime) const override { return tPrime != t0_; }
    std::string str() const override { return "falseAt:" + std::to_string(t0_); }

private:
    unsigned t0_;
};

class FoundAtS : public SRelation {
public:
    explicit FoundAtS(unsigned k) : k_(k) {}
    bool holds(unsigned, unsigned, unsigned, unsigned k) const override { return k == k_; }
    std::string str() const override { return "foundAt:" + std::to_string(k_); }

private:
    unsigned k_;
};

class RhoEnv : public Environment {
public:
    RhoEnv(unsigned index, std::shared_ptr<const SRelation> s, unsigned searchBound)
        : Environment("rho_" + std::to_string(index) + "(" + s->str() + ")",
                      Alphabets({"alpha", "beta"}, {{"0", Rational(0)},
                                                    {"0", Rational(1)},
                                                    {"1", Rational(0)},
                                                    {"1", Rational(1)}}),
                      /*isMeasure=*/std::dynamic_pointer_cast<const AlwaysTrueS>(s) != nullptr),
          index_(index),
          s_(std::move(s)),
          searchBound_(searchBound) {}

protected:
    Rational doExact(std::span<const Action> actions, std::span<const PerceptId> percepts) const override {
        size_t t = percepts.size();
        if (t == 0) return Rational(1);
        const Alphabets& al = alphabets();
        // Leading run of observation "1"; everything after the first "0"
        // must be "0" or the mass is zero.
        size_t n = 0;
        while (n < t && al.percept(percepts[n]).obs == "1") ++n;
        for (size_t j = n; j < t; ++j)
            if (al.percept(percepts[j]).obs != "0") return Rational(0);
        if (n == t) {  // all ones so far: pre-branch segment
            for (size_t j = 0; j < t; ++j)
                if (!al.reward(percepts[j]).isZero()) return Rational(0);
            return Rational::pow2(-static_cast<long>(t));
        }
        Rational branchMass = Rational::pow2(-static_cast<long>(n) - 1);
        if (t <= n + 1) {
            for (size_t j = 0; j < t; ++j)
                if (!al.reward(percepts[j]).isZero()) return Rational(0);
            return branchMass;
        }
        if (actions[n + 1] == Action{0}) {  // alpha at step n+2: rewards 0 forever
            for (size_t j = 0; j < t; ++j)
                if (!al.reward(percepts[j]).isZero()) return Rational(0);
            return branchMass;
        }
        // beta at step n+2: rewards 1 strictly after step n+1, while the
        // bounded search succeeds at every step so far.
        for (size_t j = 0; j < t; ++j) {
            bool expectOne = j + 1 > n + 1;
            const Rational& r = al.reward(percepts[j]);
            if (expectOne ? !(r == Rational(1)) : !r.isZero()) return Rational(0);
        }
        for (size_t tp = 1; tp <= t; ++tp)
            if (!existsK(static_cast<unsigned>(n), static_cast<unsigned>(tp))) return Rational(0);
        return branchMass;
    }

private:
    bool existsK(unsigned n, unsigned tPrime) const {
        if (auto d = s_->decided(n, index_, tPrime)) return *d;
        for (unsigned k = 0; k <= searchBound_; ++k)
            if (s_->holds(n, index_, tPrime, k)) return true;
        throw SearchBudgetExceeded("exists-k search for S(" + std::to_string(n) + "," +
                                   std::to_string(index_) + "," + std::to_string(tPrime) +
                                   ",k) exceeded bound " + std::to_string(searchBound_));
    }

    unsigned index_;
    std::shared_ptr<const SRelation> s_;
    unsigned searchBound_;
};

}  // namespace

EnvPtr makeProp1Env(const Rational& epsReward) {
    if (epsReward.sign() <= 0 || epsReward >= Rational(1))
        throw SpecError("prop1 needs 0 < eps_r < 1");
    return std::make_shared<Prop1Env>(epsReward);
}

EnvPtr makeAdversarialEnv(TargetPolicy target, std::vector<std::string> actionNames, std::string name) {
    if (!target) throw SpecError("adversarial environment needs a target policy");
    return std::make_shared<AdversarialEnv>(std::move(target), std::move(actionNames), std::move(name));
}

std::shared_ptr<const SRelation> SRelation::alwaysTrue() { return std::make_shared<AlwaysTrueS>(); }
std::shared_ptr<const SRelation> SRelation::falseAt(unsigned t0) { return std::make_shared<FalseAtS>(t0); }
std::shared_ptr<const SRelation> SRelation::foundAt(unsigned k) { return std::make_shared<FoundAtS>(k); }

EnvPtr makeRhoFamilyEnv(unsigned i, std::shared_ptr<const SRelation> s, unsigned searchBound) {
    if (!s) throw SpecError("rho environment needs an S relation");
    return std::make_shared<RhoEnv>(i, std::move(s), searchBound);
}

}  // namespace grl
