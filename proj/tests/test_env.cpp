#include <doctest.h>

#include <functional>

#include "grl/corpus.hpp"
#include "grl/errors.hpp"
#include "grl/specfile.hpp"
#include "helpers.hpp"

using namespace grl;
using grltest::LowerBoundedEnv;
using grltest::randomTableEnv;

namespace {

// History builder from symbolic tokens: actions by name, percepts as
// (obs, reward).
History hist(const Environment& env, const std::vector<std::pair<std::string, std::string>>& steps,
             const std::string& pending = "") {
    const Alphabets& al = env.alphabets();
    History h;
    for (const auto& [a, p] : steps) {
        h.pushAction(*al.actionByName(a));
        size_t colon = p.rfind(':');
        auto pid = al.perceptBy(p.substr(0, colon), Rational::parse(p.substr(colon + 1)));
        REQUIRE(pid.has_value());
        h.pushPercept(*pid);
    }
    if (!pending.empty()) h.pushAction(*al.actionByName(pending));
    return h;
}

Rational massOf(const Environment& env, const std::vector<std::pair<std::string, std::string>>& steps) {
    History h = hist(env, steps);
    return env.exactMass(h.actions(), h.percepts());
}

}  // namespace

TEST_CASE("prop1 environment masses match the construction") {
    EnvPtr env = makeProp1Env(Rational(1, 4));
    CHECK(env->rootMass() == Rational(1));
    CHECK(massOf(*env, {{"alpha", "0:1"}}) == Rational(1));
    CHECK(massOf(*env, {{"alpha", "0:1"}, {"alpha", "0:0"}}) == Rational(0));
    CHECK(massOf(*env, {{"alpha", "0:1"}, {"beta", "0:1"}}) == Rational(0));
    CHECK(massOf(*env, {{"alpha", "0:0"}}) == Rational(0));
    CHECK(massOf(*env, {{"beta", "0:1/4"}, {"alpha", "0:0"}, {"beta", "0:0"}}) == Rational(1));
    CHECK(massOf(*env, {{"beta", "0:1/4"}, {"alpha", "0:1/4"}}) == Rational(0));
    CHECK_THROWS_AS(makeProp1Env(Rational(1)), SpecError);
}

TEST_CASE("conditional: empty continuation, ended branch, surviving branch") {
    EnvPtr env = makeProp1Env(Rational(1, 4));
    const Alphabets& al = env->alphabets();
    CHECK(conditional(*env, History{}, {}, {}) == Rational(1));

    // After (alpha, reward 1) every continuation percept has measure zero.
    History alphaDone = hist(*env, {{"alpha", "0:1"}});
    PerceptId anyReward = *al.perceptBy("0", Rational(0));
    Action beta = *al.actionByName("beta");
    CHECK(conditional(*env, alphaDone, std::vector<PerceptId>{anyReward}, std::vector<Action>{beta}) ==
          Rational(0));

    // The beta branch continues with reward 0 at probability 1.
    History betaDone = hist(*env, {{"beta", "0:1/4"}});
    CHECK(conditional(*env, betaDone, std::vector<PerceptId>{anyReward}, std::vector<Action>{beta}) ==
          Rational(1));

    // Conditioning on a measure-zero prefix is an error.
    History nullPrefix = hist(*env, {{"alpha", "0:0"}});
    CHECK_THROWS_AS(conditional(*env, nullPrefix, std::vector<PerceptId>{anyReward},
                                std::vector<Action>{beta}),
                    ConditioningOnNull);
}

TEST_CASE("chronology: masses ignore later actions") {
    EnvPtr env = makeProp1Env(Rational(1, 4));
    // Only the first action matters on the beta branch.
    Rational m1 = massOf(*env, {{"beta", "0:1/4"}, {"alpha", "0:0"}, {"alpha", "0:0"}});
    Rational m2 = massOf(*env, {{"beta", "0:1/4"}, {"beta", "0:0"}, {"alpha", "0:0"}});
    Rational m3 = massOf(*env, {{"beta", "0:1/4"}, {"alpha", "0:0"}, {"beta", "0:0"}});
    CHECK(m1 == Rational(1));
    CHECK(m1 == m2);
    CHECK(m1 == m3);

    // The rho pre-branch masses depend on no action at all.
    EnvPtr rho = makeRhoFamilyEnv(0, SRelation::alwaysTrue());
    for (const char* a1 : {"alpha", "beta"})
        for (const char* a2 : {"alpha", "beta"})
            CHECK(massOf(*rho, {{a1, "1:0"}, {a2, "1:0"}}) == Rational(1, 4));

    // A history may end with a pending action; the conditional's denominator
    // cannot depend on it.
    History pendA = hist(*env, {{"beta", "0:1/4"}}, "alpha");
    History pendB = hist(*env, {{"beta", "0:1/4"}}, "beta");
    CHECK(conditional(*env, pendA, {}, {}) == conditional(*env, pendB, {}, {}));
}

TEST_CASE("checkValidity: prop1 is valid with one vanishing branch") {
    EnvPtr env = makeProp1Env(Rational(1, 4));
    ValidityReport report = checkValidity(*env, 3);
    CHECK(report.ok());
    // Mass 1 vanishes after (alpha, reward 1): strict superadditivity there.
    bool foundAlpha = false;
    for (const std::string& p : report.strictPrefixes)
        if (p.find("(alpha,0:1)") != std::string::npos) foundAlpha = true;
    CHECK(foundAlpha);
}

TEST_CASE("checkValidity: corrupted table is reported with its witness") {
    // One-step masses sum to 9/8 > 1.
    auto spec = EnvSpecFile::parseText(
        "kind=table\n"
        "actions=a,b\n"
        "percepts=o:0,o:1\n"
        "depth=1\n"
        "tail=end\n"
        "row=a;o:0;5/8\n"
        "row=a;o:1;4/8\n",
        "corrupt");
    EnvPtr env = spec.build();
    ValidityReport report = checkValidity(*env, 1);
    REQUIRE_FALSE(report.ok());
    CHECK(report.issues[0].kind == "superadditivity");
    CHECK(report.issues[0].witness.find("+a") != std::string::npos);
}

TEST_CASE("adversarial environment follows and punishes per the target") {
    EnvPtr env = makeAdversarialEnv([](const History&) { return Action{0}; });
    CHECK(env->declaredMeasure());
    // Following alpha for five steps is the reward-0 path with mass 1.
    std::vector<std::pair<std::string, std::string>> follow(5, {"alpha", "0:0"});
    CHECK(massOf(*env, follow) == Rational(1));
    // Deviating at step 1 flips all rewards to 1.
    CHECK(massOf(*env, {{"beta", "0:1"}, {"alpha", "0:1"}, {"beta", "0:1"}}) == Rational(1));
    // Rewards inconsistent with both branches carry no mass.
    CHECK(massOf(*env, {{"alpha", "0:1"}}) == Rational(0));
    CHECK(massOf(*env, {{"beta", "0:0"}}) == Rational(0));
    CHECK(massOf(*env, {{"beta", "0:1"}, {"alpha", "0:0"}}) == Rational(0));
    CHECK(checkValidity(*env, 4).ok());
}

TEST_CASE("rho family masses match the displayed cases") {
    EnvPtr rho = makeRhoFamilyEnv(0, SRelation::alwaysTrue());
    // Pre-branch: observations 1^t with zero rewards at mass 2^-t.
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"beta", "1:0"}, {"alpha", "1:0"}}) == Rational(1, 8));
    CHECK(massOf(*rho, {{"alpha", "1:1"}}) == Rational(0));

    // n = 1: observations 1 0 0 0, beta at step 3, rewards turn 1 after step 2.
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:1"}, {"beta", "0:1"}}) ==
          Rational(1, 4));
    // n = 2: observations 1 1 0 0, beta at step 4, first reward 1 at step 4.
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:1"}}) ==
          Rational(1, 8));
    // Wrong reward timing on the beta branch has measure zero.
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:0"}}) == Rational(0));
    // Alpha branch pays nothing forever.
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"alpha", "0:0"}, {"alpha", "0:0"}}) ==
          Rational(1, 4));
    CHECK(massOf(*rho, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"alpha", "0:1"}}) == Rational(0));
    // Observation pattern 1 after 0 is outside both branches.
    CHECK(massOf(*rho, {{"alpha", "0:0"}, {"alpha", "1:0"}}) == Rational(0));

    // S decidably false at t0 = 3 kills the beta branch from step 3 on.
    EnvPtr rhoDead = makeRhoFamilyEnv(0, SRelation::falseAt(3));
    CHECK(massOf(*rhoDead, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:1"}}) == Rational(0));
    CHECK(massOf(*rhoDead, {{"alpha", "1:0"}, {"alpha", "0:0"}}) == Rational(1, 4));

    // Bounded search: a witness beyond the bound raises, within it succeeds.
    EnvPtr rhoSlow = makeRhoFamilyEnv(0, SRelation::foundAt(100), 64);
    CHECK_THROWS_AS(massOf(*rhoSlow, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:1"}}),
                    SearchBudgetExceeded);
    EnvPtr rhoOk = makeRhoFamilyEnv(0, SRelation::foundAt(5), 64);
    CHECK(massOf(*rhoOk, {{"alpha", "1:0"}, {"alpha", "0:0"}, {"beta", "0:1"}}) == Rational(1, 4));
}

TEST_CASE("corpus validity to depth 6") {
    CHECK(checkValidity(*makeProp1Env(Rational(1, 4)), 6).ok());
    CHECK(checkValidity(*makeAdversarialEnv([](const History&) { return Action{0}; }), 6).ok());
    CHECK(checkValidity(*makeRhoFamilyEnv(0, SRelation::alwaysTrue()), 6).ok());
    CHECK(checkValidity(*makeRhoFamilyEnv(1, SRelation::falseAt(4)), 6).ok());
}

TEST_CASE("normalize: one-step ratios, measure no-op, and the singular case") {
    // nu(e0) = 1/8, nu(e1) = 3/8 normalizes to 1/4, 3/4.
    auto spec = EnvSpecFile::parseText(
        "kind=table\n"
        "actions=a,b\n"
        "percepts=o:0,o:1\n"
        "depth=1\n"
        "tail=uniform\n"
        "row=a;o:0;1/8\n"
        "row=a;o:1;3/8\n"
        "row=b;o:0;1/8\n"
        "row=b;o:1;3/8\n",
        "leaky");
    EnvPtr env = spec.build();
    EnvPtr norm = normalize(env);
    const Alphabets& al = norm->alphabets();
    std::vector<Action> a{*al.actionByName("a")};
    std::vector<PerceptId> e0{*al.perceptBy("o", Rational(0))};
    std::vector<PerceptId> e1{*al.perceptBy("o", Rational(1))};
    CHECK(norm->exactMass(a, e0) == Rational(1, 4));
    CHECK(norm->exactMass(a, e1) == Rational(3, 4));
    CHECK(norm->rootMass() == Rational(1));
    CHECK(norm->declaredMeasure());

    // The symmetric split normalizes to 1/2 each.
    auto sym = EnvSpecFile::parseText(
        "kind=table\nactions=a,b\npercepts=o:0,o:1\ndepth=1\ntail=uniform\n"
        "row=a;o:0;1/4\nrow=a;o:1;1/4\nrow=b;o:0;1/4\nrow=b;o:1;1/4\n",
        "sym");
    EnvPtr symNorm = normalize(sym.build());
    CHECK(symNorm->exactMass(a, e0) == Rational(1, 2));

    // Normalizing a measure leaves one-step conditionals unchanged.
    std::mt19937_64 rng(11);
    EnvPtr meas = randomTableEnv(rng, 2, 2, 3, 8, true, "meas");
    EnvPtr measNorm = normalize(meas);
    const Alphabets& mal = meas->alphabets();
    std::vector<Action> ma{Action{0}};
    for (size_t pi = 0; pi < mal.perceptCount(); ++pi) {
        std::vector<PerceptId> pe{PerceptId{static_cast<uint8_t>(pi)}};
        CHECK(measNorm->exactMass(ma, pe) == meas->exactMass(ma, pe));
    }

    // prop1's alpha branch dies: normalization is singular past it.
    EnvPtr prop = makeProp1Env(Rational(1, 4));
    EnvPtr propNorm = normalize(prop);
    const Alphabets& pal = propNorm->alphabets();
    std::vector<Action> pa{*pal.actionByName("alpha"), *pal.actionByName("alpha")};
    std::vector<PerceptId> pe{*pal.perceptBy("0", Rational(1)), *pal.perceptBy("0", Rational(0))};
    CHECK_THROWS_AS(propNorm->exactMass(pa, pe), NormalizationSingular);
}

TEST_CASE("table tail rules") {
    auto base =
        "kind=table\nactions=a,b\npercepts=o:0,o:1\ndepth=1\n"
        "row=a;o:0;1/2\nrow=a;o:1;1/2\nrow=b;o:0;1\n";
    {
        auto spec = EnvSpecFile::parseText(std::string(base) + "tail=end\n", "t-end");
        EnvPtr env = spec.build();
        CHECK(massOf(*env, {{"a", "o:0"}, {"a", "o:0"}}) == Rational(0));
    }
    {
        auto spec = EnvSpecFile::parseText(std::string(base) + "tail=repeat-last\n", "t-rep");
        EnvPtr env = spec.build();
        CHECK(massOf(*env, {{"a", "o:1"}, {"b", "o:1"}, {"a", "o:1"}}) == Rational(1, 2));
        CHECK(massOf(*env, {{"a", "o:1"}, {"b", "o:0"}}) == Rational(0));
    }
    {
        auto spec = EnvSpecFile::parseText(std::string(base) + "tail=uniform\n", "t-uni");
        EnvPtr env = spec.build();
        CHECK(massOf(*env, {{"a", "o:1"}, {"b", "o:0"}}) == Rational(1, 4));
        CHECK(massOf(*env, {{"a", "o:1"}, {"b", "o:0"}, {"a", "o:1"}}) == Rational(1, 8));
    }
}

TEST_CASE("table interiors complete as the largest one-step continuation sum") {
    // Rows only at depth 2: the depth-1 masses must be derived, taking the
    // maximum over the next action so superadditivity holds for every action.
    auto spec = EnvSpecFile::parseText(
        "kind=table\n"
        "actions=a,b\n"
        "percepts=o:0,o:1\n"
        "depth=2\n"
        "tail=end\n"
        "row=a,a;o:0,o:0;1/2\n"
        "row=a,a;o:0,o:1;1/4\n"
        "row=a,b;o:0,o:0;1/8\n",
        "interior");
    EnvPtr env = spec.build();
    // Under (a, o:0): continuing with a carries 3/4, with b only 1/8.
    CHECK(massOf(*env, {{"a", "o:0"}}) == Rational(3, 4));
    CHECK(massOf(*env, {{"a", "o:1"}}) == Rational(0));
    CHECK(checkValidity(*env, 2).ok());
}

TEST_CASE("alphabet and alignment validation") {
    CHECK_THROWS_AS(Alphabets({"solo"}, {{"o", Rational(0)}}), SpecError);
    CHECK_THROWS_AS(Alphabets({"a", "a"}, {{"o", Rational(0)}}), SpecError);
    CHECK_THROWS_AS(Alphabets({"a", "b"}, {{"o", Rational(3, 2)}}), SpecError);
    CHECK_THROWS_AS(Alphabets({"a", "b"}, {{"o", Rational(-1, 2)}}), SpecError);

    EnvPtr env = makeProp1Env(Rational(1, 4));
    const Alphabets& al = env->alphabets();
    // Misaligned continuation: one percept requested but no action for it.
    History pend;
    pend.pushAction(*al.actionByName("beta"));
    PerceptId p = *al.perceptBy("0", Rational(0));
    CHECK_THROWS_AS(conditional(*env, pend, std::vector<PerceptId>{p, p}, {}), SpecError);
    // Double pending action is structurally impossible.
    CHECK_THROWS_AS(pend.pushAction(*al.actionByName("alpha")), SpecError);
}

TEST_CASE("budget soundness: exact corpus envs have constant lower bounds") {
    std::vector<EnvPtr> envs = {makeProp1Env(Rational(1, 4)),
                                makeRhoFamilyEnv(0, SRelation::alwaysTrue())};
    for (const EnvPtr& env : envs) {
        const Alphabets& al = env->alphabets();
        std::vector<Action> a;
        std::vector<PerceptId> e;
        std::function<void()> walk = [&]() {
            Rational exact = env->exactMass(a, e);
            for (unsigned k : {0u, 7u, 64u}) CHECK(env->lowerMass(a, e, k) == exact);
            if (a.size() == 3) return;
            for (size_t ai = 0; ai < al.actionCount(); ++ai)
                for (size_t pi = 0; pi < al.perceptCount(); ++pi) {
                    a.push_back(Action{static_cast<uint8_t>(ai)});
                    e.push_back(PerceptId{static_cast<uint8_t>(pi)});
                    walk();
                    a.pop_back();
                    e.pop_back();
                }
        };
        walk();
    }
}

TEST_CASE("budget soundness: lower bounds rise to the exact mass") {
    EnvPtr base = makeProp1Env(Rational(1, 4));
    LowerBoundedEnv env(base);
    const Alphabets& al = env.alphabets();
    std::vector<std::vector<std::pair<std::string, std::string>>> prefixes = {
        {},
        {{"beta", "0:1/4"}},
        {{"beta", "0:1/4"}, {"alpha", "0:0"}},
        {{"alpha", "0:1"}},
        {{"beta", "0:1/4"}, {"alpha", "0:0"}, {"beta", "0:0"}, {"alpha", "0:0"}},
    };
    for (const auto& steps : prefixes) {
        History h;
        for (const auto& [a, p] : steps) {
            h.pushAction(*al.actionByName(a));
            size_t colon = p.rfind(':');
            h.pushPercept(*al.perceptBy(p.substr(0, colon), Rational::parse(p.substr(colon + 1))));
        }
        Rational exact = env.exactMass(h.actions(), h.percepts());
        Rational prev(0);
        for (unsigned k = 0; k <= 10; ++k) {
            Rational lo = env.lowerMass(h.actions(), h.percepts(), k);
            CHECK(lo <= exact);
            CHECK(prev <= lo);
            prev = lo;
        }
        CHECK(env.lowerMass(h.actions(), h.percepts(), 8) == exact);
    }
}
