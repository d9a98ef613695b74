#include "grl/simulate.hpp"

#include <sstream>

#include "grl/errors.hpp"

namespace grl {

uint64_t DyadicSampler::next64() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

size_t DyadicSampler::drawCell(const std::vector<Rational>& bounds) {
    if (bounds.size() < 2 || !bounds.front().isZero() || !(bounds.back() == Rational(1)))
        throw SpecError("sampler bounds must run from 0 to 1");
    for (size_t i = 0; i + 1 < bounds.size(); ++i)
        if (!(bounds[i] < bounds[i + 1])) throw SpecError("sampler bounds must be strictly increasing");

    mpz_class numer(0);
    unsigned bits = 0;
    constexpr unsigned kMaxBits = 1024;
    while (true) {
        // u = numer / 2^bits; the true draw lies in [u, u + 2^-bits).
        numer <<= 64;
        uint64_t word = next64();
        mpz_class hiWord(static_cast<unsigned long>(word >> 32));
        mpz_class loWord(static_cast<unsigned long>(word & 0xffffffffull));
        numer += (hiWord << 32) + loWord;
        bits += 64;
        Rational u(numer, mpz_class(1) << bits);
        Rational uHi = u + Rational(mpz_class(1), mpz_class(1) << bits);
        size_t cell = 0;
        while (cell + 2 < bounds.size() && !(u < bounds[cell + 1])) ++cell;
        // Decided once the whole dyadic interval sits inside the cell.
        if (uHi <= bounds[cell + 1] || (cell + 2 == bounds.size())) {
            if (uHi <= bounds[cell + 1]) return cell;
            // Top cell ends at 1 and u < 1 always holds; only an interior
            // boundary can be straddled.
            if (u >= bounds[cell]) return cell;
        }
        if (bits >= kMaxBits)
            throw Error("sampler could not separate a cell boundary within 1024 bits");
    }
}

namespace {

Rational stepGammaReward(const Discount& d, unsigned t, const Rational& reward) {
    return d.gamma(t) * reward;
}

}  // namespace

RunResult simulate(const RunConfig& config) {
    if (!config.env) throw SpecError("simulate needs an environment");
    if (config.steps < 1) throw SpecError("simulate needs steps >= 1");
    const Alphabets& al = config.env->alphabets();
    TieOrder tie = config.tieOrder ? *config.tieOrder : TieOrder::alphabetical(al);
    ActionContext ctx{config.env, config.discount, tie, config.variant, config.kMax};
    DyadicSampler sampler(config.seed);

    RunResult result;
    result.totalDiscountedReward = Rational(0);
    History& h = result.history;

    for (unsigned t = 1; t <= config.steps; ++t) {
        Decision d = act(config.agent, ctx, h);
        h.pushAction(d.action);

        // One-step conditional over percepts at the reached prefix.
        std::vector<PerceptId> percepts = h.percepts();
        Rational parent = config.env->exactMass(h.actions(), percepts);
        if (parent.isZero()) throw ConditioningOnNull("simulation reached a measure-zero prefix");

        std::vector<Rational> bounds{Rational(0)};
        std::vector<Action> aFull = h.actions();
        aFull.push_back(d.action);
        for (size_t pi = 0; pi < al.perceptCount(); ++pi) {
            percepts.push_back(PerceptId{static_cast<uint8_t>(pi)});
            Rational mass = config.env->exactMass(aFull, percepts);
            percepts.pop_back();
            Rational prev = bounds.back();
            bounds.push_back(prev + mass / parent);
        }
        Rational continueMass = bounds.back();
        if (continueMass > Rational(1))
            throw SpecError("one-step conditionals exceed 1 at a reached prefix of " + config.env->name());
        // Cells: one per positive-mass percept, then the deficit cell.
        std::vector<Rational> cellBounds;
        std::vector<size_t> cellPercept;
        cellBounds.push_back(Rational(0));
        for (size_t pi = 0; pi < al.perceptCount(); ++pi) {
            if (bounds[pi + 1] > bounds[pi]) {
                cellBounds.push_back(bounds[pi + 1]);
                cellPercept.push_back(pi);
            }
        }
        bool deficit = continueMass < Rational(1);
        if (deficit) cellBounds.push_back(Rational(1));

        size_t cell = cellBounds.size() == 2 && !deficit ? 0 : sampler.drawCell(cellBounds);
        if (deficit && cell == cellPercept.size()) {
            result.outcome = RunOutcome::EnvironmentEnded;
            result.endedAt = t;
            break;
        }
        PerceptId e{static_cast<uint8_t>(cellPercept[cell])};
        h.pushPercept(e);

        result.totalDiscountedReward += stepGammaReward(config.discount, t, al.reward(e));
        TraceRecord rec;
        rec.t = t;
        rec.action = d.action;
        rec.percept = e;
        rec.value = d.qValue;
        rec.cumulativeDiscountedReward = result.totalDiscountedReward;
        if (config.mixtureClass) rec.posterior = posterior(*config.mixtureClass, h);
        result.records.push_back(std::move(rec));
    }
    return result;
}

const char* runOutcomeName(RunOutcome o) {
    switch (o) {
        case RunOutcome::Completed: return "completed";
        case RunOutcome::EnvironmentEnded: return "environment-ended";
    }
    return "?";
}

std::string renderTrace(const RunConfig& config, const RunResult& result) {
    const Alphabets& al = config.env->alphabets();
    std::ostringstream out;
    out << "# trace v1\n";
    out << "# env=" << config.env->name() << "\n";
    out << "# agent=" << config.agent.str() << " variant="
        << (config.variant == ValueVariant::IterativeV ? "iterative" : "recursive") << "\n";
    TieOrder tie = config.tieOrder ? *config.tieOrder : TieOrder::alphabetical(al);
    out << "# discount=" << config.discount.str() << " steps=" << config.steps << " seed=" << config.seed
        << " kmax=" << config.kMax << " tie=";
    for (size_t i = 0; i < tie.order().size(); ++i) {
        if (i) out << ",";
        out << al.actionName(tie.order()[i]);
    }
    out << "\n";
    for (const TraceRecord& r : result.records) {
        out << "step t=" << r.t << " action=" << al.actionName(r.action)
            << " percept=" << al.perceptLabel(r.percept) << " value=[" << r.value.lo.str() << ","
            << r.value.hi.str() << "]";
        if (!r.posterior.empty()) {
            out << " posterior=";
            for (size_t i = 0; i < r.posterior.size(); ++i) {
                if (i) out << ",";
                out << r.posterior[i].first << ":" << r.posterior[i].second.str();
            }
        }
        out << " cum=" << r.cumulativeDiscountedReward.str() << "\n";
    }
    if (result.outcome == RunOutcome::EnvironmentEnded)
        out << "end reason=environment-ended t=" << result.endedAt << "\n";
    out << "total reward=" << result.totalDiscountedReward.str()
        << " steps-completed=" << result.records.size() << " outcome=" << runOutcomeName(result.outcome) << "\n";
    return out.str();
}

}  // namespace grl
