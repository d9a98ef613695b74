#include "grl/policy.hpp"

#include "grl/errors.hpp"

namespace grl {

TieOrder::TieOrder(const Alphabets& al, std::vector<Action> order) : order_(std::move(order)) {
    if (order_.size() != al.actionCount()) throw SpecError("tie order must cover the action alphabet");
    rank_.assign(al.actionCount(), order_.size());
    for (size_t i = 0; i < order_.size(); ++i) {
        if (order_[i].i >= al.actionCount()) throw SpecError("tie order action out of range");
        if (rank_[order_[i].i] != order_.size()) throw SpecError("tie order repeats an action");
        rank_[order_[i].i] = i;
    }
}

TieOrder TieOrder::alphabetical(const Alphabets& al) {
    std::vector<Action> order;
    for (size_t i = 0; i < al.actionCount(); ++i) order.push_back(Action{static_cast<uint8_t>(i)});
    return TieOrder(al, std::move(order));
}

TieOrder TieOrder::parse(const Alphabets& al, const std::string& commaSeparated) {
    std::vector<Action> order;
    size_t pos = 0;
    while (pos <= commaSeparated.size()) {
        size_t comma = commaSeparated.find(',', pos);
        std::string name = commaSeparated.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto a = al.actionByName(name);
        if (!a) throw SpecError("unknown action in tie order: '" + name + "'");
        order.push_back(*a);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return TieOrder(al, std::move(order));
}

namespace {

std::vector<Interval> actionEnclosures(Evaluator& ev, const ActionContext& ctx, const History& h,
                                       unsigned horizon) {
    std::vector<Interval> out;
    for (size_t ai = 0; ai < ctx.env->alphabets().actionCount(); ++ai) {
        History ha = h;
        ha.pushAction(Action{static_cast<uint8_t>(ai)});
        out.push_back(ev.evaluate(ha, horizon).enclosure);
    }
    return out;
}

// The unique action strictly above all more-preferred and weakly above all
// less-preferred ones, when that is provable from the enclosures.
std::optional<Action> decideArgmax(const ActionContext& ctx, const std::vector<Interval>& iv) {
    size_t n = iv.size();
    for (size_t ai = 0; ai < n; ++ai) {
        Action a{static_cast<uint8_t>(ai)};
        bool ok = true;
        for (size_t bi = 0; bi < n && ok; ++bi) {
            if (bi == ai) continue;
            Action b{static_cast<uint8_t>(bi)};
            const Rational& aLo = iv[ai].lo.value();
            const Rational& bHi = iv[bi].hi.value();
            if (ctx.tieOrder.prefers(b, a))
                ok = aLo > bHi;
            else
                ok = aLo >= bHi;
        }
        if (ok) return a;
    }
    return std::nullopt;
}

}  // namespace

Decision actExact(const ActionContext& ctx, const History& h) {
    if (h.pendingAction()) throw SpecError("cannot act: history already has a pending action");
    unsigned t = h.currentTime();
    if (ctx.discount.Gamma(t).isZero())
        return Decision{ctx.tieOrder.first(), Interval::point(Rational(0))};

    Evaluator ev(ctx.env, ctx.discount, ctx.variant);
    if (ctx.discount.finiteSupport()) {
        unsigned m = std::max(t, ctx.discount.supportEnd());
        std::vector<Interval> iv = actionEnclosures(ev, ctx, h, m);
        if (auto a = decideArgmax(ctx, iv)) return Decision{*a, iv[a->i]};
        throw UnresolvableTie("action values undecidable at exact horizon");  // unreachable for valid envs
    }
    for (unsigned k = 0; k <= ctx.kMax; ++k) {
        std::vector<Interval> iv = actionEnclosures(ev, ctx, h, t + k);
        if (auto a = decideArgmax(ctx, iv)) return Decision{*a, iv[a->i]};
        bool allExact = true;
        for (const Interval& i : iv) allExact = allExact && i.isPoint();
        if (allExact) break;  // nothing changes with more budget
    }
    throw UnresolvableTie("enclosures neither separate nor prove equal within budget k_max=" +
                          std::to_string(ctx.kMax));
}

namespace {

// Least grid point of spacing s strictly greater than x, clamped to >= 0.
Rational leastGridAbove(const Rational& x, const Rational& s) {
    if (x.sign() < 0) return Rational(0);
    Rational q = Rational((x / s).floor() + 1, mpz_class(1)) * s;
    return q;
}

}  // namespace

Decision actEps(const ActionContext& ctx, const History& h, const Rational& eps) {
    if (h.pendingAction()) throw SpecError("cannot act: history already has a pending action");
    if (eps.sign() <= 0 || !(eps.num() == 1))
        throw SpecError("eps must be 1/k for a natural k, got " + eps.str());
    unsigned t = h.currentTime();
    if (ctx.discount.Gamma(t).isZero())
        return Decision{ctx.tieOrder.first(), Interval::point(Rational(0))};

    unsigned m;
    if (ctx.discount.finiteSupport()) {
        m = std::max(t, ctx.discount.supportEnd());
    } else {
        m = ctx.discount.effectiveHorizon(t, eps);
        if (m < t) m = t;
        if (m - t > ctx.kMax)
            throw BudgetExhausted("effective horizon " + std::to_string(m) + " needs more than k_max=" +
                                  std::to_string(ctx.kMax) + " refinements");
    }

    Evaluator ev(ctx.env, ctx.discount, ctx.variant);
    std::vector<Interval> iv = actionEnclosures(ev, ctx, h, m);
    Rational spacing = eps / Rational(2);
    std::vector<Rational> grid;
    for (size_t ai = 0; ai < iv.size(); ++ai) {
        std::optional<Rational> w = iv[ai].width();
        if (!w || *w >= spacing)
            throw BudgetExhausted("enclosure width did not reach eps/2 at the effective horizon");
        Rational q = leastGridAbove(iv[ai].hi.value() - spacing, spacing);
        // Compatible with the whole enclosure: |q - v| < eps/2 for v inside.
        if (!(q < iv[ai].lo.value() + spacing))
            throw std::logic_error("grid point incompatible with enclosure");
        grid.push_back(q);
    }
    size_t best = 0;
    for (size_t ai = 1; ai < grid.size(); ++ai) {
        Action a{static_cast<uint8_t>(ai)};
        Action b{static_cast<uint8_t>(best)};
        if (grid[ai] > grid[best] || (grid[ai] == grid[best] && ctx.tieOrder.prefers(a, b))) best = ai;
    }
    return Decision{Action{static_cast<uint8_t>(best)}, iv[best]};
}

Decision actSchedule(const ActionContext& ctx, const History& h, const EpsSchedule& schedule) {
    Rational eps = schedule(h.currentTime());
    if (eps.sign() <= 0) throw SpecError("schedule produced a nonpositive eps");
    return actEps(ctx, h, eps);
}

EpsSchedule namedSchedule(const std::string& name) {
    if (name == "harmonic")
        return [](unsigned t) { return Rational(1, static_cast<long>(t) + 1); };
    if (name == "halving")
        return [](unsigned t) { return Rational::pow2(-static_cast<long>(t)); };
    throw SpecError("unknown schedule: '" + name + "' (known: harmonic, halving)");
}

PolicySpec PolicySpec::exactOptimal() {
    PolicySpec s;
    s.kind = Kind::ExactOptimal;
    return s;
}

PolicySpec PolicySpec::epsOptimal(Rational eps) {
    PolicySpec s;
    s.kind = Kind::EpsOptimal;
    s.eps = std::move(eps);
    return s;
}

PolicySpec PolicySpec::schedule(std::string name) {
    namedSchedule(name);  // validate eagerly
    PolicySpec s;
    s.kind = Kind::Schedule;
    s.scheduleName = std::move(name);
    return s;
}

PolicySpec PolicySpec::externalPolicy(PolicyFn fn) {
    if (!fn) throw SpecError("external policy must be callable");
    PolicySpec s;
    s.kind = Kind::External;
    s.external = std::move(fn);
    return s;
}

PolicySpec PolicySpec::parse(const std::string& str) {
    if (str == "exact") return exactOptimal();
    if (str.rfind("eps:", 0) == 0) return epsOptimal(Rational::parse(str.substr(4)));
    if (str.rfind("schedule:", 0) == 0) return schedule(str.substr(9));
    throw SpecError("unknown agent spec: '" + str + "' (expected exact, eps:FRACTION, or schedule:NAME)");
}

std::string PolicySpec::str() const {
    switch (kind) {
        case Kind::ExactOptimal: return "exact";
        case Kind::EpsOptimal: return "eps:" + eps.str();
        case Kind::Schedule: return "schedule:" + scheduleName;
        case Kind::External: return "external";
    }
    return "?";
}

Decision act(const PolicySpec& spec, const ActionContext& ctx, const History& h) {
    switch (spec.kind) {
        case PolicySpec::Kind::ExactOptimal:
            return actExact(ctx, h);
        case PolicySpec::Kind::EpsOptimal:
            return actEps(ctx, h, spec.eps);
        case PolicySpec::Kind::Schedule:
            return actSchedule(ctx, h, namedSchedule(spec.scheduleName));
        case PolicySpec::Kind::External: {
            // External policies carry no value estimate of their own; report
            // a one-step-lookahead enclosure of the chosen continuation.
            Action a = spec.external(h);
            unsigned t = h.currentTime();
            if (ctx.discount.Gamma(t).isZero()) return Decision{a, Interval::point(Rational(0))};
            Evaluator ev(ctx.env, ctx.discount, ctx.variant);
            History ha = h;
            ha.pushAction(a);
            return Decision{a, ev.evaluate(ha, t).enclosure};
        }
    }
    throw SpecError("unhandled policy kind");
}

}  // namespace grl
