#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grl/value.hpp"

namespace grl {

// Total preference order over the action alphabet; the first entry wins
// exact ties.
class TieOrder {
public:
    TieOrder(const Alphabets& al, std::vector<Action> order);
    // Alphabet order (first-listed action most preferred).
    static TieOrder alphabetical(const Alphabets& al);
    static TieOrder parse(const Alphabets& al, const std::string& commaSeparated);

    // True iff a is strictly preferred to b.
    bool prefers(Action a, Action b) const { return rank_[a.i] < rank_[b.i]; }
    Action first() const { return order_.front(); }
    const std::vector<Action>& order() const { return order_; }

private:
    std::vector<Action> order_;
    std::vector<size_t> rank_;
};

using EpsSchedule = std::function<Rational(unsigned)>;

struct ActionContext {
    EnvPtr env;
    Discount discount;
    TieOrder tieOrder;
    ValueVariant variant = ValueVariant::RecursiveW;
    unsigned kMax = kDefaultBudget;
};

struct Decision {
    Action action;
    // Enclosure of the optimal value of the chosen continuation, as
    // established while deciding.
    Interval qValue;
};

// Exact optimal action: the unique action strictly better than every more
// preferred one and weakly better than every less preferred one. Decidable
// outright when the action values are exact; otherwise enclosures are
// refined by deepening the horizon up to kMax extra steps, and
// UnresolvableTie is thrown when they can neither separate nor prove
// equality. Histories with Gamma_t = 0 are value-indifferent and yield the
// tie-order first action.
Decision actExact(const ActionContext& ctx, const History& h);

// Epsilon-optimal action via the eps/2 value grid: every action gets the
// least grid point compatible with its enclosure, and the tie-order-best
// action among the grid maxima is played. eps must be 1/k for a natural k.
// This guarantees V*(h) - V*(h, chosen action) < eps. Throws BudgetExhausted
// when enclosures cannot reach width eps/2 within the budget.
Decision actEps(const ActionContext& ctx, const History& h, const Rational& eps);

// actEps with the time-indexed tolerance eps(t).
Decision actSchedule(const ActionContext& ctx, const History& h, const EpsSchedule& schedule);

// Named epsilon schedules usable from run configurations: "harmonic" is
// 1/(t+1), "halving" is 2^-t.
EpsSchedule namedSchedule(const std::string& name);

// Action-selection rule: how an agent picks actions.
struct PolicySpec {
    enum class Kind { ExactOptimal, EpsOptimal, Schedule, External };
    Kind kind = Kind::ExactOptimal;
    Rational eps;               // EpsOptimal
    std::string scheduleName;   // Schedule
    PolicyFn external;          // External

    static PolicySpec exactOptimal();
    static PolicySpec epsOptimal(Rational eps);
    static PolicySpec schedule(std::string name);
    static PolicySpec externalPolicy(PolicyFn fn);
    // "exact", "eps:1/8", or "schedule:harmonic".
    static PolicySpec parse(const std::string& s);

    std::string str() const;
};

// Dispatches a PolicySpec against a context; external policies get a point
// enclosure query for trace reporting.
Decision act(const PolicySpec& spec, const ActionContext& ctx, const History& h);

}  // namespace grl
