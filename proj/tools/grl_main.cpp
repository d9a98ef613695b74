#include <CLI11.hpp>
#include <iostream>

#include "grl/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact desk-scale laboratory for general reinforcement learning over semimeasure environments"};
    app.require_subcommand(1);

    grl::CheckOptions checkOpt;
    CLI::App* check = app.add_subcommand("check", "Validate an environment's semimeasure axioms");
    check->add_option("--env", checkOpt.envPath, "environment spec file");
    check->add_option("--class", checkOpt.classPath, "class spec file (checks the mixture)");
    check->add_option("--depth", checkOpt.depth, "enumeration depth (default 4)");

    grl::ValueOptions valueOpt;
    CLI::App* value = app.add_subcommand("value", "Evaluate optimal value at a history");
    value->add_option("--env", valueOpt.envPath, "environment spec file");
    value->add_option("--class", valueOpt.classPath, "class spec file (evaluates the mixture)");
    value->add_option("--history", valueOpt.history, "history, e.g. alpha,0:1,beta (trailing action = pending)");
    value->add_option("--variant", valueOpt.variant, "iterative | recursive (default recursive)");
    value->add_option("--discount", valueOpt.discount, "geometric:FRACTION | lt:NAT (default geometric:1/2)");
    value->add_option("--horizon", valueOpt.horizon, "absolute truncation horizon (overrides --eps)");
    value->add_option("--eps", valueOpt.eps, "pick the horizon by the effective-horizon rule");
    value->add_option("--kmax", valueOpt.kMax, "refinement budget (default 64)");

    grl::SimulateOptions simOpt;
    CLI::App* sim = app.add_subcommand("simulate", "Run a seeded agent-environment interaction");
    sim->add_option("--env", simOpt.envPath, "environment spec file");
    sim->add_option("--class", simOpt.classPath, "class spec file (interacts with the mixture)");
    sim->add_option("--agent", simOpt.agent, "exact | eps:FRACTION | schedule:NAME (default exact)");
    sim->add_option("--variant", simOpt.variant, "iterative | recursive (default recursive)");
    sim->add_option("--discount", simOpt.discount, "geometric:FRACTION | lt:NAT (default geometric:1/2)");
    sim->add_option("--steps", simOpt.steps, "number of interaction steps (default 1)");
    sim->add_option("--seed", simOpt.seed, "sampler seed (default 0)");
    sim->add_option("--kmax", simOpt.kMax, "refinement budget (default 64)");
    sim->add_option("--trace", simOpt.tracePath, "write the trace to this file");
    sim->add_option("--tie-order", simOpt.tieOrder, "action preference order, e.g. beta,alpha");

    grl::CompareProp41Options cmpOpt;
    CLI::App* cmp = app.add_subcommand(
        "compare-prop41", "Compare the two value recursions on the ending environment");
    cmp->add_option("--eps-r", cmpOpt.epsR, "the small reward (default 1/4)");
    cmp->add_option("--q", cmpOpt.q, "geometric discount ratio (default 1/2)");

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return grl::runCheck(checkOpt, std::cout, std::cerr);
    if (value->parsed()) return grl::runValue(valueOpt, std::cout, std::cerr);
    if (sim->parsed()) return grl::runSimulate(simOpt, std::cout, std::cerr);
    if (cmp->parsed()) return grl::runCompareProp41(cmpOpt, std::cout, std::cerr);
    return 1;
}
