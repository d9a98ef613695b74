#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace grl {

// Exit codes: 0 success, 1 validation failure or bad input, 2 unresolved
// tie / budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUnresolved = 2;

struct CheckOptions {
    std::optional<std::string> envPath;
    std::optional<std::string> classPath;
    unsigned depth = 4;
};

struct ValueOptions {
    std::optional<std::string> envPath;
    std::optional<std::string> classPath;
    std::string history;  // "action,obs:reward,action,..." (trailing action = pending)
    std::string variant = "recursive";
    std::string discount = "geometric:1/2";
    std::optional<unsigned> horizon;
    std::optional<std::string> eps;
    unsigned kMax = 64;
};

struct SimulateOptions {
    std::optional<std::string> envPath;
    std::optional<std::string> classPath;
    std::string agent = "exact";
    std::string variant = "recursive";
    std::string discount = "geometric:1/2";
    unsigned steps = 1;
    uint64_t seed = 0;
    unsigned kMax = 64;
    std::optional<std::string> tracePath;
    std::optional<std::string> tieOrder;
};

struct CompareProp41Options {
    std::string epsR = "1/4";
    std::string q = "1/2";
};

int runCheck(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int runValue(const ValueOptions& opt, std::ostream& out, std::ostream& err);
int runSimulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int runCompareProp41(const CompareProp41Options& opt, std::ostream& out, std::ostream& err);

}  // namespace grl
