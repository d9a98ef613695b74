#pragma once

#include <optional>
#include <string>

#include "grl/corpus.hpp"
#include "grl/environment.hpp"
#include "grl/mixture.hpp"

namespace grl {

// A parsed environment spec file (line-oriented key=value). Kinds:
//
//   kind=prop1         eps_r=1/4
//   kind=adversarial   target=const:ACTION | self   [actions=a,b]
//   kind=rho           i=NAT  s=true|falseAt:NAT|foundAt:NAT  [searchBound=NAT]
//   kind=table         actions=a,b  percepts=obs:reward,...  depth=NAT
//                      [root=FRACTION]  [measure=true|false]  tail=end|repeat-last|uniform
//                      row=ACTIONS;PERCEPTS;FRACTION   (sequences comma-separated)
//
// All fractions are exact "num/den" strings; no floating point appears in
// files. Lines starting with '#' and blank lines are ignored.
class EnvSpecFile {
public:
    static EnvSpecFile parseFile(const std::string& path);
    static EnvSpecFile parseText(const std::string& text, const std::string& sourceName = "<text>");

    // Adversarial specs may name the running agent as their target; such
    // specs need the agent's decision function to build.
    bool wantsSelfTarget() const { return selfTarget_; }

    EnvPtr build(std::optional<TargetPolicy> self = std::nullopt) const;

private:
    std::string source_;
    std::string kind_;
    bool selfTarget_ = false;
    std::function<EnvPtr(std::optional<TargetPolicy>)> factory_;
};

// Class spec file: one "member=PATH;WEIGHT" line per member, paths relative
// to the class file's directory. Weights are validated at load.
WeightedClass parseClassSpecFile(const std::string& path);

}  // namespace grl
