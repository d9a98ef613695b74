#include "grl/specfile.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "grl/errors.hpp"

namespace grl {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitOn(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

struct KvLines {
    // Preserves duplicate keys (row=, member=) in order.
    std::vector<std::pair<std::string, std::string>> entries;
    std::string source;

    std::optional<std::string> get(const std::string& key) const {
        std::optional<std::string> found;
        for (const auto& [k, v] : entries)
            if (k == key) {
                if (found) throw SpecError(source + ": duplicate key '" + key + "'");
                found = v;
            }
        return found;
    }
    std::string require(const std::string& key) const {
        auto v = get(key);
        if (!v) throw SpecError(source + ": missing key '" + key + "'");
        return *v;
    }
    std::vector<std::string> all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }
};

KvLines parseLines(const std::string& text, const std::string& source) {
    KvLines kv;
    kv.source = source;
    std::istringstream in(text);
    std::string line;
    unsigned lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw SpecError(source + ":" + std::to_string(lineNo) + ": expected key=value");
        kv.entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return kv;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::shared_ptr<const SRelation> parseS(const std::string& s) {
    if (s == "true") return SRelation::alwaysTrue();
    if (s.rfind("falseAt:", 0) == 0) return SRelation::falseAt(static_cast<unsigned>(std::stoul(s.substr(8))));
    if (s.rfind("foundAt:", 0) == 0) return SRelation::foundAt(static_cast<unsigned>(std::stoul(s.substr(8))));
    throw SpecError("unknown S relation: '" + s + "' (expected true, falseAt:N, foundAt:K)");
}

EnvPtr buildTable(const KvLines& kv) {
    std::vector<std::string> actionNames = splitOn(kv.require("actions"), ',');
    std::vector<PerceptInfo> percepts;
    for (const std::string& tok : splitOn(kv.require("percepts"), ',')) {
        size_t colon = tok.rfind(':');
        if (colon == std::string::npos) throw SpecError(kv.source + ": percept needs obs:reward, got '" + tok + "'");
        percepts.push_back({tok.substr(0, colon), Rational::parse(tok.substr(colon + 1))});
    }
    Alphabets al(actionNames, percepts);
    unsigned depth = static_cast<unsigned>(std::stoul(kv.require("depth")));

    std::string tailStr = kv.require("tail");
    TableEnvironment::TailRule tail;
    if (tailStr == "end")
        tail = TableEnvironment::TailRule::End;
    else if (tailStr == "repeat-last")
        tail = TableEnvironment::TailRule::RepeatLast;
    else if (tailStr == "uniform")
        tail = TableEnvironment::TailRule::Uniform;
    else
        throw SpecError(kv.source + ": unknown tail rule '" + tailStr + "'");

    std::map<TableEnvironment::Key, Rational> rows;
    for (const std::string& row : kv.all("row")) {
        std::vector<std::string> parts = splitOn(row, ';');
        if (parts.size() != 3) throw SpecError(kv.source + ": row needs ACTIONS;PERCEPTS;FRACTION");
        TableEnvironment::Key key;
        for (const std::string& an : splitOn(parts[0], ',')) {
            auto a = al.actionByName(an);
            if (!a) throw SpecError(kv.source + ": unknown action '" + an + "' in row");
            key.first.push_back(a->i);
        }
        for (const std::string& pn : splitOn(parts[1], ',')) {
            size_t colon = pn.rfind(':');
            if (colon == std::string::npos) throw SpecError(kv.source + ": percept needs obs:reward");
            auto p = al.perceptBy(pn.substr(0, colon), Rational::parse(pn.substr(colon + 1)));
            if (!p) throw SpecError(kv.source + ": unknown percept '" + pn + "' in row");
            key.second.push_back(p->i);
        }
        if (rows.count(key)) throw SpecError(kv.source + ": duplicate row");
        rows.emplace(std::move(key), Rational::parse(parts[2]));
    }

    Rational root(1);
    if (auto r = kv.get("root")) root = Rational::parse(*r);
    bool measure = false;
    if (auto m = kv.get("measure")) measure = (*m == "true");
    std::string name = kv.get("name").value_or("table");
    return std::make_shared<TableEnvironment>(name, al, depth, tail, std::move(rows), root, measure);
}

}  // namespace

EnvSpecFile EnvSpecFile::parseFile(const std::string& path) {
    return parseText(readFile(path), path);
}

EnvSpecFile EnvSpecFile::parseText(const std::string& text, const std::string& sourceName) {
    KvLines kv = parseLines(text, sourceName);
    EnvSpecFile spec;
    spec.source_ = sourceName;
    spec.kind_ = kv.require("kind");

    if (spec.kind_ == "prop1") {
        Rational eps = Rational::parse(kv.require("eps_r"));
        spec.factory_ = [eps](std::optional<TargetPolicy>) { return makeProp1Env(eps); };
    } else if (spec.kind_ == "adversarial") {
        std::string target = kv.require("target");
        std::vector<std::string> actionNames = {"alpha", "beta"};
        if (auto a = kv.get("actions")) actionNames = splitOn(*a, ',');
        if (target == "self") {
            spec.selfTarget_ = true;
            spec.factory_ = [actionNames, src = sourceName](std::optional<TargetPolicy> self) -> EnvPtr {
                if (!self)
                    throw SpecError(src + ": target=self needs the running agent's decision function");
                return makeAdversarialEnv(*self, actionNames);
            };
        } else if (target.rfind("const:", 0) == 0) {
            std::string actionName = target.substr(6);
            Alphabets al(actionNames, {{"0", Rational(0)}, {"0", Rational(1)}});
            auto a = al.actionByName(actionName);
            if (!a) throw SpecError(sourceName + ": unknown target action '" + actionName + "'");
            Action fixed = *a;
            spec.factory_ = [fixed, actionNames](std::optional<TargetPolicy>) {
                return makeAdversarialEnv([fixed](const History&) { return fixed; }, actionNames);
            };
        } else {
            throw SpecError(sourceName + ": unknown target '" + target + "' (expected const:ACTION or self)");
        }
    } else if (spec.kind_ == "rho") {
        unsigned i = static_cast<unsigned>(std::stoul(kv.require("i")));
        auto s = parseS(kv.require("s"));
        unsigned bound = kDefaultBudget;
        if (auto b = kv.get("searchBound")) bound = static_cast<unsigned>(std::stoul(*b));
        spec.factory_ = [i, s, bound](std::optional<TargetPolicy>) { return makeRhoFamilyEnv(i, s, bound); };
    } else if (spec.kind_ == "table") {
        EnvPtr env = buildTable(kv);
        spec.factory_ = [env](std::optional<TargetPolicy>) { return env; };
    } else {
        throw SpecError(sourceName + ": unknown kind '" + spec.kind_ + "'");
    }
    return spec;
}

EnvPtr EnvSpecFile::build(std::optional<TargetPolicy> self) const {
    return factory_(std::move(self));
}

WeightedClass parseClassSpecFile(const std::string& path) {
    KvLines kv = parseLines(readFile(path), path);
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    std::vector<WeightedMember> members;
    for (const std::string& m : kv.all("member")) {
        std::vector<std::string> parts = splitOn(m, ';');
        if (parts.size() != 2) throw SpecError(path + ": member needs PATH;WEIGHT");
        std::filesystem::path envPath = std::filesystem::path(parts[0]);
        if (envPath.is_relative()) envPath = dir / envPath;
        EnvSpecFile envSpec = EnvSpecFile::parseFile(envPath.string());
        if (envSpec.wantsSelfTarget())
            throw SpecError(path + ": class members cannot use target=self");
        members.push_back({envSpec.build(), Rational::parse(parts[1])});
    }
    if (members.empty()) throw SpecError(path + ": class file has no members");
    return WeightedClass(std::move(members));
}

}  // namespace grl
