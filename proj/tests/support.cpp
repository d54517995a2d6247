#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aopl::test {

std::string data_path(const std::string& name) { return std::string(AOPL_TEST_DATA) + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

[[noreturn]] void fail(const std::vector<Diagnostic>& diags) {
    std::string msg;
    for (const auto& d : diags) msg += format_diagnostic(d) + "\n";
    throw std::runtime_error(msg);
}

}  // namespace

ParsedUnit parse_text(const std::string& text, const std::string& name) {
    ParseResult r = parse(SourceFile(name, text));
    if (!r.ok()) fail(r.diagnostics);
    return std::move(*r.unit);
}

GroundPolicy ground_unit(const ParsedUnit& unit) {
    auto diags = validate(unit.policy, unit.domain);
    if (has_errors(diags)) fail(diags);
    GroundingResult g = ground(unit.policy, unit.domain);
    if (!g.ok()) fail(g.diagnostics);
    return std::move(*g.policy);
}

GroundPolicy ground_text(const std::string& domain, const std::string& policy) {
    ParsedUnit unit = parse_text(domain, "test.dom");
    merge(unit, parse_text(policy, "test.aopl"));
    return ground_unit(unit);
}

GroundPolicy load_mission(const std::string& policy_file) {
    return ground_text(read_file(data_path("mission.dom")), read_file(data_path(policy_file)));
}

WorldState make_state(const GroundDomain& domain, const std::vector<std::string>& true_atoms) {
    WorldState s(std::vector<bool>(domain.state_atoms.size(), false));
    for (const auto& a : true_atoms) {
        auto atom = parse_atom(a);
        if (!atom) throw std::runtime_error("bad atom " + a);
        auto id = domain.find_atom(*atom);
        if (!id) throw std::runtime_error("unknown atom " + a);
        s.set(*id, true);
    }
    return s;
}

std::vector<WorldState> all_states(const GroundDomain& domain) {
    const std::size_t n = domain.state_atoms.size();
    std::vector<WorldState> out;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        std::vector<bool> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = (i >> (n - 1 - k)) & 1;
        out.emplace_back(std::move(v));
    }
    return out;
}

ActionId action_id(const GroundDomain& domain, const std::string& action) {
    auto atom = parse_atom(action);
    auto id = atom ? domain.find_action(*atom) : std::nullopt;
    if (!id) throw std::runtime_error("unknown action " + action);
    return *id;
}

RuleId rule_id(const GroundPolicy& policy, const std::string& label) {
    auto id = policy.find_rule(label);
    if (!id) throw std::runtime_error("unknown rule " + label);
    return *id;
}

GroundHead head(const GroundDomain& domain, HeadShape shape, const std::string& action) {
    return {action_id(domain, action), shape};
}

ParsedUnit random_policy(std::mt19937& rng, const RandomPolicyOptions& o) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    ParsedUnit u;
    const int n_atoms = pick(1, o.max_atoms);
    const int n_actions = pick(1, o.max_actions);
    for (int i = 0; i < n_atoms; ++i) u.domain.predicates.push_back({"f" + std::to_string(i), {}, PredicateKind::Fluent, {}});
    for (int i = 0; i < n_actions; ++i) u.domain.predicates.push_back({"a" + std::to_string(i), {}, PredicateKind::Action, {}});

    const int n_rules = pick(1, o.max_rules);
    std::vector<std::string> defeasible;
    for (int i = 0; i < n_rules; ++i) {
        PolicyRule r;
        r.label = "r" + std::to_string(i);
        r.kind = pick(0, 99) < 35 ? RuleKind::Strict : RuleKind::Defeasible;
        HeadLiteral h;
        // Authorization heads half the time; obligations spread over the other four shapes.
        const int shape = pick(0, 99) < 50 ? pick(0, 1) : pick(2, 5);
        h.modality = shape < 2 ? Modality::Permitted : Modality::Obligation;
        h.negated = shape == 1 || shape >= 4;
        h.target.negative = shape == 3 || shape == 5;
        h.target.action.predicate = "a" + std::to_string(pick(0, n_actions - 1));
        r.head = h;
        const int body = pick(0, std::min(2, n_atoms));
        std::vector<int> used;
        while (static_cast<int>(used.size()) < body) {
            int a = pick(0, n_atoms - 1);
            if (std::find(used.begin(), used.end(), a) != used.end()) continue;
            used.push_back(a);
            r.condition.push_back({{"f" + std::to_string(a), {}}, pick(0, 1) == 1});
        }
        if (pick(0, 1)) r.text = "statement " + std::to_string(i);
        if (r.kind == RuleKind::Defeasible) defeasible.push_back(r.label);
        u.policy.rules.push_back(std::move(r));
    }
    const int n_prefs = defeasible.size() >= 2 ? pick(0, o.max_preferences) : 0;
    std::vector<std::pair<std::string, std::string>> seen;
    for (int i = 0; i < n_prefs; ++i) {
        const std::string a = defeasible[pick(0, static_cast<int>(defeasible.size()) - 1)];
        const std::string b = defeasible[pick(0, static_cast<int>(defeasible.size()) - 1)];
        if (a == b || std::find(seen.begin(), seen.end(), std::pair{a, b}) != seen.end()) continue;
        seen.emplace_back(a, b);
        PolicyRule p;
        p.label = "p" + std::to_string(i);
        p.kind = RuleKind::Preference;
        p.preferred = a;
        p.dispreferred = b;
        u.policy.rules.push_back(std::move(p));
    }
    return u;
}

std::vector<GroundPolicy> random_corpus(std::size_t count, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<GroundPolicy> out;
    while (out.size() < count) out.push_back(ground_unit(random_policy(rng)));
    return out;
}

}  // namespace aopl::test
