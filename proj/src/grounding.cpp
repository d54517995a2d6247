#include "aopl/grounding.hpp"

#include "aopl/parser.hpp"

#include <algorithm>
#include <unordered_map>

namespace aopl {

HeadShape opposite(HeadShape shape) {
    switch (shape) {
        case HeadShape::Permitted: return HeadShape::NotPermitted;
        case HeadShape::NotPermitted: return HeadShape::Permitted;
        case HeadShape::Obl: return HeadShape::NotObl;
        case HeadShape::NotObl: return HeadShape::Obl;
        case HeadShape::OblNeg: return HeadShape::NotOblNeg;
        case HeadShape::NotOblNeg: return HeadShape::OblNeg;
    }
    return shape;
}

bool is_authorization(HeadShape shape) {
    return shape == HeadShape::Permitted || shape == HeadShape::NotPermitted;
}

void GroundDomain::add_state_atom(Atom atom, PredicateKind kind) {
    atom_index_.emplace(atom, static_cast<AtomId>(state_atoms.size()));
    state_atoms.push_back(std::move(atom));
    state_atom_kinds.push_back(kind);
}

void GroundDomain::add_action(Atom atom) {
    action_index_.emplace(atom, static_cast<ActionId>(actions.size()));
    actions.push_back(std::move(atom));
}

std::optional<AtomId> GroundDomain::find_atom(const Atom& atom) const {
    auto it = atom_index_.find(atom);
    if (it == atom_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> GroundDomain::find_action(const Atom& atom) const {
    auto it = action_index_.find(atom);
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<GroundLiteral> GroundDomain::resolve(const Literal& lit) const {
    auto id = find_atom(lit.atom);
    if (!id) return std::nullopt;
    return GroundLiteral{*id, lit.negative};
}

std::string GroundDomain::literal_str(GroundLiteral lit) const {
    return (lit.negative ? "-" : "") + state_atoms.at(lit.atom).str();
}

std::string GroundDomain::head_str(GroundHead head) const {
    const std::string e = actions.at(head.action).str();
    switch (head.shape) {
        case HeadShape::Permitted: return "permitted(" + e + ")";
        case HeadShape::NotPermitted: return "!permitted(" + e + ")";
        case HeadShape::Obl: return "obl(" + e + ")";
        case HeadShape::OblNeg: return "obl(-" + e + ")";
        case HeadShape::NotObl: return "!obl(" + e + ")";
        case HeadShape::NotOblNeg: return "!obl(-" + e + ")";
    }
    return e;
}

std::vector<GroundHead> GroundPolicy::head_universe() const {
    std::vector<GroundHead> out;
    out.reserve(head_universe_size());
    for (std::size_t i = 0; i < head_universe_size(); ++i) out.push_back(GroundHead::from_index(i));
    return out;
}

std::optional<RuleId> GroundPolicy::find_rule(std::string_view label) const {
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].label == label) return static_cast<RuleId>(i);
    return std::nullopt;
}

std::string GroundPolicy::describe(RuleId rule) const {
    const auto& r = rules.at(rule);
    return r.text ? *r.text : r.source;
}

std::string ground_label(const std::string& family, const std::vector<std::string>& args) {
    if (args.empty()) return family;
    std::string out = family + '[';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ']';
}

std::vector<std::vector<std::string>> instantiations(const std::vector<TypedVariable>& vars, const DomainSpec& domain) {
    std::vector<const std::vector<std::string>*> domains;
    for (const auto& v : vars) {
        const SortDecl* sort = domain.find_sort(v.sort);
        if (!sort || sort->members.empty()) return {};
        domains.push_back(&sort->members);
    }
    std::vector<std::vector<std::string>> out;
    std::vector<std::size_t> odometer(vars.size(), 0);
    while (true) {
        std::vector<std::string> inst;
        inst.reserve(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) inst.push_back((*domains[i])[odometer[i]]);
        out.push_back(std::move(inst));
        std::size_t k = vars.size();
        while (k > 0) {
            --k;
            if (++odometer[k] < domains[k]->size()) break;
            odometer[k] = 0;
            if (k == 0) return out;
        }
        if (vars.empty()) return out;
    }
}

namespace {

Atom substitute(const Atom& atom, const std::vector<TypedVariable>& vars, const std::vector<std::string>& values) {
    Atom out = atom;
    for (auto& arg : out.args) {
        if (!is_variable(arg)) continue;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == arg) {
                arg = values[i];
                break;
            }
    }
    return out;
}

HeadShape shape_of(const HeadLiteral& h) {
    if (h.modality == Modality::Permitted) return h.negated ? HeadShape::NotPermitted : HeadShape::Permitted;
    if (h.target.negative) return h.negated ? HeadShape::NotOblNeg : HeadShape::OblNeg;
    return h.negated ? HeadShape::NotObl : HeadShape::Obl;
}

class Grounder {
public:
    Grounder(const Policy& policy, const DomainSpec& domain) : policy_(policy), domain_(domain) {}

    GroundingResult ground_domain_only() {
        GroundPolicy gp;
        build_universe(gp.domain);
        ground_constraints(gp.domain);
        return finish(std::move(gp));
    }

    GroundingResult run() {
        GroundPolicy gp;
        build_universe(gp.domain);
        ground_constraints(gp.domain);
        for (const auto& r : policy_.rules)
            if (r.kind != RuleKind::Preference) ground_rule(r, gp);
        for (const auto& r : policy_.rules)
            if (r.kind == RuleKind::Preference) ground_preference(r, gp);
        return finish(std::move(gp));
    }

private:
    GroundingResult finish(GroundPolicy gp) {
        GroundingResult result;
        result.diagnostics = std::move(diags_);
        if (!has_errors(result.diagnostics)) result.policy = std::move(gp);
        return result;
    }

    void error(const SourcePos& pos, std::string msg, std::string label = {}) {
        diags_.push_back(Diagnostic{Severity::Error, pos, std::move(msg), std::move(label)});
    }

    void build_universe(GroundDomain& gd) {
        for (const auto& p : domain_.predicates) {
            std::vector<TypedVariable> positional;
            for (std::size_t i = 0; i < p.arg_sorts.size(); ++i)
                positional.push_back({"_" + std::to_string(i), p.arg_sorts[i]});
            auto insts = instantiations(positional, domain_);
            for (auto& args : insts) {
                Atom a{p.name, std::move(args)};
                if (p.kind == PredicateKind::Action)
                    gd.add_action(std::move(a));
                else
                    gd.add_state_atom(std::move(a), p.kind);
            }
        }
    }

    // Ground body literals; sort atoms are satisfied by construction and dropped.
    bool ground_body(const std::vector<Literal>& lits, const std::vector<TypedVariable>& vars,
                     const std::vector<std::string>& values, const GroundDomain& gd, std::vector<GroundLiteral>& body,
                     std::vector<std::string>* patterns, const SourcePos& pos, const std::string& label) {
        for (const auto& lit : lits) {
            Atom a = substitute(lit.atom, vars, values);
            if (const SortDecl* sort = domain_.find_sort(a.predicate)) {
                bool member = a.args.size() == 1 &&
                              std::find(sort->members.begin(), sort->members.end(), a.args[0]) != sort->members.end();
                if (!member || lit.negative) {
                    error(pos, "sort atom " + lit.str() + " cannot be grounded", label);
                    return false;
                }
                continue;
            }
            auto g = gd.resolve(Literal{a, lit.negative});
            if (!g) {
                error(pos, "unknown atom " + a.str(), label);
                return false;
            }
            if (std::find(body.begin(), body.end(), *g) != body.end()) continue;
            body.push_back(*g);
            if (patterns) patterns->push_back(lit.str());
        }
        return true;
    }

    std::vector<TypedVariable> typed(const std::vector<const Atom*>& atoms, const std::vector<VarDecl>& where,
                                     const SourcePos& pos, const std::string& label) {
        auto vars = type_variables(atoms, where, domain_);
        for (const auto& v : vars) {
            const SortDecl* sort = domain_.find_sort(v.sort);
            if (!sort || sort->members.empty()) {
                error(pos, "empty grounding: sort " + v.sort + " has no constants", label);
                return {};
            }
        }
        return vars;
    }

    void ground_constraints(GroundDomain& gd) {
        for (const auto& c : domain_.state_constraints) {
            std::vector<const Atom*> atoms;
            if (c.head) atoms.push_back(&c.head->atom);
            for (const auto& l : c.body) atoms.push_back(&l.atom);
            std::size_t before = diags_.size();
            auto vars = typed(atoms, c.where, c.pos, {});
            if (diags_.size() != before) continue;
            for (const auto& values : instantiations(vars, domain_)) {
                GroundStateConstraint g;
                if (c.head) {
                    auto h = gd.resolve(Literal{substitute(c.head->atom, vars, values), c.head->negative});
                    if (!h) {
                        error(c.pos, "unknown atom in constraint head");
                        break;
                    }
                    g.head = *h;
                }
                if (!ground_body(c.body, vars, values, gd, g.body, nullptr, c.pos, {})) break;
                gd.state_constraints.push_back(std::move(g));
            }
        }
        for (const auto& c : domain_.exec_constraints) {
            std::vector<const Atom*> atoms{&c.action};
            for (const auto& l : c.body) atoms.push_back(&l.atom);
            std::size_t before = diags_.size();
            auto vars = typed(atoms, c.where, c.pos, {});
            if (diags_.size() != before) continue;
            for (const auto& values : instantiations(vars, domain_)) {
                GroundExecConstraint g;
                auto action = gd.find_action(substitute(c.action, vars, values));
                if (!action) {
                    error(c.pos, "unknown action " + c.action.str());
                    break;
                }
                g.action = *action;
                if (!ground_body(c.body, vars, values, gd, g.body, nullptr, c.pos, {})) break;
                gd.exec_constraints.push_back(std::move(g));
            }
        }
    }

    void ground_rule(const PolicyRule& r, GroundPolicy& gp) {
        if (!r.head) {
            error(r.pos, "rule has no head", r.label);
            return;
        }
        auto vars = rule_variables(r, policy_, domain_);
        for (const auto& v : vars) {
            const SortDecl* sort = domain_.find_sort(v.sort);
            if (!sort || sort->members.empty()) {
                error(r.pos, "empty grounding: sort " + v.sort + " has no constants", r.label);
                return;
            }
        }
        if (vars.size() != r.variables().size()) {
            error(r.pos, "rule has untyped variables", r.label);
            return;
        }
        for (auto& values : instantiations(vars, domain_)) {
            GroundRule g;
            g.family = r.label;
            g.kind = r.kind;
            g.text = r.text;
            g.source = print_rule(r);
            auto action = gp.domain.find_action(substitute(r.head->target.action, vars, values));
            if (!action) {
                error(r.pos, "unknown action " + r.head->target.action.str(), r.label);
                return;
            }
            g.head = GroundHead{*action, shape_of(*r.head)};
            if (!ground_body(r.condition, vars, values, gp.domain, g.body, &g.body_patterns, r.pos, r.label)) return;
            g.args = std::move(values);
            g.label = ground_label(g.family, g.args);
            labels_.emplace(g.label, static_cast<RuleId>(gp.rules.size()));
            gp.rules.push_back(std::move(g));
        }
    }

    void ground_preference(const PolicyRule& r, GroundPolicy& gp) {
        const PolicyRule* hi = policy_.find(r.preferred);
        const PolicyRule* lo = policy_.find(r.dispreferred);
        if (!hi || !lo) {
            error(r.pos, "preference refers to an unknown rule", r.label);
            return;
        }
        auto vars = rule_variables(r, policy_, domain_);
        auto hi_vars = rule_variables(*hi, policy_, domain_);
        auto lo_vars = rule_variables(*lo, policy_, domain_);
        auto project = [&](const std::vector<TypedVariable>& sub, const std::vector<std::string>& values) {
            std::vector<std::string> out;
            for (const auto& v : sub)
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i].name == v.name) out.push_back(values[i]);
            return out;
        };
        for (auto& values : instantiations(vars, domain_)) {
            auto hi_rule = labels_.find(ground_label(hi->label, project(hi_vars, values)));
            auto lo_rule = labels_.find(ground_label(lo->label, project(lo_vars, values)));
            if (hi_rule == labels_.end() || lo_rule == labels_.end()) {
                error(r.pos, "preference instance refers to a missing rule instance", r.label);
                return;
            }
            GroundRule g;
            g.family = r.label;
            g.kind = RuleKind::Preference;
            g.text = r.text;
            g.source = print_rule(r);
            g.preferred = hi_rule->second;
            g.dispreferred = lo_rule->second;
            g.args = std::move(values);
            g.label = ground_label(g.family, g.args);
            gp.rules.push_back(std::move(g));
        }
    }

    const Policy& policy_;
    const DomainSpec& domain_;
    std::vector<Diagnostic> diags_;
    std::unordered_map<std::string, RuleId> labels_;
};

}  // namespace

GroundingResult ground_domain(const DomainSpec& domain) {
    Policy empty;
    return Grounder(empty, domain).ground_domain_only();
}

GroundingResult ground(const Policy& policy, const DomainSpec& domain) { return Grounder(policy, domain).run(); }

}  // namespace aopl
