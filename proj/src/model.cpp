#include "aopl/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace aopl {

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    if (!d.pos.file.empty()) os << d.pos.file << ':';
    if (d.pos.valid()) os << d.pos.line << ':' << d.pos.column << ':';
    if (!d.pos.file.empty() || d.pos.valid()) os << ' ';
    os << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message;
    if (!d.rule_label.empty()) os << " [" << d.rule_label << ']';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) { return os << format_diagnostic(d); }

bool is_variable(std::string_view term) {
    return !term.empty() && (std::isupper(static_cast<unsigned char>(term.front())) || term.front() == '_');
}

std::string_view to_string(PredicateKind kind) {
    switch (kind) {
        case PredicateKind::Static: return "static";
        case PredicateKind::Fluent: return "fluent";
        case PredicateKind::Action: return "action";
    }
    return "?";
}

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::Strict: return "strict";
        case RuleKind::Defeasible: return "defeasible";
        case RuleKind::Preference: return "prefer";
    }
    return "?";
}

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const std::string& a) { return is_variable(a); });
}

std::string Atom::str() const {
    if (args.empty()) return predicate;
    std::string out = predicate + '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ')';
}

std::string Literal::str() const { return (negative ? "-" : "") + atom.str(); }

std::string Happening::str() const { return (negative ? "-" : "") + action.str(); }

std::string HeadLiteral::str() const {
    std::string inner = modality == Modality::Permitted ? "permitted(" + target.action.str() + ')'
                                                        : "obl(" + target.str() + ')';
    return negated ? '!' + inner : inner;
}

std::vector<std::string> PolicyRule::variables() const {
    std::vector<std::string> vars;
    auto note = [&](const Atom& a) {
        for (const auto& arg : a.args)
            if (is_variable(arg) && std::find(vars.begin(), vars.end(), arg) == vars.end()) vars.push_back(arg);
    };
    if (head) note(head->target.action);
    for (const auto& lit : condition) note(lit.atom);
    for (const auto& w : where)
        if (std::find(vars.begin(), vars.end(), w.variable) == vars.end()) vars.push_back(w.variable);
    return vars;
}

const PolicyRule* Policy::find(std::string_view label) const {
    for (const auto& r : rules)
        if (r.label == label) return &r;
    return nullptr;
}

const SortDecl* DomainSpec::find_sort(std::string_view name) const {
    for (const auto& s : sorts)
        if (s.name == name) return &s;
    return nullptr;
}

const PredicateDecl* DomainSpec::find_predicate(std::string_view name) const {
    for (const auto& p : predicates)
        if (p.name == name) return &p;
    return nullptr;
}

bool is_reserved_name(std::string_view name) {
    static constexpr std::array<std::string_view, 19> reserved = {
        "permitted", "obl",  "prefer", "holds", "ab",   "b",   "neg",  "rule",        "type", "text",
        "head",      "body", "mbr",    "opp",   "not",  "if",  "where", "normally", "strict"};
    return std::find(reserved.begin(), reserved.end(), name) != reserved.end();
}

namespace {

Diagnostic error(const SourcePos& pos, std::string message, std::string label = {}) {
    return Diagnostic{Severity::Error, pos, std::move(message), std::move(label)};
}

}  // namespace

std::vector<TypedVariable> type_variables(const std::vector<const Atom*>& atoms, const std::vector<VarDecl>& where,
                                          const DomainSpec& domain, std::vector<Diagnostic>* diagnostics,
                                          const std::string& label) {
    std::vector<TypedVariable> out;
    std::set<std::string> conflicted;
    auto report = [&](const SourcePos& pos, std::string msg) {
        if (diagnostics) diagnostics->push_back(error(pos, std::move(msg), label));
    };
    auto assign = [&](const std::string& var, const std::string& sort, const SourcePos& pos) {
        auto it = std::find_if(out.begin(), out.end(), [&](const TypedVariable& t) { return t.name == var; });
        if (it == out.end()) {
            out.push_back({var, sort});
        } else if (it->sort != sort && !conflicted.count(var)) {
            conflicted.insert(var);
            report(pos, "variable " + var + " has conflicting sorts " + it->sort + " and " + sort);
        }
    };
    for (const Atom* atom : atoms) {
        if (domain.find_sort(atom->predicate)) {
            if (atom->args.size() == 1 && is_variable(atom->args[0])) assign(atom->args[0], atom->predicate, {});
            continue;
        }
        const PredicateDecl* decl = domain.find_predicate(atom->predicate);
        if (!decl || decl->arg_sorts.size() != atom->args.size()) continue;
        for (std::size_t i = 0; i < atom->args.size(); ++i)
            if (is_variable(atom->args[i])) assign(atom->args[i], decl->arg_sorts[i], {});
    }
    for (const auto& w : where) {
        if (!domain.find_sort(w.sort)) continue;  // reported by the caller
        assign(w.variable, w.sort, w.pos);
    }
    std::erase_if(out, [&](const TypedVariable& t) { return conflicted.count(t.name) > 0; });
    return out;
}

std::vector<TypedVariable> rule_variables(const PolicyRule& rule, const Policy& policy, const DomainSpec& domain) {
    auto of_rule = [&](const PolicyRule& r) {
        std::vector<const Atom*> atoms;
        if (r.head) atoms.push_back(&r.head->target.action);
        for (const auto& lit : r.condition) atoms.push_back(&lit.atom);
        auto typed = type_variables(atoms, r.where, domain);
        // Keep first-occurrence order of the rule itself.
        std::vector<TypedVariable> ordered;
        for (const auto& v : r.variables()) {
            auto it = std::find_if(typed.begin(), typed.end(), [&](const TypedVariable& t) { return t.name == v; });
            if (it != typed.end()) ordered.push_back(*it);
        }
        return ordered;
    };
    if (rule.kind != RuleKind::Preference) return of_rule(rule);
    std::vector<TypedVariable> vars;
    for (const std::string* ref : {&rule.preferred, &rule.dispreferred}) {
        const PolicyRule* target = policy.find(*ref);
        if (!target || target->kind == RuleKind::Preference) continue;
        for (auto& v : of_rule(*target))
            if (std::none_of(vars.begin(), vars.end(), [&](const TypedVariable& t) { return t.name == v.name; }))
                vars.push_back(std::move(v));
    }
    return vars;
}

namespace {

class Validator {
public:
    Validator(const Policy& policy, const DomainSpec& domain) : policy_(policy), domain_(domain) {}

    std::vector<Diagnostic> run() {
        check_sorts();
        check_predicates();
        for (const auto& c : domain_.state_constraints) check_state_constraint(c);
        for (const auto& c : domain_.exec_constraints) check_exec_constraint(c);
        check_rules();
        std::stable_sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.rule_label, a.message) < std::tie(b.rule_label, b.message);
        });
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    void check_sorts() {
        std::set<std::string> seen;
        for (const auto& s : domain_.sorts) {
            if (!seen.insert(s.name).second) out_.push_back(error(s.pos, "duplicate sort " + s.name));
            if (is_reserved_name(s.name)) out_.push_back(error(s.pos, "sort name " + s.name + " is reserved"));
            if (s.members.empty()) out_.push_back(error(s.pos, "sort " + s.name + " has no constants"));
            std::set<std::string> members;
            for (const auto& m : s.members) {
                if (is_variable(m)) out_.push_back(error(s.pos, "sort " + s.name + " member " + m + " is not a constant"));
                if (!members.insert(m).second)
                    out_.push_back(error(s.pos, "duplicate constant " + m + " in sort " + s.name));
            }
        }
    }

    void check_predicates() {
        std::set<std::string> seen;
        for (const auto& p : domain_.predicates) {
            if (!seen.insert(p.name).second) out_.push_back(error(p.pos, "duplicate predicate " + p.name));
            if (domain_.find_sort(p.name)) out_.push_back(error(p.pos, "predicate " + p.name + " clashes with a sort"));
            if (is_reserved_name(p.name)) out_.push_back(error(p.pos, "predicate name " + p.name + " is reserved"));
            for (const auto& s : p.arg_sorts)
                if (!domain_.find_sort(s))
                    out_.push_back(error(p.pos, "predicate " + p.name + " uses undeclared sort " + s));
        }
    }

    // Atoms in conditions must be statics, fluents, or sort atoms.
    void check_state_atom(const Atom& atom, bool negative, const SourcePos& pos, const std::string& label) {
        if (atom.predicate == "permitted" || atom.predicate == "obl") {
            out_.push_back(error(pos, "condition cannot mention " + atom.predicate + " atoms", label));
            return;
        }
        if (const SortDecl* sort = domain_.find_sort(atom.predicate)) {
            if (atom.args.size() != 1) {
                out_.push_back(error(pos, "sort atom " + atom.str() + " must have exactly one argument", label));
                return;
            }
            if (negative) out_.push_back(error(pos, "sort atom " + atom.str() + " cannot be negated", label));
            const auto& arg = atom.args[0];
            if (!is_variable(arg) && std::find(sort->members.begin(), sort->members.end(), arg) == sort->members.end())
                out_.push_back(error(pos, "constant " + arg + " is not of sort " + sort->name, label));
            return;
        }
        const PredicateDecl* decl = domain_.find_predicate(atom.predicate);
        if (!decl) {
            out_.push_back(error(pos, "undeclared predicate " + atom.predicate, label));
            return;
        }
        if (decl->kind == PredicateKind::Action) {
            out_.push_back(error(pos, "condition cannot mention action " + atom.predicate, label));
            return;
        }
        check_arguments(atom, *decl, pos, label);
    }

    void check_arguments(const Atom& atom, const PredicateDecl& decl, const SourcePos& pos, const std::string& label) {
        if (decl.arg_sorts.size() != atom.args.size()) {
            out_.push_back(error(pos,
                                 "predicate " + atom.predicate + " expects " + std::to_string(decl.arg_sorts.size()) +
                                     " argument(s), got " + std::to_string(atom.args.size()),
                                 label));
            return;
        }
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const auto& arg = atom.args[i];
            if (is_variable(arg)) continue;
            const SortDecl* sort = domain_.find_sort(decl.arg_sorts[i]);
            if (sort && std::find(sort->members.begin(), sort->members.end(), arg) == sort->members.end())
                out_.push_back(error(pos, "constant " + arg + " is not of sort " + sort->name, label));
        }
    }

    void check_where(const std::vector<VarDecl>& where, const std::vector<const Atom*>& atoms,
                     const std::string& label) {
        std::set<std::string> declared;
        for (const auto& w : where) {
            if (!declared.insert(w.variable).second)
                out_.push_back(error(w.pos, "variable " + w.variable + " declared twice", label));
            if (!domain_.find_sort(w.sort)) out_.push_back(error(w.pos, "undeclared sort " + w.sort, label));
            bool used = std::any_of(atoms.begin(), atoms.end(), [&](const Atom* a) {
                return std::find(a->args.begin(), a->args.end(), w.variable) != a->args.end();
            });
            if (!used) out_.push_back(error(w.pos, "variable " + w.variable + " does not occur", label));
        }
    }

    void check_typing(const std::vector<const Atom*>& atoms, const std::vector<VarDecl>& where, const SourcePos& pos,
                      const std::string& label) {
        check_where(where, atoms, label);
        std::size_t before = out_.size();
        auto typed = type_variables(atoms, where, domain_, &out_, label);
        for (std::size_t i = before; i < out_.size(); ++i)
            if (!out_[i].pos.valid()) out_[i].pos = pos;
        for (const Atom* a : atoms)
            for (const auto& arg : a->args)
                if (is_variable(arg) &&
                    std::none_of(typed.begin(), typed.end(), [&](const TypedVariable& t) { return t.name == arg; })) {
                    bool conflicted = std::any_of(out_.begin() + static_cast<std::ptrdiff_t>(before), out_.end(),
                                                  [&](const Diagnostic& d) {
                                                      return d.message.starts_with("variable " + arg + " has");
                                                  });
                    if (!conflicted && !untyped_reported_.count(key(pos, label, arg))) {
                        untyped_reported_.insert(key(pos, label, arg));
                        out_.push_back(error(pos, "variable " + arg + " has no sort", label));
                    }
                }
    }

    static std::string key(const SourcePos& pos, const std::string& label, const std::string& var) {
        return std::to_string(pos.line) + ':' + std::to_string(pos.column) + '/' + label + '/' + var;
    }

    void check_state_constraint(const StateConstraint& c) {
        std::vector<const Atom*> atoms;
        if (c.head) {
            if (domain_.find_sort(c.head->atom.predicate))
                out_.push_back(error(c.pos, "constraint head cannot be a sort atom"));
            check_state_atom(c.head->atom, c.head->negative, c.pos, {});
            atoms.push_back(&c.head->atom);
        }
        if (!c.head && c.body.empty()) out_.push_back(error(c.pos, "impossible constraint needs at least one literal"));
        for (const auto& lit : c.body) {
            check_state_atom(lit.atom, lit.negative, c.pos, {});
            atoms.push_back(&lit.atom);
        }
        check_typing(atoms, c.where, c.pos, {});
    }

    void check_exec_constraint(const ExecConstraint& c) {
        std::vector<const Atom*> atoms{&c.action};
        const PredicateDecl* decl = domain_.find_predicate(c.action.predicate);
        if (!decl || decl->kind != PredicateKind::Action)
            out_.push_back(error(c.pos, c.action.predicate + " is not a declared action"));
        else
            check_arguments(c.action, *decl, c.pos, {});
        for (const auto& lit : c.body) {
            check_state_atom(lit.atom, lit.negative, c.pos, {});
            atoms.push_back(&lit.atom);
        }
        check_typing(atoms, c.where, c.pos, {});
    }

    void check_rules() {
        std::map<std::string, const PolicyRule*> labels;
        for (const auto& r : policy_.rules) {
            if (!labels.emplace(r.label, &r).second) out_.push_back(error(r.pos, "duplicate rule label", r.label));
            if (is_reserved_name(r.label)) out_.push_back(error(r.pos, "rule label is reserved", r.label));
            if (domain_.find_predicate(r.label) || domain_.find_sort(r.label))
                out_.push_back(error(r.pos, "rule label clashes with a declared name", r.label));
        }
        for (const auto& r : policy_.rules) {
            if (r.kind == RuleKind::Preference)
                check_preference(r, labels);
            else
                check_rule(r);
        }
    }

    void check_rule(const PolicyRule& r) {
        if (!r.head) {
            out_.push_back(error(r.pos, "rule has no head", r.label));
            return;
        }
        std::vector<const Atom*> atoms{&r.head->target.action};
        const Atom& action = r.head->target.action;
        const PredicateDecl* decl = domain_.find_predicate(action.predicate);
        if (!decl || decl->kind != PredicateKind::Action)
            out_.push_back(error(r.pos, action.predicate + " is not a declared action", r.label));
        else
            check_arguments(action, *decl, r.pos, r.label);
        if (r.head->modality == Modality::Permitted && r.head->target.negative)
            out_.push_back(error(r.pos, "permitted applies to elementary actions, not happenings", r.label));
        for (const auto& lit : r.condition) {
            check_state_atom(lit.atom, lit.negative, r.pos, r.label);
            atoms.push_back(&lit.atom);
        }
        check_typing(atoms, r.where, r.pos, r.label);
    }

    void check_preference(const PolicyRule& r, const std::map<std::string, const PolicyRule*>& labels) {
        if (r.preferred == r.dispreferred) {
            out_.push_back(error(r.pos, "preference needs two distinct rule labels", r.label));
            return;
        }
        std::vector<const PolicyRule*> targets;
        for (const auto* ref : {&r.preferred, &r.dispreferred}) {
            auto it = labels.find(*ref);
            if (it == labels.end()) {
                out_.push_back(error(r.pos, "preference refers to unknown rule " + *ref, r.label));
                continue;
            }
            if (it->second->kind != RuleKind::Defeasible) {
                out_.push_back(error(r.pos, "preference target not defeasible", r.label));
                continue;
            }
            targets.push_back(it->second);
        }
        if (targets.size() != 2) return;
        auto a = rule_variables(*targets[0], policy_, domain_);
        auto b = rule_variables(*targets[1], policy_, domain_);
        for (const auto& va : a)
            for (const auto& vb : b)
                if (va.name == vb.name && va.sort != vb.sort)
                    out_.push_back(error(r.pos,
                                         "shared variable " + va.name + " has sort " + va.sort + " in " + r.preferred +
                                             " but " + vb.sort + " in " + r.dispreferred,
                                         r.label));
    }

    const Policy& policy_;
    const DomainSpec& domain_;
    std::vector<Diagnostic> out_;
    std::set<std::string> untyped_reported_;
};

}  // namespace

std::vector<Diagnostic> validate(const Policy& policy, const DomainSpec& domain) {
    return Validator(policy, domain).run();
}

std::vector<Diagnostic> lint(const Policy& policy) {
    std::vector<Diagnostic> out;
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& r : policy.rules)
        if (r.kind == RuleKind::Preference) edges.emplace(r.preferred, r.dispreferred);
    for (const auto& r : policy.rules) {
        if (r.kind != RuleKind::Preference) continue;
        if (r.preferred < r.dispreferred && edges.count({r.dispreferred, r.preferred}))
            out.push_back(Diagnostic{Severity::Warning, r.pos,
                                     "rules " + r.preferred + " and " + r.dispreferred +
                                         " are preferred over each other; both are disabled when both conditions hold",
                                     r.label});
    }
    return out;
}

}  // namespace aopl
