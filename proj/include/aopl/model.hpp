#pragma once

#include "aopl/diagnostic.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aopl {

// Identifiers starting with an upper-case letter (or '_') are variables;
// everything else in an argument position is a constant.
bool is_variable(std::string_view term);

struct SortDecl {
    std::string name;
    std::vector<std::string> members;
    SourcePos pos;

    friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

enum class PredicateKind { Static, Fluent, Action };

std::string_view to_string(PredicateKind kind);

struct PredicateDecl {
    std::string name;
    std::vector<std::string> arg_sorts;
    PredicateKind kind = PredicateKind::Fluent;
    SourcePos pos;

    friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// A predicate applied to arguments. Schematic until grounded: arguments may be
// variables.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool is_ground() const;
    std::string str() const;  // p(a,b) or p

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Classical literal over statics, fluents, or sort atoms.
struct Literal {
    Atom atom;
    bool negative = false;

    std::string str() const;  // -p(a) for negative literals

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// An elementary action or its negation.
struct Happening {
    Atom action;
    bool negative = false;

    std::string str() const;

    friend bool operator==(const Happening&, const Happening&) = default;
};

enum class Modality { Permitted, Obligation };

// permitted(e), !permitted(e), obl(h), !obl(h). For Permitted the happening
// is never negated.
struct HeadLiteral {
    Modality modality = Modality::Permitted;
    bool negated = false;
    Happening target;

    std::string str() const;

    friend bool operator==(const HeadLiteral&, const HeadLiteral&) = default;
};

enum class RuleKind { Strict, Defeasible, Preference };

std::string_view to_string(RuleKind kind);

struct VarDecl {
    std::string variable;
    std::string sort;
    SourcePos pos;

    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

struct PolicyRule {
    std::string label;
    RuleKind kind = RuleKind::Strict;
    std::optional<HeadLiteral> head;  // absent for preferences
    std::vector<Literal> condition;
    std::string preferred;     // preference only
    std::string dispreferred;  // preference only
    std::vector<VarDecl> where;
    std::optional<std::string> text;
    SourcePos pos;
    SourcePos text_pos;

    // Variables in order of first occurrence: head, condition, where clause.
    std::vector<std::string> variables() const;

    friend bool operator==(const PolicyRule&, const PolicyRule&) = default;
};

struct Policy {
    std::vector<PolicyRule> rules;

    const PolicyRule* find(std::string_view label) const;
    bool empty() const { return rules.empty(); }

    friend bool operator==(const Policy&, const Policy&) = default;
};

// `constraint H if B.` (head present) or `impossible B.` (head absent).
struct StateConstraint {
    std::optional<Literal> head;
    std::vector<Literal> body;
    std::vector<VarDecl> where;
    SourcePos pos;

    friend bool operator==(const StateConstraint&, const StateConstraint&) = default;
};

// `impossible_exec a(...) if B.`: the action is not executable where B holds.
struct ExecConstraint {
    Atom action;
    std::vector<Literal> body;
    std::vector<VarDecl> where;
    SourcePos pos;

    friend bool operator==(const ExecConstraint&, const ExecConstraint&) = default;
};

struct DomainSpec {
    std::vector<SortDecl> sorts;
    std::vector<PredicateDecl> predicates;
    std::vector<StateConstraint> state_constraints;
    std::vector<ExecConstraint> exec_constraints;

    const SortDecl* find_sort(std::string_view name) const;
    const PredicateDecl* find_predicate(std::string_view name) const;
    bool empty() const {
        return sorts.empty() && predicates.empty() && state_constraints.empty() && exec_constraints.empty();
    }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct TypedVariable {
    std::string name;
    std::string sort;

    friend bool operator==(const TypedVariable&, const TypedVariable&) = default;
};

// Sorts of the variables occurring in `atoms` (positional sorts from the
// predicate declarations; a sort name used as a unary predicate types its
// argument) and in `where`, in order of first occurrence. Problems are
// appended to `diagnostics` when it is non-null; untypable variables are
// omitted from the result.
std::vector<TypedVariable> type_variables(const std::vector<const Atom*>& atoms, const std::vector<VarDecl>& where,
                                          const DomainSpec& domain, std::vector<Diagnostic>* diagnostics = nullptr,
                                          const std::string& label = {});

// Variables of a strict or defeasible rule with their sorts. For preferences
// this is the union of the two referenced rules' variables, shared by name.
std::vector<TypedVariable> rule_variables(const PolicyRule& rule, const Policy& policy, const DomainSpec& domain);

// Names that may not be used for predicates, sorts, or rule labels because
// they collide with the deontic or reified vocabulary.
bool is_reserved_name(std::string_view name);

// Well-formedness of a policy against its domain. Returns errors only, sorted
// by (rule label, message); empty iff every invariant holds.
std::vector<Diagnostic> validate(const Policy& policy, const DomainSpec& domain);

// Non-fatal findings, e.g. mutual preferences that disable both rules.
std::vector<Diagnostic> lint(const Policy& policy);

}  // namespace aopl
