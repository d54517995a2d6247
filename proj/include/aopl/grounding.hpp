#pragma once

#include "aopl/diagnostic.hpp"
#include "aopl/model.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aopl {

using AtomId = std::uint32_t;    // index into GroundDomain::state_atoms
using ActionId = std::uint32_t;  // index into GroundDomain::actions
using RuleId = std::uint32_t;    // index into GroundPolicy::rules

struct GroundLiteral {
    AtomId atom = 0;
    bool negative = false;

    friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
};

// The six members of HD for one elementary action e.
enum class HeadShape : std::uint8_t {
    Permitted,     // permitted(e)
    NotPermitted,  // !permitted(e)
    Obl,           // obl(e)
    OblNeg,        // obl(-e)
    NotObl,        // !obl(e)
    NotOblNeg,     // !obl(-e)
};

inline constexpr std::size_t kHeadShapes = 6;

HeadShape opposite(HeadShape shape);
bool is_authorization(HeadShape shape);

struct GroundHead {
    ActionId action = 0;
    HeadShape shape = HeadShape::Permitted;

    std::size_t index() const { return static_cast<std::size_t>(action) * kHeadShapes + static_cast<std::size_t>(shape); }
    GroundHead opposite() const { return {action, aopl::opposite(shape)}; }
    static GroundHead from_index(std::size_t index) {
        return {static_cast<ActionId>(index / kHeadShapes), static_cast<HeadShape>(index % kHeadShapes)};
    }

    friend auto operator<=>(const GroundHead&, const GroundHead&) = default;
};

struct GroundStateConstraint {
    std::optional<GroundLiteral> head;  // absent: `impossible`
    std::vector<GroundLiteral> body;
};

struct GroundExecConstraint {
    ActionId action = 0;
    std::vector<GroundLiteral> body;
};

// Ground atoms of a domain: the state vocabulary (statics, fluents), the
// elementary actions, and ground state/executability constraints.
class GroundDomain {
public:
    std::vector<Atom> state_atoms;
    std::vector<PredicateKind> state_atom_kinds;
    std::vector<Atom> actions;
    std::vector<GroundStateConstraint> state_constraints;
    std::vector<GroundExecConstraint> exec_constraints;

    void add_state_atom(Atom atom, PredicateKind kind);
    void add_action(Atom atom);

    std::optional<AtomId> find_atom(const Atom& atom) const;
    std::optional<ActionId> find_action(const Atom& atom) const;
    // Ground literal over a state atom; nullopt when the atom is unknown.
    std::optional<GroundLiteral> resolve(const Literal& lit) const;

    std::string literal_str(GroundLiteral lit) const;  // -authorized(c,m)
    std::string head_str(GroundHead head) const;       // !permitted(e), obl(-e)

private:
    std::map<Atom, AtomId> atom_index_;
    std::map<Atom, ActionId> action_index_;
};

struct GroundRule {
    std::string family;             // schematic label, e.g. d1
    std::vector<std::string> args;  // values of the family's variables
    std::string label;              // d1[c,m]; bare family when there are no variables
    RuleKind kind = RuleKind::Strict;
    std::optional<GroundHead> head;
    std::vector<GroundLiteral> body;
    std::vector<std::string> body_patterns;  // schematic literal behind each body entry
    RuleId preferred = 0;                    // preference only
    RuleId dispreferred = 0;                 // preference only
    std::optional<std::string> text;
    std::string source;  // printed schematic statement, used when text is absent
};

struct GroundPolicy {
    GroundDomain domain;
    std::vector<GroundRule> rules;

    std::size_t head_universe_size() const { return domain.actions.size() * kHeadShapes; }
    std::vector<GroundHead> head_universe() const;
    std::optional<RuleId> find_rule(std::string_view label) const;
    // Rule text, or the printed rule when the policy gives none.
    std::string describe(RuleId rule) const;
};

struct GroundingResult {
    std::optional<GroundPolicy> policy;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return policy.has_value(); }
};

// `family[c1,...,ck]`, or `family` when k = 0.
std::string ground_label(const std::string& family, const std::vector<std::string>& args);

// Every assignment of constants to `vars`, first variable outermost, constants
// in declaration order. Empty when some sort has no constants.
std::vector<std::vector<std::string>> instantiations(const std::vector<TypedVariable>& vars, const DomainSpec& domain);

GroundingResult ground_domain(const DomainSpec& domain);

// Instantiates every rule over the declared sorts. Preferences pair the
// instances of the two rules that agree on shared (same-named) variables.
// Expects a policy that passed validate().
GroundingResult ground(const Policy& policy, const DomainSpec& domain);

}  // namespace aopl
