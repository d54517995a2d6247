#pragma once

#include "aopl/grounding.hpp"
#include "aopl/world_state.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace aopl {

// One ground fact of the reified program, arguments already rendered as ASP
// terms: head(s1(c,m),neg(permitted(authorize_comm(c,m)))).
struct Fact {
    std::string predicate;
    std::vector<std::string> args;

    std::string str() const;

    friend bool operator==(const Fact&, const Fact&) = default;
};

// ASP term renderings shared by both translations and the oracle.
namespace term {
std::string rule(const GroundRule& rule);                          // d1(c,m)
std::string atom(const Atom& atom);                                // authorized(c,m)
std::string literal(const GroundDomain& domain, GroundLiteral lit);  // neg(authorized(c,m))
std::string head(const GroundDomain& domain, GroundHead head);     // neg(obl(neg(e)))
std::string string_constant(const std::string& text);              // "..." with escapes
}  // namespace term

// rei_lp(P): facts over rule/1, type/2, text/2, head/2, body/2, mbr/2 and
// prefer/2 describing a ground policy. The policy-independent rules are
// fixed; see policy_independent_rules().
class ReifiedBase {
public:
    explicit ReifiedBase(GroundPolicy policy);

    const GroundPolicy& policy() const { return *policy_; }
    const GroundDomain& domain() const { return policy_->domain; }

    // Facts grouped by rule, rules sorted by ground label.
    const std::vector<Fact>& facts() const { return facts_; }
    // Rule ids in label order.
    const std::vector<RuleId>& rule_order() const { return order_; }

    // opp(r, hd): complement of a rule's head; nullopt for preferences.
    std::optional<GroundHead> opp(RuleId rule) const;

    std::string rule_term(RuleId rule) const;
    std::string body_term(RuleId rule) const;  // b(d1(c,m))
    std::string ab_term(RuleId rule) const;    // ab(d1(c,m))
    std::string head_term(GroundHead head) const;
    std::string literal_term(GroundLiteral lit) const;

private:
    std::shared_ptr<const GroundPolicy> policy_;
    std::vector<Fact> facts_;
    std::vector<RuleId> order_;
};

ReifiedBase reify(const GroundPolicy& policy);

// The rules that define holds/1 and opp/2, as ASP text.
const std::string& policy_independent_rules();

enum class AspVariant { Lp, Rei };

// Solver-ready ASP-Core-2 text. Lp is the default-negation encoding of each
// statement; Rei is the fact base plus the policy-independent rules. Add the
// state as facts (lp: `authorized(c,m).` / `-observer(c).`; rei:
// `holds(authorized(c,m)).` / `holds(neg(observer(c))).`) before solving.
std::string emit_asp(const GroundPolicy& policy, AspVariant variant);

// State facts in the syntax expected by emit_asp's output.
std::string emit_state_facts(const GroundDomain& domain, const WorldState& state, AspVariant variant);

}  // namespace aopl
