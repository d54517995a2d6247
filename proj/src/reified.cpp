#include "aopl/reified.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace aopl {

std::string Fact::str() const {
    std::string out = predicate + '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    return out + ").";
}

namespace term {

std::string rule(const GroundRule& rule) { return atom(Atom{rule.family, rule.args}); }

std::string atom(const Atom& atom) { return atom.str(); }

std::string literal(const GroundDomain& domain, GroundLiteral lit) {
    const std::string a = atom(domain.state_atoms.at(lit.atom));
    return lit.negative ? "neg(" + a + ")" : a;
}

std::string head(const GroundDomain& domain, GroundHead head) {
    const std::string e = atom(domain.actions.at(head.action));
    switch (head.shape) {
        case HeadShape::Permitted: return "permitted(" + e + ")";
        case HeadShape::NotPermitted: return "neg(permitted(" + e + "))";
        case HeadShape::Obl: return "obl(" + e + ")";
        case HeadShape::OblNeg: return "obl(neg(" + e + "))";
        case HeadShape::NotObl: return "neg(obl(" + e + "))";
        case HeadShape::NotOblNeg: return "neg(obl(neg(" + e + ")))";
    }
    return e;
}

std::string string_constant(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + '"';
}

}  // namespace term

ReifiedBase::ReifiedBase(GroundPolicy policy) : policy_(std::make_shared<const GroundPolicy>(std::move(policy))) {
    const auto& rules = policy_->rules;
    order_.resize(rules.size());
    std::iota(order_.begin(), order_.end(), RuleId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](RuleId a, RuleId b) { return rules[a].label < rules[b].label; });
    for (RuleId id : order_) {
        const GroundRule& r = rules[id];
        const std::string name = rule_term(id);
        facts_.push_back({"rule", {name}});
        facts_.push_back({"type", {name, std::string(to_string(r.kind))}});
        if (r.text) facts_.push_back({"text", {name, term::string_constant(*r.text)}});
        if (r.head) facts_.push_back({"head", {name, head_term(*r.head)}});
        facts_.push_back({"body", {name, body_term(id)}});
        for (const auto& lit : r.body) facts_.push_back({"mbr", {body_term(id), literal_term(lit)}});
        if (r.kind == RuleKind::Preference)
            facts_.push_back({"prefer", {rule_term(r.preferred), rule_term(r.dispreferred)}});
    }
}

std::optional<GroundHead> ReifiedBase::opp(RuleId rule) const {
    const auto& r = policy_->rules.at(rule);
    if (!r.head) return std::nullopt;
    return r.head->opposite();
}

std::string ReifiedBase::rule_term(RuleId rule) const { return term::rule(policy_->rules.at(rule)); }

std::string ReifiedBase::body_term(RuleId rule) const { return "b(" + rule_term(rule) + ")"; }

std::string ReifiedBase::ab_term(RuleId rule) const { return "ab(" + rule_term(rule) + ")"; }

std::string ReifiedBase::head_term(GroundHead head) const { return term::head(policy_->domain, head); }

std::string ReifiedBase::literal_term(GroundLiteral lit) const { return term::literal(policy_->domain, lit); }

ReifiedBase reify(const GroundPolicy& policy) { return ReifiedBase(policy); }

const std::string& policy_independent_rules() {
    static const std::string rules =
        "body(R, b(R)) :- rule(R).\n"
        "holds(R) :- type(R, strict), holds(b(R)).\n"
        "holds(R) :- type(R, defeasible), holds(b(R)), opp(R, O), not holds(O), not holds(ab(R)).\n"
        "holds(B) :- body(R, B), N = #count{L : mbr(B, L)}, N = #count{L : mbr(B, L), holds(L)}.\n"
        "holds(ab(R2)) :- prefer(R1, R2), holds(b(R1)).\n"
        "holds(Hd) :- rule(R), holds(R), head(R, Hd).\n"
        "opp(R, permitted(E)) :- head(R, neg(permitted(E))).\n"
        "opp(R, neg(permitted(E))) :- head(R, permitted(E)).\n"
        "opp(R, obl(H)) :- head(R, neg(obl(H))).\n"
        "opp(R, neg(obl(H))) :- head(R, obl(H)).\n";
    return rules;
}

namespace {

// Classical-negation rendering for the lp translation: -permitted(e),
// obl(neg(e)), -obl(neg(e)).
std::string lp_head(const GroundDomain& domain, GroundHead head) {
    const std::string e = term::atom(domain.actions.at(head.action));
    switch (head.shape) {
        case HeadShape::Permitted: return "permitted(" + e + ")";
        case HeadShape::NotPermitted: return "-permitted(" + e + ")";
        case HeadShape::Obl: return "obl(" + e + ")";
        case HeadShape::OblNeg: return "obl(neg(" + e + "))";
        case HeadShape::NotObl: return "-obl(" + e + ")";
        case HeadShape::NotOblNeg: return "-obl(neg(" + e + "))";
    }
    return e;
}

std::string lp_literal(const GroundDomain& domain, GroundLiteral lit) {
    return (lit.negative ? "-" : "") + term::atom(domain.state_atoms.at(lit.atom));
}

std::string lp_rule(const ReifiedBase& base, RuleId id) {
    const GroundPolicy& gp = base.policy();
    const GroundRule& r = gp.rules[id];
    std::vector<std::string> body;
    const GroundRule& cond_source = r.kind == RuleKind::Preference ? gp.rules[r.preferred] : r;
    for (const auto& lit : cond_source.body) body.push_back(lp_literal(gp.domain, lit));
    std::string head;
    switch (r.kind) {
        case RuleKind::Strict: head = lp_head(gp.domain, *r.head); break;
        case RuleKind::Defeasible:
            head = lp_head(gp.domain, *r.head);
            body.push_back("not " + base.ab_term(id));
            body.push_back("not " + lp_head(gp.domain, r.head->opposite()));
            break;
        case RuleKind::Preference: head = base.ab_term(r.dispreferred); break;
    }
    std::string out = head;
    if (!body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i];
        }
    }
    return out + '.';
}

}  // namespace

std::string emit_asp(const GroundPolicy& policy, AspVariant variant) {
    std::ostringstream os;
    ReifiedBase base(policy);
    if (variant == AspVariant::Lp) {
        os << "% aopl-lint: lp translation, " << policy.rules.size() << " ground statement(s)\n";
        os << "% add the state as facts, e.g. authorized(c,m). -observer(c).\n";
        for (RuleId id : base.rule_order()) os << lp_rule(base, id) << '\n';
        return os.str();
    }
    os << "% aopl-lint: reified translation, " << policy.rules.size() << " ground statement(s)\n";
    os << "% add the state as facts, e.g. holds(authorized(c,m)). holds(neg(observer(c))).\n";
    if (policy.rules.empty()) return os.str();
    for (const auto& f : base.facts()) os << f.str() << '\n';
    os << "\n% policy-independent rules\n" << policy_independent_rules();
    return os.str();
}

std::string emit_state_facts(const GroundDomain& domain, const WorldState& state, AspVariant variant) {
    std::ostringstream os;
    for (AtomId i = 0; i < state.size(); ++i) {
        GroundLiteral lit{i, !state.value(i)};
        if (variant == AspVariant::Lp)
            os << lp_literal(domain, lit) << ".\n";
        else
            os << "holds(" << term::literal(domain, lit) << ").\n";
    }
    return os.str();
}

}  // namespace aopl
