#include "aopl/engine.hpp"

#include "aopl/normal_program.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace aopl {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

bool is_first(HeadShape s) { return s == HeadShape::Permitted || s == HeadShape::Obl || s == HeadShape::OblNeg; }

int pair_index(HeadShape s) {
    switch (s) {
        case HeadShape::Permitted:
        case HeadShape::NotPermitted: return 0;
        case HeadShape::Obl:
        case HeadShape::NotObl: return 1;
        case HeadShape::OblNeg:
        case HeadShape::NotOblNeg: return 2;
    }
    return 0;
}

std::string holds_atom(const std::string& term) { return "holds(" + term + ")"; }

}  // namespace

// ---- AnswerSet

std::vector<std::string> AnswerSet::atoms(const ReifiedBase& base) const {
    std::vector<std::string> out;
    for (AtomId a = 0; a < state.size(); ++a) out.push_back(holds_atom(base.literal_term({a, !state.value(a)})));
    for (RuleId r = 0; r < rule_holds.size(); ++r) {
        if (rule_holds[r]) out.push_back(holds_atom(base.rule_term(r)));
        if (body_holds[r]) out.push_back(holds_atom(base.body_term(r)));
        if (ab_holds[r]) out.push_back(holds_atom(base.ab_term(r)));
    }
    for (std::size_t h = 0; h < head_holds.size(); ++h)
        if (head_holds[h]) out.push_back(holds_atom(base.head_term(GroundHead::from_index(h))));
    std::sort(out.begin(), out.end());
    return out;
}

bool AnswerSet::contains(const ReifiedBase& base, const std::string& holds_atom) const {
    auto all = atoms(base);
    return std::binary_search(all.begin(), all.end(), holds_atom);
}

// ---- Solution

std::uint64_t Solution::count() const {
    std::uint64_t n = 1;
    for (const auto& g : choices_) n = saturating_mul(n, g.options.size());
    return n;
}

std::vector<AnswerSet> Solution::expand(std::uint64_t limit) const {
    const std::uint64_t n = count();
    if (n > limit)
        throw SolverLimitError(std::to_string(n) + " answer sets exceed the expansion limit of " +
                               std::to_string(limit));
    std::vector<AnswerSet> out;
    out.reserve(n);
    std::vector<std::size_t> pick(choices_.size(), 0);
    while (true) {
        AnswerSet as = fixed_;
        for (std::size_t g = 0; g < choices_.size(); ++g) {
            const Group& group = choices_[g];
            const Option& o = group.options[pick[g]];
            for (RuleId r : o.fired) as.rule_holds[r] = true;
            if (o.positive) as.head_holds[group.first.index()] = true;
            if (o.negative) as.head_holds[group.second.index()] = true;
        }
        out.push_back(std::move(as));
        bool done = true;
        for (std::size_t g = choices_.size(); g-- > 0;) {
            if (++pick[g] < choices_[g].options.size()) {
                done = false;
                break;
            }
            pick[g] = 0;
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

const Solution::Group* Solution::group_of(GroundHead head) const {
    for (const auto& g : choices_)
        if (g.first == head || g.second == head) return &g;
    return nullptr;
}

const Solution::Group* Solution::group_of_rule(RuleId rule) const {
    for (const auto& g : choices_)
        for (const auto& o : g.options)
            if (option_fires(o, rule)) return &g;
    return nullptr;
}

bool Solution::option_has(const Group& g, const Option& o, GroundHead head) {
    if (head == g.first) return o.positive;
    if (head == g.second) return o.negative;
    return false;
}

bool Solution::option_fires(const Option& o, RuleId rule) {
    return std::find(o.fired.begin(), o.fired.end(), rule) != o.fired.end();
}

bool Solution::brave(GroundHead head) const {
    if (fixed_.holds(head)) return true;
    const Group* g = group_of(head);
    if (!g) return false;
    return std::any_of(g->options.begin(), g->options.end(), [&](const Option& o) { return option_has(*g, o, head); });
}

bool Solution::cautious(GroundHead head) const {
    if (fixed_.holds(head)) return true;
    const Group* g = group_of(head);
    if (!g) return false;
    return std::all_of(g->options.begin(), g->options.end(), [&](const Option& o) { return option_has(*g, o, head); });
}

bool Solution::brave_pair(GroundHead a, GroundHead b) const {
    const Group* ga = group_of(a);
    if (ga && ga == group_of(b)) {
        return std::any_of(ga->options.begin(), ga->options.end(), [&](const Option& o) {
            return (fixed_.holds(a) || option_has(*ga, o, a)) && (fixed_.holds(b) || option_has(*ga, o, b));
        });
    }
    return brave(a) && brave(b);
}

bool Solution::brave_neither(GroundHead a, GroundHead b) const {
    const Group* ga = group_of(a);
    if (ga && ga == group_of(b)) {
        return std::any_of(ga->options.begin(), ga->options.end(), [&](const Option& o) {
            return !fixed_.holds(a) && !option_has(*ga, o, a) && !fixed_.holds(b) && !option_has(*ga, o, b);
        });
    }
    return !cautious(a) && !cautious(b);
}

std::uint64_t Solution::count_with(GroundHead head) const {
    const std::uint64_t n = count();
    if (fixed_.holds(head)) return n;
    const Group* g = group_of(head);
    if (!g) return 0;
    std::uint64_t with = 0;
    for (const auto& o : g->options)
        if (option_has(*g, o, head)) ++with;
    if (n == kSaturated) return kSaturated;
    return n / g->options.size() * with;
}

bool Solution::rule_brave(RuleId rule) const { return fixed_.holds(rule) || group_of_rule(rule) != nullptr; }

bool Solution::rule_cautious(RuleId rule) const {
    if (fixed_.holds(rule)) return true;
    const Group* g = group_of_rule(rule);
    if (!g) return false;
    return std::all_of(g->options.begin(), g->options.end(), [&](const Option& o) { return option_fires(o, rule); });
}

bool Solution::rules_together(RuleId a, RuleId b) const {
    if (fixed_.holds(a)) return rule_brave(b);
    if (fixed_.holds(b)) return rule_brave(a);
    const Group* ga = group_of_rule(a);
    const Group* gb = group_of_rule(b);
    if (!ga || !gb) return false;
    if (ga != gb) return true;
    return std::any_of(ga->options.begin(), ga->options.end(),
                       [&](const Option& o) { return option_fires(o, a) && option_fires(o, b); });
}

bool Solution::rule_with_neither(RuleId a, GroundHead x, GroundHead y) const {
    const Group* ga = group_of_rule(a);
    if (ga && ga == group_of(x)) {
        return std::any_of(ga->options.begin(), ga->options.end(), [&](const Option& o) {
            return option_fires(o, a) && !fixed_.holds(x) && !option_has(*ga, o, x) && !fixed_.holds(y) &&
                   !option_has(*ga, o, y);
        });
    }
    return rule_brave(a) && brave_neither(x, y);
}

// ---- Engine

Engine::Engine(ReifiedBase base) : base_(std::move(base)) {
    const auto& rules = base_.policy().rules;
    for (RuleId r = 0; r < rules.size(); ++r) {
        switch (rules[r].kind) {
            case RuleKind::Strict: strict_.push_back(r); break;
            case RuleKind::Defeasible: defeasible_.push_back(r); break;
            case RuleKind::Preference: preferences_.push_back(r); break;
        }
    }
}

Solution Engine::solve(const WorldState& state) const {
    const GroundPolicy& gp = base_.policy();
    const std::size_t n_rules = gp.rules.size();
    Solution sol;
    AnswerSet& m = sol.fixed_;
    m.state = state;
    m.rule_holds.assign(n_rules, false);
    m.body_holds.assign(n_rules, false);
    m.ab_holds.assign(n_rules, false);
    m.head_holds.assign(gp.head_universe_size(), false);

    for (RuleId r = 0; r < n_rules; ++r) m.body_holds[r] = state.holds_all(gp.rules[r].body);
    for (RuleId p : preferences_)
        if (m.body_holds[gp.rules[p].preferred]) m.ab_holds[gp.rules[p].dispreferred] = true;
    for (RuleId r : strict_) {
        if (!m.body_holds[r]) continue;
        m.rule_holds[r] = true;
        m.head_holds[gp.rules[r].head->index()] = true;
    }

    // Applicable defeasible rules, grouped by complementary head pair.
    struct Pending {
        std::vector<RuleId> pos;
        std::vector<RuleId> neg;
        GroundHead first;
    };
    std::map<std::size_t, Pending> groups;
    for (RuleId r : defeasible_) {
        if (!m.body_holds[r] || m.ab_holds[r]) continue;
        const GroundHead h = *gp.rules[r].head;
        Pending& p = groups[h.action * 3 + pair_index(h.shape)];
        p.first = is_first(h.shape) ? h : h.opposite();
        (is_first(h.shape) ? p.pos : p.neg).push_back(r);
    }

    std::vector<std::pair<const Pending*, Solution::Option>> determined;
    for (const auto& [key, p] : groups) {
        const GroundHead first = p.first;
        const GroundHead second = first.opposite();
        const bool strict_first = m.holds(first);
        const bool strict_second = m.holds(second);
        std::vector<Solution::Option> options;
        for (int fire_pos = 0; fire_pos < 2; ++fire_pos) {
            if (fire_pos && p.pos.empty()) continue;
            for (int fire_neg = 0; fire_neg < 2; ++fire_neg) {
                if (fire_neg && p.neg.empty()) continue;
                const bool first_in = strict_first || fire_pos;
                const bool second_in = strict_second || fire_neg;
                // S = { r in A : opp-head(r) not in M }
                if (!p.pos.empty() && static_cast<bool>(fire_pos) != !second_in) continue;
                if (!p.neg.empty() && static_cast<bool>(fire_neg) != !first_in) continue;
                Solution::Option o;
                if (fire_pos) o.fired.insert(o.fired.end(), p.pos.begin(), p.pos.end());
                if (fire_neg) o.fired.insert(o.fired.end(), p.neg.begin(), p.neg.end());
                std::sort(o.fired.begin(), o.fired.end());
                o.positive = fire_pos;
                o.negative = fire_neg;
                options.push_back(std::move(o));
            }
        }
        if (options.empty()) throw std::logic_error("no stable choice for a defeasible group");
        if (options.size() == 1) {
            const auto& o = options.front();
            for (RuleId r : o.fired) m.rule_holds[r] = true;
            if (o.positive) m.head_holds[first.index()] = true;
            if (o.negative) m.head_holds[second.index()] = true;
        } else {
            sol.choices_.push_back({first, second, std::move(options)});
        }
    }
    return sol;
}

// ---- queries

std::vector<AnswerSet> answer_sets(const ReifiedBase& base, const WorldState& state) {
    return Engine(base).solve(state).expand();
}

bool entails(const ReifiedBase& base, const WorldState& state, const std::string& holds_atom) {
    auto sets = answer_sets(base, state);
    return std::all_of(sets.begin(), sets.end(), [&](const AnswerSet& a) { return a.contains(base, holds_atom); });
}

bool entails(const ReifiedBase& base, const WorldState& state, GroundHead head) {
    return Engine(base).solve(state).cautious(head);
}

bool entails_brave(const ReifiedBase& base, const WorldState& state, const std::string& holds_atom) {
    auto sets = answer_sets(base, state);
    return std::any_of(sets.begin(), sets.end(), [&](const AnswerSet& a) { return a.contains(base, holds_atom); });
}

AmbiguityStats ambiguity_stats(const Solution& solution, ActionId action) {
    return {solution.count(), solution.count_with({action, HeadShape::Permitted}),
            solution.count_with({action, HeadShape::NotPermitted})};
}

// ---- oracle

namespace {

bool strip(const std::string& s, const std::string& prefix, const std::string& suffix, std::string* inner) {
    if (s.size() < prefix.size() + suffix.size()) return false;
    if (s.compare(0, prefix.size(), prefix) != 0) return false;
    if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    *inner = s.substr(prefix.size(), s.size() - prefix.size() - suffix.size());
    return true;
}

// opp/2 as defined by the four policy-independent opp rules.
std::vector<std::string> opp_terms(const std::string& head) {
    std::string x;
    std::vector<std::string> out;
    if (strip(head, "neg(permitted(", "))", &x)) out.push_back("permitted(" + x + ")");
    if (strip(head, "permitted(", ")", &x)) out.push_back("neg(permitted(" + x + "))");
    if (strip(head, "neg(obl(", "))", &x)) out.push_back("obl(" + x + ")");
    if (strip(head, "obl(", ")", &x)) out.push_back("neg(obl(" + x + "))");
    return out;
}

}  // namespace

std::vector<AnswerSet> oracle_answer_sets(const ReifiedBase& base, const WorldState& state,
                                          std::size_t max_guess_atoms) {
    std::vector<std::string> rules;
    std::map<std::string, std::string> type;
    std::multimap<std::string, std::string> head, mbr, body;
    std::vector<std::pair<std::string, std::string>> prefer;
    for (const Fact& f : base.facts()) {
        if (f.predicate == "rule") rules.push_back(f.args[0]);
        else if (f.predicate == "type") type[f.args[0]] = f.args[1];
        else if (f.predicate == "head") head.emplace(f.args[0], f.args[1]);
        else if (f.predicate == "mbr") mbr.emplace(f.args[0], f.args[1]);
        else if (f.predicate == "body") body.emplace(f.args[0], f.args[1]);
        else if (f.predicate == "prefer") prefer.emplace_back(f.args[0], f.args[1]);
    }
    // body(R, b(R)) :- rule(R).
    for (const auto& r : rules) body.emplace(r, "b(" + r + ")");

    NormalProgram prog;
    for (AtomId a = 0; a < state.size(); ++a) prog.add_fact(holds_atom(base.literal_term({a, !state.value(a)})));

    std::set<std::pair<std::string, std::string>> bodies(body.begin(), body.end());
    for (const auto& [r, b] : bodies) {
        std::vector<std::string> members;
        auto [lo, hi] = mbr.equal_range(b);
        for (auto it = lo; it != hi; ++it) members.push_back(holds_atom(it->second));
        prog.add_rule(holds_atom(b), members);
        auto t = type.find(r);
        if (t == type.end()) continue;
        if (t->second == "strict") prog.add_rule(holds_atom(r), {holds_atom(b)});
        if (t->second == "defeasible") {
            auto [hlo, hhi] = head.equal_range(r);
            for (auto it = hlo; it != hhi; ++it)
                for (const auto& o : opp_terms(it->second))
                    prog.add_rule(holds_atom(r), {holds_atom(b)}, {holds_atom(o), holds_atom("ab(" + r + ")")});
        }
    }
    for (const auto& [r1, r2] : prefer)
        for (const auto& [r, b] : bodies)
            if (r == r1) prog.add_rule(holds_atom("ab(" + r2 + ")"), {holds_atom(b)});
    for (const auto& r : rules) {
        auto [lo, hi] = head.equal_range(r);
        for (auto it = lo; it != hi; ++it) prog.add_rule(holds_atom(it->second), {holds_atom(r)});
    }

    const GroundPolicy& gp = base.policy();
    enum class Kind { Literal, Rule, Body, Ab, Head };
    std::unordered_map<std::string, std::pair<Kind, std::size_t>> lookup;
    for (AtomId a = 0; a < gp.domain.state_atoms.size(); ++a) {
        lookup[holds_atom(base.literal_term({a, false}))] = {Kind::Literal, a};
        lookup[holds_atom(base.literal_term({a, true}))] = {Kind::Literal, a};
    }
    for (RuleId r = 0; r < gp.rules.size(); ++r) {
        lookup[holds_atom(base.rule_term(r))] = {Kind::Rule, r};
        lookup[holds_atom(base.body_term(r))] = {Kind::Body, r};
        lookup[holds_atom(base.ab_term(r))] = {Kind::Ab, r};
    }
    for (std::size_t h = 0; h < gp.head_universe_size(); ++h)
        lookup[holds_atom(base.head_term(GroundHead::from_index(h)))] = {Kind::Head, h};

    std::vector<AnswerSet> out;
    for (const auto& model : prog.answer_sets(max_guess_atoms)) {
        AnswerSet as;
        as.state = state;
        as.rule_holds.assign(gp.rules.size(), false);
        as.body_holds.assign(gp.rules.size(), false);
        as.ab_holds.assign(gp.rules.size(), false);
        as.head_holds.assign(gp.head_universe_size(), false);
        for (const auto& atom : model) {
            auto it = lookup.find(atom);
            if (it == lookup.end()) throw std::logic_error("oracle derived unknown atom " + atom);
            auto [kind, i] = it->second;
            switch (kind) {
                case Kind::Literal: break;
                case Kind::Rule: as.rule_holds[i] = true; break;
                case Kind::Body: as.body_holds[i] = true; break;
                case Kind::Ab: as.ab_holds[i] = true; break;
                case Kind::Head: as.head_holds[i] = true; break;
            }
        }
        out.push_back(std::move(as));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- lp(P, σ)

namespace {

std::string lp_literal(const GroundDomain& d, GroundLiteral l) {
    return (l.negative ? "-" : "") + d.state_atoms[l.atom].str();
}

std::string lp_head(const GroundDomain& d, GroundHead h) {
    const std::string e = d.actions[h.action].str();
    switch (h.shape) {
        case HeadShape::Permitted: return "permitted(" + e + ")";
        case HeadShape::NotPermitted: return "-permitted(" + e + ")";
        case HeadShape::Obl: return "obl(" + e + ")";
        case HeadShape::OblNeg: return "obl(neg(" + e + "))";
        case HeadShape::NotObl: return "-obl(" + e + ")";
        case HeadShape::NotOblNeg: return "-obl(neg(" + e + "))";
    }
    return e;
}

}  // namespace

std::vector<std::vector<bool>> lp_answer_sets(const GroundPolicy& gp, const WorldState& state,
                                              std::size_t max_guess_atoms) {
    const GroundDomain& d = gp.domain;
    NormalProgram prog;
    for (AtomId a = 0; a < state.size(); ++a) prog.add_fact(lp_literal(d, {a, !state.value(a)}));
    auto ab = [&](RuleId r) { return "ab(" + gp.rules[r].label + ")"; };
    for (RuleId r = 0; r < gp.rules.size(); ++r) {
        const GroundRule& rule = gp.rules[r];
        const GroundRule& cond = rule.kind == RuleKind::Preference ? gp.rules[rule.preferred] : rule;
        std::vector<std::string> pos;
        for (const auto& l : cond.body) pos.push_back(lp_literal(d, l));
        switch (rule.kind) {
            case RuleKind::Strict: prog.add_rule(lp_head(d, *rule.head), pos); break;
            case RuleKind::Defeasible:
                prog.add_rule(lp_head(d, *rule.head), pos, {ab(r), lp_head(d, rule.head->opposite())});
                break;
            case RuleKind::Preference: prog.add_rule(ab(rule.dispreferred), pos); break;
        }
    }
    std::map<std::string, std::size_t> head_index;
    for (std::size_t h = 0; h < gp.head_universe_size(); ++h) {
        const GroundHead head = GroundHead::from_index(h);
        head_index[lp_head(d, head)] = h;
        if (is_first(head.shape)) prog.add_constraint({lp_head(d, head), lp_head(d, head.opposite())});
    }
    std::vector<std::vector<bool>> out;
    for (const auto& model : prog.answer_sets(max_guess_atoms)) {
        std::vector<bool> proj(gp.head_universe_size(), false);
        for (const auto& atom : model) {
            auto it = head_index.find(atom);
            if (it != head_index.end()) proj[it->second] = true;
        }
        out.push_back(std::move(proj));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<bool>> hd_projection(const std::vector<AnswerSet>& sets) {
    std::vector<std::vector<bool>> out;
    for (const auto& s : sets) out.push_back(s.head_holds);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aopl
