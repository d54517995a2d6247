#include "aopl/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <thread>

namespace aopl {

std::string_view to_string(IssueKind kind) {
    switch (kind) {
        case IssueKind::Inconsistency: return "inconsistency";
        case IssueKind::UnderspecCase1: return "underspec_case1";
        case IssueKind::UnderspecCase2: return "underspec_case2";
        case IssueKind::Ambiguity: return "ambiguity";
        case IssueKind::ObligationConflict: return "obligation_conflict";
        case IssueKind::ModalityConflict: return "modality_conflict";
    }
    return "?";
}

std::optional<IssueKind> issue_kind_from_string(std::string_view text) {
    for (auto k : {IssueKind::Inconsistency, IssueKind::UnderspecCase1, IssueKind::UnderspecCase2,
                   IssueKind::Ambiguity, IssueKind::ObligationConflict, IssueKind::ModalityConflict})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::string_view to_string(AuthClass cls) {
    switch (cls) {
        case AuthClass::StronglyCompliant: return "strongly_compliant";
        case AuthClass::NonCompliant: return "non_compliant";
        case AuthClass::Underspecified: return "underspecified";
        case AuthClass::Ambiguous: return "ambiguous";
        case AuthClass::Inconsistent: return "inconsistent";
    }
    return "?";
}

namespace {

GroundHead hd(ActionId e, HeadShape s) { return {e, s}; }

}  // namespace

Analyzer::Analyzer(ReifiedBase base) : engine_(std::move(base)) {
    const GroundPolicy& gp = policy();
    by_head_.resize(gp.head_universe_size());
    for (RuleId r = 0; r < gp.rules.size(); ++r)
        if (gp.rules[r].head) by_head_[gp.rules[r].head->index()].push_back(r);
}

std::vector<RuleId> Analyzer::rules_with_head(GroundHead head) const { return by_head_.at(head.index()); }

std::vector<GroundLiteral> Analyzer::holding_body(const Solution& sol, RuleId rule) const {
    std::vector<GroundLiteral> out;
    for (const auto& l : policy().rules[rule].body)
        if (sol.fixed().state.holds(l)) out.push_back(l);
    return out;
}

IssueRecord Analyzer::pair_record(const Solution& sol, IssueKind kind, ActionId action, GroundHead h1, GroundHead h2,
                                  RuleId r1, std::optional<RuleId> r2) const {
    IssueRecord rec;
    rec.kind = kind;
    rec.action = action;
    rec.heads = {h1, h2};
    rec.rules = {r1};
    rec.pos = holding_body(sol, r1);
    if (r2) {
        rec.rules.push_back(*r2);
        rec.neg = holding_body(sol, *r2);
    }
    rec.witness = sol.fixed().state;
    return rec;
}

bool Analyzer::consistent(const Solution& sol, ActionId e) const {
    return !sol.brave_pair(hd(e, HeadShape::Permitted), hd(e, HeadShape::NotPermitted));
}

bool Analyzer::underspecified(const Solution& sol, ActionId e) const {
    return sol.brave_neither(hd(e, HeadShape::Permitted), hd(e, HeadShape::NotPermitted));
}

std::vector<IssueRecord> Analyzer::inconsistencies(const Solution& sol) const {
    std::vector<IssueRecord> out;
    for (ActionId e = 0; e < policy().domain.actions.size(); ++e) {
        const GroundHead p = hd(e, HeadShape::Permitted), np = hd(e, HeadShape::NotPermitted);
        for (RuleId r1 : by_head_[p.index()])
            for (RuleId r2 : by_head_[np.index()])
                if (sol.rules_together(r1, r2))
                    out.push_back(pair_record(sol, IssueKind::Inconsistency, e, p, np, r1, r2));
    }
    return out;
}

std::optional<IssueRecord> Analyzer::underspecification(const Solution& sol, ActionId e) const {
    if (!consistent(sol, e) || !underspecified(sol, e)) return std::nullopt;
    const GroundPolicy& gp = policy();
    std::vector<RuleId> about = by_head_[hd(e, HeadShape::Permitted).index()];
    const auto& neg = by_head_[hd(e, HeadShape::NotPermitted).index()];
    about.insert(about.end(), neg.begin(), neg.end());
    std::sort(about.begin(), about.end());

    IssueRecord rec;
    rec.action = e;
    rec.witness = sol.fixed().state;
    if (about.empty()) {
        rec.kind = IssueKind::UnderspecCase1;
        return rec;
    }
    rec.kind = IssueKind::UnderspecCase2;
    for (RuleId r : about) {
        FailingRule f;
        f.rule = r;
        for (const auto& l : gp.rules[r].body)
            if (!sol.fixed().state.holds(l)) f.literals.push_back(l);
        if (f.literals.empty()) {
            for (RuleId p = 0; p < gp.rules.size(); ++p) {
                const GroundRule& pr = gp.rules[p];
                if (pr.kind == RuleKind::Preference && pr.dispreferred == r && sol.fixed().body_holds[pr.preferred])
                    f.blocked_by.push_back(p);
            }
        }
        rec.rules.push_back(r);
        rec.failing.push_back(std::move(f));
    }
    return rec;
}

Analyzer::Ambiguity Analyzer::ambiguity(const Solution& sol, ActionId e) const {
    Ambiguity out;
    out.stats = ambiguity_stats(sol, e);
    const GroundHead p = hd(e, HeadShape::Permitted), np = hd(e, HeadShape::NotPermitted);
    if (!consistent(sol, e)) return out;
    out.ambiguous = !sol.cautious(p) && !sol.cautious(np) && !underspecified(sol, e);
    if (!out.ambiguous) return out;
    const GroundPolicy& gp = policy();
    const AnswerSet& m = sol.fixed();
    auto applicable = [&](RuleId r) {
        return gp.rules[r].kind == RuleKind::Defeasible && m.body_holds[r] && !m.ab_holds[r];
    };
    for (RuleId r1 : by_head_[p.index()])
        for (RuleId r2 : by_head_[np.index()])
            if (applicable(r1) && applicable(r2)) {
                IssueRecord rec = pair_record(sol, IssueKind::Ambiguity, e, p, np, r1, r2);
                rec.stats = out.stats;
                out.records.push_back(std::move(rec));
            }
    return out;
}

std::vector<IssueRecord> Analyzer::obligation_conflicts(const Solution& sol, ActionId e) const {
    std::vector<IssueRecord> out;
    auto pairs = [&](GroundHead h1, GroundHead h2) {
        for (RuleId r1 : by_head_[h1.index()])
            for (RuleId r2 : by_head_[h2.index()])
                if (sol.rules_together(r1, r2))
                    out.push_back(pair_record(sol, IssueKind::ObligationConflict, e, h1, h2, r1, r2));
    };
    const GroundHead obl = hd(e, HeadShape::Obl), obl_neg = hd(e, HeadShape::OblNeg);
    if (sol.cautious(obl) && sol.cautious(obl_neg)) pairs(obl, obl_neg);
    pairs(obl, hd(e, HeadShape::NotObl));
    pairs(obl_neg, hd(e, HeadShape::NotOblNeg));
    return out;
}

std::vector<IssueRecord> Analyzer::modality_conflicts(const Solution& sol) const {
    std::vector<IssueRecord> out;
    for (ActionId e = 0; e < policy().domain.actions.size(); ++e) {
        const GroundHead p = hd(e, HeadShape::Permitted), np = hd(e, HeadShape::NotPermitted);
        const GroundHead obl = hd(e, HeadShape::Obl), obl_neg = hd(e, HeadShape::OblNeg);
        auto level = [&](int n, GroundHead h1, GroundHead h2) {
            for (RuleId r1 : by_head_[h1.index()])
                for (RuleId r2 : by_head_[h2.index()])
                    if (sol.rules_together(r1, r2)) {
                        out.push_back(pair_record(sol, IssueKind::ModalityConflict, e, h1, h2, r1, r2));
                        out.back().urgency = n;
                    }
        };
        level(1, obl, np);
        level(2, obl_neg, p);
        for (RuleId r1 : by_head_[obl.index()])
            if (sol.rule_with_neither(r1, p, np)) {
                IssueRecord rec = pair_record(sol, IssueKind::ModalityConflict, e, obl, obl, r1, std::nullopt);
                rec.heads = {obl};
                rec.urgency = 3;
                out.push_back(std::move(rec));
            }
    }
    return out;
}

AuthClass Analyzer::classify(const Solution& sol, ActionId e) const {
    if (!consistent(sol, e)) return AuthClass::Inconsistent;
    if (sol.cautious(hd(e, HeadShape::Permitted))) return AuthClass::StronglyCompliant;
    if (sol.cautious(hd(e, HeadShape::NotPermitted))) return AuthClass::NonCompliant;
    if (underspecified(sol, e)) return AuthClass::Underspecified;
    return AuthClass::Ambiguous;
}

ComplianceClass Analyzer::classify_event(const Solution& sol, const std::vector<ActionId>& event) const {
    ComplianceClass out;
    out.strongly_compliant = true;
    out.weakly_compliant = true;
    out.non_compliant = true;
    for (ActionId e : event) {
        out.actions.push_back({e, classify(sol, e)});
        const bool p = sol.cautious(hd(e, HeadShape::Permitted));
        const bool np = sol.cautious(hd(e, HeadShape::NotPermitted));
        out.strongly_compliant = out.strongly_compliant && p;
        out.weakly_compliant = out.weakly_compliant && !np;
        out.non_compliant = out.non_compliant && np;
    }
    for (ActionId x = 0; x < policy().domain.actions.size(); ++x) {
        const bool in = std::find(event.begin(), event.end(), x) != event.end();
        if (sol.cautious(hd(x, HeadShape::Obl)) && !in) out.violated_obligations.push_back(hd(x, HeadShape::Obl));
        if (sol.cautious(hd(x, HeadShape::OblNeg)) && in) out.violated_obligations.push_back(hd(x, HeadShape::OblNeg));
    }
    return out;
}

std::vector<IssueRecord> Analyzer::all_issues(const Solution& sol) const {
    std::vector<IssueRecord> out = inconsistencies(sol);
    for (ActionId e = 0; e < policy().domain.actions.size(); ++e) {
        if (auto u = underspecification(sol, e)) out.push_back(std::move(*u));
        for (auto& r : ambiguity(sol, e).records) out.push_back(std::move(r));
        for (auto& r : obligation_conflicts(sol, e)) out.push_back(std::move(r));
    }
    for (auto& r : modality_conflicts(sol)) out.push_back(std::move(r));
    return out;
}

// ---- free-function entry points

std::vector<IssueRecord> detect_inconsistency(const ReifiedBase& base, const WorldState& state) {
    Analyzer a(base);
    return a.inconsistencies(a.solve(state));
}

std::optional<IssueRecord> detect_underspecification(const ReifiedBase& base, const WorldState& state,
                                                     ActionId action) {
    Analyzer a(base);
    return a.underspecification(a.solve(state), action);
}

Analyzer::Ambiguity detect_ambiguity(const ReifiedBase& base, const WorldState& state, ActionId action) {
    Analyzer a(base);
    return a.ambiguity(a.solve(state), action);
}

std::vector<IssueRecord> detect_obligation_conflict(const ReifiedBase& base, const WorldState& state,
                                                    ActionId action) {
    Analyzer a(base);
    return a.obligation_conflicts(a.solve(state), action);
}

std::vector<IssueRecord> detect_modality_conflicts(const ReifiedBase& base, const WorldState& state) {
    Analyzer a(base);
    return a.modality_conflicts(a.solve(state));
}

ComplianceClass classify_compliance(const ReifiedBase& base, const WorldState& state, const Event& event) {
    Analyzer a(base);
    return a.classify_event(a.solve(state), event.actions);
}

// ---- sweep

namespace {

std::string pattern_of(const GroundRule& rule, GroundLiteral lit) {
    for (std::size_t i = 0; i < rule.body.size(); ++i)
        if (rule.body[i] == lit) return rule.body_patterns.at(i);
    return "?";
}

void append_list(std::string& out, const std::vector<std::string>& items) {
    out += '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    out += ']';
}

std::string header(const IssueRecord& rec) {
    std::string key(to_string(rec.kind));
    key += '|';
    key += rec.urgency ? std::to_string(*rec.urgency) : "-";
    key += '|';
    for (const auto& h : rec.heads) key += std::to_string(static_cast<int>(h.shape));
    key += '|';
    return key;
}

}  // namespace

std::string family_key(const GroundPolicy& gp, const IssueRecord& rec) {
    std::string key = header(rec) + gp.domain.actions.at(rec.action).predicate + '|';
    std::vector<std::string> items;
    for (RuleId r : rec.rules) items.push_back(gp.rules[r].family);
    append_list(key, items);
    auto patterns = [&](RuleId r, const std::vector<GroundLiteral>& lits) {
        std::vector<std::string> ps;
        for (const auto& l : lits) ps.push_back(pattern_of(gp.rules[r], l));
        return ps;
    };
    if (!rec.rules.empty()) append_list(key, patterns(rec.rules[0], rec.pos));
    if (rec.rules.size() > 1) append_list(key, patterns(rec.rules[1], rec.neg));
    for (const auto& f : rec.failing) {
        key += gp.rules[f.rule].family;
        append_list(key, patterns(f.rule, f.literals));
        items.clear();
        for (RuleId b : f.blocked_by) items.push_back(gp.rules[b].family);
        append_list(key, items);
    }
    return key;
}

std::string instance_key(const GroundPolicy& gp, const IssueRecord& rec) {
    std::string key = header(rec) + gp.domain.actions.at(rec.action).str() + '|';
    std::vector<std::string> items;
    for (RuleId r : rec.rules) items.push_back(gp.rules[r].label);
    append_list(key, items);
    items.clear();
    for (const auto& l : rec.pos) items.push_back(gp.domain.literal_str(l));
    append_list(key, items);
    items.clear();
    for (const auto& l : rec.neg) items.push_back(gp.domain.literal_str(l));
    append_list(key, items);
    for (const auto& f : rec.failing) {
        items.clear();
        for (const auto& l : f.literals) items.push_back(gp.domain.literal_str(l));
        append_list(key, items);
    }
    return key;
}

namespace {

struct Accumulator {
    IssueRecord record;
    std::size_t positives = 0;
    std::uint64_t index = 0;
    std::set<std::string> instances;
    std::uint64_t states = 0;

    bool better_witness(std::size_t p, std::uint64_t i) const { return std::tie(p, i) < std::tie(positives, index); }
};

using AccMap = std::map<std::string, Accumulator>;

void merge_into(AccMap& into, AccMap&& from) {
    for (auto& [key, acc] : from) {
        auto it = into.find(key);
        if (it == into.end()) {
            into.emplace(key, std::move(acc));
            continue;
        }
        Accumulator& dst = it->second;
        if (dst.better_witness(acc.positives, acc.index)) {
            dst.record = std::move(acc.record);
            dst.positives = acc.positives;
            dst.index = acc.index;
        }
        dst.instances.merge(acc.instances);
        dst.states += acc.states;
    }
}

}  // namespace

SweepResult sweep(const Analyzer& analyzer, const SweepOptions& options) {
    SweepResult result;
    const GroundPolicy& gp = analyzer.policy();
    StateSpace space(gp.domain, options.pins, options.max_states);
    if (space.contradictory()) {
        result.diagnostics.push_back(
            {Severity::Error, {"--pin", 0, 0}, "contradictory pins: an atom is pinned both true and false", {}});
        return result;
    }

    const std::uint64_t total = space.candidate_count();
    const unsigned jobs = std::max(1u, options.jobs);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, total / (std::uint64_t{jobs} * 16));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> checked{0};
    std::mutex mu;
    AccMap merged;

    auto work = [&] {
        AccMap local;
        std::uint64_t local_checked = 0;
        while (true) {
            const std::uint64_t begin = next.fetch_add(chunk);
            if (begin >= total) break;
            const std::uint64_t end = std::min(total, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i) {
                auto state = space.state(i);
                if (!state) continue;
                ++local_checked;
                const std::size_t positives = state->positive_count();
                std::set<std::string> seen;
                for (auto& rec : analyzer.all_issues(analyzer.solve(*state))) {
                    const std::string fk = family_key(gp, rec);
                    Accumulator& acc = local[fk];
                    acc.instances.insert(instance_key(gp, rec));
                    if (seen.insert(fk).second) {
                        const bool first = acc.states == 0;
                        ++acc.states;
                        if (first || acc.better_witness(positives, i)) {
                            acc.record = std::move(rec);
                            acc.positives = positives;
                            acc.index = i;
                        }
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        merge_into(merged, std::move(local));
        checked += local_checked;
    };

    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }

    result.states_checked = checked;
    for (auto& [key, acc] : merged)
        result.issues.push_back({std::move(acc.record), acc.index, acc.instances.size(), acc.states});
    if (result.states_checked == 0)
        result.diagnostics.push_back(
            {Severity::Warning, {}, "no state satisfies the pins and state constraints", {}});
    return result;
}

}  // namespace aopl
