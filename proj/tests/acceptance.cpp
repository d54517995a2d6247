// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include "aopl/report.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <functional>
#include <iostream>
#include <sstream>

using namespace aopl;
using aopl::test::action_id;
using aopl::test::load_mission;
using aopl::test::make_state;

namespace {

constexpr double kCriterion1Seconds = 1.0;
constexpr double kCriterion4Seconds = 60.0;
constexpr std::size_t kCorpusSize = 200;
constexpr std::uint64_t kZeroTolerance = 0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        failures += (failures.empty() ? "" : ", ") + what;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> labels(const GroundPolicy& gp, const std::vector<RuleId>& ids) {
    std::vector<std::string> out;
    for (RuleId r : ids) out.push_back(gp.rules[r].label);
    return out;
}

std::vector<std::string> lits(const GroundDomain& d, const std::vector<GroundLiteral>& ls) {
    std::vector<std::string> out;
    for (const auto& l : ls) out.push_back(d.literal_str(l));
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

const std::vector<GroundPolicy>& corpus() {
    static const std::vector<GroundPolicy> c = aopl::test::random_corpus(kCorpusSize);
    return c;
}

// Counts from the oracle's answer sets, independent of the native engine.
struct OracleCounts {
    std::uint64_t n = 0, n_p = 0, n_np = 0, both = 0, neither = 0;
};

OracleCounts count(const std::vector<AnswerSet>& sets, ActionId e) {
    OracleCounts c;
    c.n = sets.size();
    for (const auto& m : sets) {
        const bool p = m.holds(GroundHead{e, HeadShape::Permitted});
        const bool np = m.holds(GroundHead{e, HeadShape::NotPermitted});
        c.n_p += p;
        c.n_np += np;
        c.both += p && np;
        c.neither += !p && !np;
    }
    return c;
}

// 1. Mission inconsistency in the strict variant.
void criterion1(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    GroundPolicy gp = load_mission("mission_strict.aopl");
    Analyzer a{ReifiedBase(gp)};
    SweepResult r = sweep(a, {});
    const double elapsed = seconds_since(t0);

    std::vector<const SweepIssue*> inc;
    for (const auto& i : r.issues)
        if (i.record.kind == IssueKind::Inconsistency) inc.push_back(&i);
    o.require(inc.size() == 1, "exactly one inconsistency family");
    if (inc.size() == 1) {
        const IssueRecord& rec = inc[0]->record;
        o.require(labels(gp, rec.rules) == std::vector<std::string>{"s_perm[c,m]", "s_nperm[c,m]"},
                  "pairs statements 1) and 2)");
        o.require(contains(lits(gp.domain, rec.pos), "colonel(c)"), "pos contains colonel(c)");
        o.require(contains(lits(gp.domain, rec.neg), "authorized(c,m)"), "neg contains authorized(c,m)");
        o.require(inc[0]->states == 4, "seen in 4 states");
    }
    // Independent check: every state with colonel(c) and authorized(c,m) has the clash, no other does.
    std::size_t both = 0, agree = 0;
    ReifiedBase base(gp);
    const ActionId e = action_id(gp.domain, "assume_comm(c,m)");
    for (const auto& s : aopl::test::all_states(gp.domain)) {
        const bool trigger = s.value(0) && s.value(2);
        both += trigger;
        agree += (count(oracle_answer_sets(base, s), e).both > 0) == trigger;
    }
    o.require(both == 4 && agree == 16, "oracle clash states = {colonel, authorized} states");
    o.require(elapsed < kCriterion1Seconds, "runtime under 1 s");
    o.detail << "families=" << inc.size() << " states=" << (inc.empty() ? 0 : inc[0]->states) << " time=" << elapsed
             << "s";
}

// 2. Preference resolves the conflict.
void criterion2(Outcome& o) {
    GroundPolicy gp = load_mission("mission_defeasible.aopl");
    ReifiedBase base(gp);
    Analyzer a(base);
    SweepResult r = sweep(a, {});
    std::size_t bad = 0;
    for (const auto& i : r.issues)
        bad += i.record.kind == IssueKind::Inconsistency || i.record.kind == IssueKind::Ambiguity;
    o.require(bad == 0, "no inconsistency or ambiguity records");

    const ActionId e = action_id(gp.domain, "assume_comm(c,m)");
    std::size_t colonel_states = 0, strong = 0, equal = 0;
    for (const auto& s : aopl::test::all_states(gp.domain)) {
        auto oracle = oracle_answer_sets(base, s);
        equal += answer_sets(base, s) == oracle;
        if (!s.value(0)) continue;
        ++colonel_states;
        OracleCounts c = count(oracle, e);
        strong += c.n > 0 && c.n_p == c.n && a.classify(a.solve(s), e) == AuthClass::StronglyCompliant;
    }
    o.require(strong == colonel_states && colonel_states == 8, "assume_comm strongly compliant whenever colonel(c)");
    o.require(equal == 16, "native equals oracle on all 16 states");
    o.detail << "records=" << bad << " strong=" << strong << "/" << colonel_states << " oracle_equal=" << equal
             << "/16";
}

// 3. Modality conflict levels.
void criterion3(Outcome& o) {
    GroundPolicy gp = load_mission("mission_strict.aopl");
    ReifiedBase base(gp);
    std::size_t trigger = 0, found = 0;
    for (const auto& s : aopl::test::all_states(gp.domain)) {
        if (!(s.value(2) && s.value(3))) continue;
        ++trigger;
        for (const auto& rec : detect_modality_conflicts(base, s))
            if (rec.urgency == 1 && labels(gp, rec.rules) == std::vector<std::string>{"o1[c,m]", "s_nperm[c,m]"}) {
                ++found;
                break;
            }
    }
    o.require(trigger == 4 && found == trigger, "level 1 (o1, s_nperm) in every authorized+ordered state");

    const std::string dom = "fluent f.\naction e.\n";
    struct Fixture {
        int level;
        std::string policy;
    };
    const std::vector<Fixture> fixtures = {
        {1, "rule ra: obl(e) if f.\nrule rb: !permitted(e) if f.\n"},
        {2, "rule ra: obl(-e) if f.\nrule rb: permitted(e).\n"},
        {3, "rule ra: obl(e) if f.\n"},
    };
    int matched = 0;
    for (const auto& fx : fixtures) {
        GroundPolicy g = aopl::test::ground_text(dom, fx.policy);
        auto recs = detect_modality_conflicts(ReifiedBase(g), make_state(g.domain, {"f"}));
        if (recs.size() == 1 && recs[0].urgency == fx.level) ++matched;
    }
    o.require(matched == 3, "one fixture per level");
    o.detail << "level1_states=" << found << "/" << trigger << " fixtures=" << matched << "/3";
}

// 4. Native engine equals the oracle on the random corpus.
void criterion4(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t pairs = 0, mismatches = 0;
    for (const auto& gp : corpus()) {
        ReifiedBase base(gp);
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            ++pairs;
            mismatches += answer_sets(base, s) != oracle_answer_sets(base, s);
        }
    }
    const double elapsed = seconds_since(t0);
    o.require(corpus().size() >= kCorpusSize, "at least 200 policies");
    o.require(mismatches == kZeroTolerance, "zero mismatches");
    o.require(elapsed < kCriterion4Seconds, "runtime under 60 s");
    o.detail << "policies=" << corpus().size() << " pairs=" << pairs << " mismatches=" << mismatches
             << " time=" << elapsed << "s";
}

// 5. Strong compliance never coexists with cautious -permitted(e).
void criterion5(Outcome& o) {
    std::uint64_t pairs = 0, strong = 0, violations = 0;
    for (const auto& gp : corpus()) {
        Analyzer a{ReifiedBase(gp)};
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            auto sets = oracle_answer_sets(a.base(), s);
            Solution sol = a.solve(s);
            for (ActionId e = 0; e < gp.domain.actions.size(); ++e) {
                ++pairs;
                OracleCounts c = count(sets, e);
                if (a.classify(sol, e) != AuthClass::StronglyCompliant) continue;
                ++strong;
                violations += c.n_np == c.n;
            }
        }
    }
    o.require(strong > 0, "non-vacuous");
    o.require(violations == kZeroTolerance, "zero violations");
    o.detail << "pairs=" << pairs << " strongly_compliant=" << strong << " violations=" << violations;
}

// 6. Partition over consistent policies.
void criterion6(Outcome& o) {
    std::uint64_t policies = 0, pairs = 0, bad = 0, disagree = 0;
    for (const auto& gp : corpus()) {
        Analyzer a{ReifiedBase(gp)};
        std::vector<std::pair<WorldState, std::vector<AnswerSet>>> runs;
        bool consistent = true;
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            auto sets = oracle_answer_sets(a.base(), s);
            for (ActionId e = 0; e < gp.domain.actions.size(); ++e) consistent = consistent && count(sets, e).both == 0;
            runs.emplace_back(s, std::move(sets));
        }
        if (!consistent) continue;
        ++policies;
        for (const auto& [s, sets] : runs) {
            Solution sol = a.solve(s);
            for (ActionId e = 0; e < gp.domain.actions.size(); ++e) {
                ++pairs;
                OracleCounts c = count(sets, e);
                const bool sc = c.n_p == c.n;
                const bool nc = c.n_np == c.n;
                const bool un = c.neither > 0;
                const bool amb = c.n != c.n_p && c.n != c.n_np && c.n == c.n_p + c.n_np;
                const int classes = sc + nc + un + amb;
                bad += classes != 1;
                AuthClass expected = sc ? AuthClass::StronglyCompliant
                                     : nc ? AuthClass::NonCompliant
                                     : un ? AuthClass::Underspecified
                                          : AuthClass::Ambiguous;
                disagree += a.classify(sol, e) != expected;
            }
        }
    }
    o.require(policies > 0, "non-vacuous");
    o.require(bad == 0, "exactly one class per (state, action)");
    o.require(disagree == 0, "classifier agrees with oracle");
    o.detail << "consistent_policies=" << policies << " pairs=" << pairs << " not_one_class=" << bad
             << " classifier_disagreements=" << disagree;
}

// 7. Ambiguity accounting against full enumeration.
void criterion7(Outcome& o) {
    std::uint64_t reported = 0, bad = 0;
    for (const auto& gp : corpus()) {
        Analyzer a{ReifiedBase(gp)};
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            Solution sol = a.solve(s);
            std::vector<AnswerSet> sets;
            for (ActionId e = 0; e < gp.domain.actions.size(); ++e) {
                auto amb = a.ambiguity(sol, e);
                if (!amb.ambiguous) continue;
                if (sets.empty()) sets = oracle_answer_sets(a.base(), s);
                ++reported;
                OracleCounts c = count(sets, e);
                const bool ok = c.n == c.n_p + c.n_np && c.n_p >= 1 && c.n_np >= 1 && amb.stats.n == c.n &&
                                amb.stats.n_p == c.n_p && amb.stats.n_np == c.n_np;
                bad += !ok;
            }
        }
    }
    o.require(reported > 0, "non-vacuous");
    o.require(bad == 0, "n = n_p + n_np with both at least 1");
    o.detail << "ambiguities=" << reported << " violations=" << bad;
}

// 8. Underspecification templates.
void criterion8(Outcome& o) {
    GroundPolicy gp = aopl::test::ground_text(aopl::test::read_file(aopl::test::data_path("mission.dom")) +
                                                  "action do_nothing(commander).\n",
                                              aopl::test::read_file(aopl::test::data_path("mission_strict.aopl")));
    ReifiedBase base(gp);
    WorldState s = make_state(gp.domain, {"colonel(c)"});
    auto c1 = detect_underspecification(base, s, action_id(gp.domain, "do_nothing(c)"));
    const std::string want1 = "There are no authorization rules about do_nothing(c)";
    o.require(c1 && to_report_issue(gp, *c1).explanation == want1, "Case 1 template");

    auto c2 = detect_underspecification(base, s, action_id(gp.domain, "authorize_comm(c,m)"));
    const std::string want2 =
        "Rule s1[c,m] about action authorize_comm(c,m) (stating that \"A military observer can never authorize a "
        "mission.\") is rendered inapplicable by the fact that fluent(s) observer(c) do not hold in this state.";
    o.require(c2 && to_report_issue(gp, *c2).explanation == want2, "Case 2 template");

    // Exactly the non-holding body literals, over every state.
    GroundPolicy g = aopl::test::ground_text("fluent f.\nfluent g.\nfluent h.\naction e.\n",
                                             "rule r: permitted(e) if f, -g, h.\n");
    ReifiedBase gb(g);
    std::size_t checked = 0, exact = 0;
    for (const auto& st : aopl::test::all_states(g.domain)) {
        auto rec = detect_underspecification(gb, st, 0);
        if (!rec) continue;
        ++checked;
        std::vector<GroundLiteral> expected;
        for (const auto& l : g.rules[0].body)
            if (!st.holds(l)) expected.push_back(l);
        exact += rec->failing.size() == 1 && rec->failing[0].literals == expected;
    }
    o.require(checked == 7 && exact == checked, "failing literals exact");
    o.detail << "case2_states=" << exact << "/" << checked;
}

// 9. Golden files and, when available, the external solver.
void criterion9(Outcome& o) {
    std::size_t stable = 0;
    for (const std::string stem : {"mission_strict", "mission_defeasible"}) {
        GroundPolicy gp = load_mission(stem + ".aopl");
        const std::string dir = AOPL_TEST_GOLDEN;
        const std::string lp = emit_asp(gp, AspVariant::Lp), rei = emit_asp(gp, AspVariant::Rei);
        stable += lp == aopl::test::read_file(dir + "/" + stem + ".lp") &&
                  rei == aopl::test::read_file(dir + "/" + stem + ".rei.lp") &&
                  lp == emit_asp(load_mission(stem + ".aopl"), AspVariant::Lp);
    }
    o.require(stable == 2, "golden files byte-stable");
    const std::string cmd = std::string("python3 ") + AOPL_CROSSCHECK + " " + AOPL_LINT_BIN + " " + AOPL_TEST_DATA +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code == 77) {
        o.detail << "golden=" << stable << "/2 solver=absent";
    } else {
        o.require(code == 0, "external solver agrees on all 16 states");
        o.detail << "golden=" << stable << "/2 solver=" << (code == 0 ? "agrees" : "disagrees");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"1 mission inconsistency", criterion1},   {"2 preference resolution", criterion2},
        {"3 modality levels", criterion3},         {"4 oracle equivalence", criterion4},
        {"5 strong implies weak", criterion5},      {"6 authorization partition", criterion6},
        {"7 ambiguity accounting", criterion7},     {"8 underspecification templates", criterion8},
        {"9 emitter golden files", criterion9},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << name << ": " << o.detail.str();
        if (!o.pass) std::cout << " (failed: " << o.failures << ')';
        std::cout << '\n';
        failed += !o.pass;
    }
    return failed;
}
