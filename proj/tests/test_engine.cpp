#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace aopl;
using aopl::test::head;
using aopl::test::load_mission;
using aopl::test::make_state;

namespace {

const std::vector<std::string> kColonelAuthorized = {"colonel(c)", "authorized(c,m)"};

}  // namespace

TEST(Engine, StrictMissionHasOneInconsistentAnswerSet) {
    ReifiedBase base(load_mission("mission_strict.aopl"));
    WorldState s = make_state(base.domain(), kColonelAuthorized);
    auto sets = answer_sets(base, s);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_TRUE(sets[0].contains(base, "holds(permitted(assume_comm(c,m)))"));
    EXPECT_TRUE(sets[0].contains(base, "holds(neg(permitted(assume_comm(c,m))))"));
}

TEST(Engine, PreferenceResolvesConflict) {
    ReifiedBase base(load_mission("mission_defeasible.aopl"));
    WorldState s = make_state(base.domain(), kColonelAuthorized);
    auto sets = answer_sets(base, s);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_TRUE(sets[0].contains(base, "holds(ab(d1(c,m)))"));
    EXPECT_TRUE(sets[0].contains(base, "holds(permitted(assume_comm(c,m)))"));
    EXPECT_FALSE(sets[0].contains(base, "holds(neg(permitted(assume_comm(c,m))))"));
}

TEST(Engine, NoPreferenceGivesTwoAnswerSets) {
    ReifiedBase base(load_mission("mission_nopref.aopl"));
    WorldState s = make_state(base.domain(), kColonelAuthorized);
    auto sets = answer_sets(base, s);
    ASSERT_EQ(sets.size(), 2u);
    GroundHead p = head(base.domain(), HeadShape::Permitted, "assume_comm(c,m)");
    EXPECT_NE(sets[0].holds(p), sets[1].holds(p));
    for (const auto& m : sets) EXPECT_NE(m.holds(p), m.holds(p.opposite()));
}

TEST(Engine, Entails) {
    ReifiedBase pref(load_mission("mission_defeasible.aopl"));
    ReifiedBase nopref(load_mission("mission_nopref.aopl"));
    WorldState s = make_state(pref.domain(), kColonelAuthorized);
    const std::string q = "holds(permitted(assume_comm(c,m)))";
    EXPECT_TRUE(entails(pref, s, q));
    EXPECT_FALSE(entails(nopref, s, q));
    EXPECT_TRUE(entails_brave(nopref, s, q));
    EXPECT_FALSE(entails(nopref, s, head(nopref.domain(), HeadShape::Permitted, "assume_comm(c,m)")));
}

TEST(Engine, StateLiteralsAreEntailed) {
    for (const char* f : {"mission_strict.aopl", "mission_defeasible.aopl", "mission_nopref.aopl"}) {
        ReifiedBase base(load_mission(f));
        for (const auto& s : aopl::test::all_states(base.domain())) {
            for (AtomId a = 0; a < s.size(); ++a) {
                GroundLiteral lit{a, !s.value(a)};
                EXPECT_TRUE(entails(base, s, "holds(" + base.literal_term(lit) + ")"));
                EXPECT_FALSE(entails_brave(base, s, "holds(" + base.literal_term({a, s.value(a)}) + ")"));
            }
        }
    }
}

TEST(Engine, OracleMatchesOnMission) {
    for (const char* f : {"mission_strict.aopl", "mission_defeasible.aopl", "mission_nopref.aopl"}) {
        ReifiedBase base(load_mission(f));
        auto states = aopl::test::all_states(base.domain());
        ASSERT_EQ(states.size(), 16u);
        for (const auto& s : states) {
            auto native = answer_sets(base, s);
            auto oracle = oracle_answer_sets(base, s);
            ASSERT_EQ(native.size(), oracle.size()) << f;
            for (std::size_t i = 0; i < native.size(); ++i)
                EXPECT_EQ(native[i].atoms(base), oracle[i].atoms(base)) << f;
            EXPECT_EQ(native, oracle) << f;
        }
    }
}

TEST(Engine, EmptyPolicyHasOneAnswerSet) {
    GroundPolicy gp = aopl::test::ground_text("fluent f.\nfluent g.\naction go.\n", "");
    ReifiedBase base(gp);
    for (const auto& s : aopl::test::all_states(gp.domain)) {
        auto sets = answer_sets(base, s);
        ASSERT_EQ(sets.size(), 1u);
        EXPECT_EQ(sets[0].atoms(base).size(), 2u);
        EXPECT_EQ(oracle_answer_sets(base, s), sets);
    }
}

TEST(Engine, OracleMatchesOnRandomCorpus) {
    auto corpus = aopl::test::random_corpus(200);
    std::size_t compared = 0;
    for (const auto& gp : corpus) {
        ReifiedBase base(gp);
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            ASSERT_EQ(answer_sets(base, s), oracle_answer_sets(base, s)) << emit_asp(gp, AspVariant::Lp);
            ++compared;
        }
    }
    EXPECT_GT(compared, 200u);
}

TEST(Engine, StabilityInvariant) {
    for (const auto& gp : aopl::test::random_corpus(200)) {
        ReifiedBase base(gp);
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            for (const auto& m : answer_sets(base, s)) {
                for (RuleId r = 0; r < gp.rules.size(); ++r) {
                    const auto& rule = gp.rules[r];
                    if (rule.kind != RuleKind::Defeasible) continue;
                    bool applicable = s.holds_all(rule.body) && !m.ab_holds[r];
                    bool expected = applicable && !m.holds(rule.head->opposite());
                    EXPECT_EQ(m.holds(r), expected) << rule.label;
                }
            }
        }
    }
}

TEST(Engine, NoDefeasibleRulesMeansOneAnswerSet) {
    std::mt19937 rng(31);
    int checked = 0;
    while (checked < 100) {
        ParsedUnit u = aopl::test::random_policy(rng);
        for (auto& r : u.policy.rules) r.kind = RuleKind::Strict;
        std::erase_if(u.policy.rules, [](const PolicyRule& r) { return !r.head; });
        GroundPolicy gp = aopl::test::ground_unit(u);
        ReifiedBase base(gp);
        for (const auto& s : aopl::test::all_states(gp.domain)) EXPECT_EQ(answer_sets(base, s).size(), 1u);
        ++checked;
    }
}

TEST(Engine, LpProjectionMatchesWhenConsistent) {
    std::size_t consistent = 0, inconsistent = 0;
    for (const auto& gp : aopl::test::random_corpus(200)) {
        ReifiedBase base(gp);
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            auto rei = hd_projection(answer_sets(base, s));
            auto lp = lp_answer_sets(gp, s);
            // lp has no answer set exactly when some rei answer set holds a complementary pair.
            bool clash = false;
            for (const auto& row : rei)
                for (std::size_t i = 0; i < row.size(); ++i)
                    if (row[i] && row[GroundHead::from_index(i).opposite().index()]) clash = true;
            if (lp.empty()) {
                EXPECT_TRUE(clash);
                ++inconsistent;
            } else {
                EXPECT_FALSE(clash);
                EXPECT_EQ(lp, rei);
                ++consistent;
            }
        }
    }
    EXPECT_GT(consistent, 0u);
    EXPECT_GT(inconsistent, 0u);
}

TEST(Engine, SolutionQueriesAgreeWithExpansion) {
    for (const auto& gp : aopl::test::random_corpus(100, 77)) {
        Engine engine{ReifiedBase(gp)};
        for (const auto& s : aopl::test::all_states(gp.domain)) {
            Solution sol = engine.solve(s);
            auto sets = sol.expand();
            ASSERT_EQ(sol.count(), sets.size());
            for (auto h : gp.head_universe()) {
                auto with = std::count_if(sets.begin(), sets.end(), [&](const AnswerSet& m) { return m.holds(h); });
                EXPECT_EQ(sol.count_with(h), static_cast<std::uint64_t>(with));
                EXPECT_EQ(sol.brave(h), with > 0);
                EXPECT_EQ(sol.cautious(h), static_cast<std::size_t>(with) == sets.size());
                for (auto g : gp.head_universe()) {
                    bool pair = std::any_of(sets.begin(), sets.end(), [&](const AnswerSet& m) { return m.holds(h) && m.holds(g); });
                    bool neither = std::any_of(sets.begin(), sets.end(), [&](const AnswerSet& m) { return !m.holds(h) && !m.holds(g); });
                    EXPECT_EQ(sol.brave_pair(h, g), pair);
                    EXPECT_EQ(sol.brave_neither(h, g), neither);
                }
            }
            for (RuleId r = 0; r < gp.rules.size(); ++r) {
                auto with = std::count_if(sets.begin(), sets.end(), [&](const AnswerSet& m) { return m.holds(r); });
                EXPECT_EQ(sol.rule_brave(r), with > 0);
                EXPECT_EQ(sol.rule_cautious(r), static_cast<std::size_t>(with) == sets.size());
                for (RuleId q = 0; q < gp.rules.size(); ++q) {
                    bool together = std::any_of(sets.begin(), sets.end(), [&](const AnswerSet& m) { return m.holds(r) && m.holds(q); });
                    EXPECT_EQ(sol.rules_together(r, q), together);
                }
            }
        }
    }
}

TEST(NormalProgram, StableModels) {
    NormalProgram p;
    p.add_rule("a", {}, {"b"});
    p.add_rule("b", {}, {"a"});
    p.add_rule("c", {"a"});
    auto models = p.answer_sets();
    EXPECT_EQ(models, (std::vector<std::vector<std::string>>{{"a", "c"}, {"b"}}));
    p.add_constraint({"c"});
    EXPECT_EQ(p.answer_sets(), (std::vector<std::vector<std::string>>{{"b"}}));
}

TEST(NormalProgram, OddLoopHasNoModel) {
    NormalProgram p;
    p.add_rule("a", {}, {"a"});
    EXPECT_TRUE(p.answer_sets().empty());
}

TEST(NormalProgram, RefusesLargeGuesses) {
    NormalProgram p;
    for (int i = 0; i < 8; ++i) p.add_rule("a" + std::to_string(i), {}, {"b" + std::to_string(i)});
    EXPECT_EQ(p.guess_atom_count(), 8u);
    EXPECT_THROW(p.answer_sets(4), SolverLimitError);
    EXPECT_EQ(p.answer_sets(8).size(), 1u);
}
