#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace aopl;
using aopl::test::data_path;
using aopl::test::ground_text;
using aopl::test::read_file;

namespace {

GroundDomain mission_domain(const std::string& extra = {}) {
    return ground_text(read_file(data_path("mission.dom")) + extra, "").domain;
}

std::vector<std::string> event_strings(const GroundDomain& d, const std::vector<Event>& events) {
    std::vector<std::string> out;
    for (const auto& e : events) {
        std::string s;
        for (ActionId a : e.actions) s += (s.empty() ? "" : " ") + d.actions[a].str();
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(States, MissionHasSixteen) {
    GroundDomain d = mission_domain();
    std::vector<Diagnostic> diags;
    auto states = enumerate_states(d, {}, diags);
    EXPECT_TRUE(diags.empty());
    ASSERT_EQ(states.size(), 16u);
    std::set<std::vector<bool>> distinct;
    for (const auto& s : states) distinct.insert(s.values());
    EXPECT_EQ(distinct.size(), 16u);
    EXPECT_EQ(states.front().positive_count(), 0u);
    EXPECT_EQ(states.back().positive_count(), 4u);
    // First atom is the most significant: all colonel(c) = false states come first.
    for (std::size_t i = 0; i < 8; ++i) EXPECT_FALSE(states[i].value(0));
}

TEST(States, ImpossibleConstraintFiltersToTwelve) {
    GroundDomain d = mission_domain("impossible colonel(C), observer(C).\n");
    std::vector<Diagnostic> diags;
    auto states = enumerate_states(d, {}, diags);
    EXPECT_EQ(states.size(), 12u);
    std::size_t brute = 0;
    for (const auto& s : aopl::test::all_states(d)) brute += !(s.value(0) && s.value(1));
    EXPECT_EQ(states.size(), brute);
    for (const auto& s : states) EXPECT_TRUE(satisfies_constraints(d, s));
}

TEST(States, ConstraintWithHead) {
    GroundDomain d = mission_domain("constraint authorized(C, M) if ordered_by_superior(C, M).\n");
    std::vector<Diagnostic> diags;
    EXPECT_EQ(enumerate_states(d, {}, diags).size(), 12u);
}

TEST(States, CountMatchesBruteForceOnRandomDomains) {
    std::mt19937 rng(3);
    for (int round = 0; round < 40; ++round) {
        int n = std::uniform_int_distribution<int>(1, 12)(rng);
        std::string dom;
        for (int i = 0; i < n; ++i) dom += "fluent f" + std::to_string(i) + ".\n";
        int a = std::uniform_int_distribution<int>(0, n - 1)(rng), b = std::uniform_int_distribution<int>(0, n - 1)(rng);
        dom += "impossible f" + std::to_string(a) + ", -f" + std::to_string(b) + ".\n";
        GroundDomain d = ground_text(dom, "").domain;
        std::vector<Diagnostic> diags;
        auto states = enumerate_states(d, {}, diags);
        std::size_t brute = 0;
        for (const auto& s : aopl::test::all_states(d)) brute += satisfies_constraints(d, s);
        EXPECT_EQ(states.size(), brute) << dom;
    }
}

TEST(States, PinsFixingAllAtoms) {
    GroundDomain d = mission_domain();
    std::vector<Diagnostic> diags;
    auto pins = resolve_pins(d, {"colonel(c)", "-observer(c)", "authorized(c,m)", "-ordered_by_superior(c,m)"}, diags);
    ASSERT_TRUE(diags.empty());
    auto states = enumerate_states(d, pins, diags);
    ASSERT_EQ(states.size(), 1u);
    EXPECT_EQ(states[0].positive_literals(d), (std::vector<std::string>{"colonel(c)", "authorized(c,m)"}));
}

TEST(States, ContradictoryPins) {
    GroundDomain d = mission_domain();
    std::vector<Diagnostic> diags;
    std::vector<GroundLiteral> pins{{0, false}, {0, true}};
    auto states = enumerate_states(d, pins, diags);
    EXPECT_TRUE(states.empty());
    ASSERT_EQ(diags.size(), 1u);
    EXPECT_EQ(diags[0].severity, Severity::Error);
}

TEST(States, PinsViolatingConstraints) {
    GroundDomain d = mission_domain("impossible colonel(C), observer(C).\n");
    std::vector<Diagnostic> diags;
    auto pins = resolve_pins(d, {"colonel(c)", "observer(c)"}, diags);
    ASSERT_TRUE(diags.empty());
    EXPECT_TRUE(enumerate_states(d, pins, diags).empty());
    EXPECT_EQ(diags.size(), 1u);
}

TEST(States, BadPins) {
    GroundDomain d = mission_domain();
    std::vector<Diagnostic> diags;
    resolve_pins(d, {"general(c)", "colonel(", "assume_comm(c,m)"}, diags);
    EXPECT_EQ(diags.size(), 3u);
    for (const auto& x : diags) EXPECT_EQ(x.severity, Severity::Error);
}

TEST(States, CeilingRefusesWithRemedies) {
    std::string dom;
    for (int i = 0; i < 12; ++i) dom += "fluent f" + std::to_string(i) + ".\n";
    GroundDomain d = ground_text(dom, "").domain;
    try {
        StateSpace space(d, {}, 1000);
        FAIL() << "expected CeilingError";
    } catch (const CeilingError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("--pin"), std::string::npos) << msg;
        EXPECT_NE(msg.find("--max-states"), std::string::npos) << msg;
        EXPECT_NE(msg.find("AOPL_LINT_MAX_STATES"), std::string::npos) << msg;
    }
    std::vector<Diagnostic> diags;
    auto pins = resolve_pins(d, {"f0", "f1", "-f2"}, diags);
    StateSpace pinned(d, pins, 1000);
    EXPECT_EQ(pinned.candidate_count(), 512u);
    EXPECT_EQ(pinned.free_atom_count(), 9u);
}

TEST(States, StableOrderAcrossRuns) {
    GroundDomain d = mission_domain("impossible colonel(C), observer(C).\n");
    std::vector<Diagnostic> diags;
    EXPECT_EQ(enumerate_states(d, {}, diags), enumerate_states(d, {}, diags));
    StateSpace space(d, {});
    std::vector<WorldState> via_index;
    for (std::uint64_t i = 0; i < space.candidate_count(); ++i)
        if (auto s = space.state(i)) via_index.push_back(*s);
    EXPECT_EQ(via_index, space.states());
}

TEST(Events, SingleAndCompound) {
    GroundDomain d = mission_domain();
    WorldState s(std::vector<bool>(4, false));
    EXPECT_EQ(event_strings(d, enumerate_events(d, s, 1)),
              (std::vector<std::string>{"assume_comm(c,m)", "authorize_comm(c,m)"}));
    EXPECT_EQ(event_strings(d, enumerate_events(d, s, 2)),
              (std::vector<std::string>{"assume_comm(c,m)", "authorize_comm(c,m)", "assume_comm(c,m) authorize_comm(c,m)"}));
    for (const auto& e : enumerate_events(d, s, 2)) EXPECT_EQ(e.state, s);
}

TEST(Events, ExecutabilityFilter) {
    GroundDomain d = mission_domain("impossible_exec assume_comm(C, M) if -authorized(C, M).\n");
    WorldState off(std::vector<bool>(4, false));
    EXPECT_EQ(event_strings(d, enumerate_events(d, off, 2)), std::vector<std::string>{"authorize_comm(c,m)"});
    WorldState on = aopl::test::make_state(d, {"authorized(c,m)"});
    EXPECT_EQ(enumerate_events(d, on, 2).size(), 3u);
    EXPECT_FALSE(executable(d, off, 0));
    EXPECT_TRUE(executable(d, on, 0));
}

TEST(StateFile, ParsesLiteralsAndComments) {
    GroundDomain d = mission_domain();
    std::vector<Diagnostic> diags;
    auto s = parse_state(d, "% a colonel\ncolonel(c)\n-observer(c).\n\nauthorized(c,m)\n", "s.lit", diags);
    ASSERT_TRUE(s) << (diags.empty() ? "" : diags[0].message);
    EXPECT_EQ(s->positive_literals(d), (std::vector<std::string>{"colonel(c)", "authorized(c,m)"}));
}

TEST(StateFile, Errors) {
    GroundDomain d = mission_domain("impossible colonel(C), observer(C).\n");
    for (const char* text : {"general(c)\n", "colonel(c)\n-colonel(c)\n", "colonel(c)\nobserver(c)\n", "colonel(\n"}) {
        std::vector<Diagnostic> diags;
        EXPECT_FALSE(parse_state(d, text, "s.lit", diags)) << text;
        ASSERT_FALSE(diags.empty()) << text;
        EXPECT_EQ(diags[0].pos.file, "s.lit");
    }
}
