#pragma once

#include "aopl/normal_program.hpp"
#include "aopl/reified.hpp"
#include "aopl/world_state.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aopl {

// One answer set of rei_lp(P, σ), restricted to its holds/1 atoms.
struct AnswerSet {
    WorldState state;              // holds(l) for l in σ
    std::vector<bool> rule_holds;  // holds(r), by RuleId
    std::vector<bool> body_holds;  // holds(b(r))
    std::vector<bool> ab_holds;    // holds(ab(r))
    std::vector<bool> head_holds;  // holds(hd), by GroundHead::index()

    bool holds(GroundHead head) const { return head_holds.at(head.index()); }
    bool holds(RuleId rule) const { return rule_holds.at(rule); }

    // Sorted holds(...) atoms in ASP term syntax.
    std::vector<std::string> atoms(const ReifiedBase& base) const;
    bool contains(const ReifiedBase& base, const std::string& holds_atom) const;

    friend auto operator<=>(const AnswerSet& a, const AnswerSet& b) {
        if (auto c = a.rule_holds <=> b.rule_holds; c != 0) return c;
        if (auto c = a.head_holds <=> b.head_holds; c != 0) return c;
        if (auto c = a.ab_holds <=> b.ab_holds; c != 0) return c;
        if (auto c = a.body_holds <=> b.body_holds; c != 0) return c;
        return a.state.values() <=> b.state.values();
    }
    friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

// Counts over the answer sets of one state, for one action e.
struct AmbiguityStats {
    std::uint64_t n = 0;     // answer sets
    std::uint64_t n_p = 0;   // containing holds(permitted(e))
    std::uint64_t n_np = 0;  // containing holds(-permitted(e))

    friend bool operator==(const AmbiguityStats&, const AmbiguityStats&) = default;
};

// Answer sets of rei_lp(P, σ) in factored form. Defeasible rules whose heads
// form a complementary pair (permitted/-permitted, obl(h)/-obl(h)) interact
// only with each other, so every answer set is `fixed` plus one option from
// each choice group.
class Solution {
public:
    struct Option {
        std::vector<RuleId> fired;  // defeasible rules that hold under this option
        bool positive = false;      // heads fired: the group's first head
        bool negative = false;      //              the group's second head
    };
    struct Group {
        GroundHead first;   // permitted(e), obl(e) or obl(-e)
        GroundHead second;  // its complement
        std::vector<Option> options;
    };

    // Everything common to all answer sets, including defeasible rules of
    // groups that have a single option.
    const AnswerSet& fixed() const { return fixed_; }
    const std::vector<Group>& choices() const { return choices_; }

    // Number of answer sets, saturating at UINT64_MAX.
    std::uint64_t count() const;
    // Throws SolverLimitError past `limit` answer sets.
    std::vector<AnswerSet> expand(std::uint64_t limit = 1u << 16) const;

    bool brave(GroundHead head) const;
    bool cautious(GroundHead head) const;
    // Whether the head holds in an answer set together with the other.
    bool brave_pair(GroundHead a, GroundHead b) const;
    // Number of answer sets containing `head`.
    std::uint64_t count_with(GroundHead head) const;
    // Whether some answer set contains neither head (same group or not).
    bool brave_neither(GroundHead a, GroundHead b) const;

    // A rule holds in some / every answer set.
    bool rule_brave(RuleId rule) const;
    bool rule_cautious(RuleId rule) const;
    // Both rules hold in some common answer set.
    bool rules_together(RuleId a, RuleId b) const;
    // Rule `a` holds in an answer set where neither head holds.
    bool rule_with_neither(RuleId a, GroundHead x, GroundHead y) const;

private:
    friend class Engine;

    const Group* group_of(GroundHead head) const;
    const Group* group_of_rule(RuleId rule) const;
    static bool option_has(const Group& g, const Option& o, GroundHead head);
    static bool option_fires(const Option& o, RuleId rule);

    AnswerSet fixed_;
    std::vector<Group> choices_;
};

// Native solver for rei_lp(P, σ) under the fragment's restriction that rule
// bodies mention only state literals.
class Engine {
public:
    explicit Engine(ReifiedBase base);

    const ReifiedBase& base() const { return base_; }
    Solution solve(const WorldState& state) const;

private:
    ReifiedBase base_;
    std::vector<RuleId> strict_;
    std::vector<RuleId> defeasible_;
    std::vector<RuleId> preferences_;
};

// Every answer set, in a fixed order.
std::vector<AnswerSet> answer_sets(const ReifiedBase& base, const WorldState& state);

// Cautious entailment of a holds(...) atom: true iff it is in every answer set.
bool entails(const ReifiedBase& base, const WorldState& state, const std::string& holds_atom);
bool entails(const ReifiedBase& base, const WorldState& state, GroundHead head);
// Brave entailment: in at least one answer set.
bool entails_brave(const ReifiedBase& base, const WorldState& state, const std::string& holds_atom);

AmbiguityStats ambiguity_stats(const Solution& solution, ActionId action);

// Reference solver: grounds the policy-independent rules of rei_lp over the
// fact base by matching term strings and solves with NormalProgram. Throws
// SolverLimitError when too many atoms need guessing.
std::vector<AnswerSet> oracle_answer_sets(const ReifiedBase& base, const WorldState& state,
                                          std::size_t max_guess_atoms = 20);

// Answer sets of lp(P, σ) by NormalProgram, projected onto HD (indexed by
// GroundHead::index()), sorted. Empty when lp(P, σ) is inconsistent.
std::vector<std::vector<bool>> lp_answer_sets(const GroundPolicy& policy, const WorldState& state,
                                              std::size_t max_guess_atoms = 20);

// HD projection of rei answer sets, sorted, duplicates kept.
std::vector<std::vector<bool>> hd_projection(const std::vector<AnswerSet>& sets);

}  // namespace aopl
