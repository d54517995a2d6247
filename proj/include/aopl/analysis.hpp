#pragma once

#include "aopl/diagnostic.hpp"
#include "aopl/engine.hpp"
#include "aopl/state_space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aopl {

enum class IssueKind {
    Inconsistency,
    UnderspecCase1,
    UnderspecCase2,
    Ambiguity,
    ObligationConflict,
    ModalityConflict,
};

std::string_view to_string(IssueKind kind);
std::optional<IssueKind> issue_kind_from_string(std::string_view text);

// A rule about e that does not fire in an underspecified state.
struct FailingRule {
    RuleId rule = 0;
    std::vector<GroundLiteral> literals;  // body members that do not hold
    std::vector<RuleId> blocked_by;       // preferences that make it ab (body fully holds)

    friend bool operator==(const FailingRule&, const FailingRule&) = default;
};

struct IssueRecord {
    IssueKind kind = IssueKind::Inconsistency;
    ActionId action = 0;
    std::vector<GroundHead> heads;   // the clashing HD literals, if any
    std::vector<RuleId> rules;       // implicated rules, first then second
    std::vector<GroundLiteral> pos;  // holding body members of the first rule
    std::vector<GroundLiteral> neg;  // holding body members of the second rule
    std::vector<FailingRule> failing;
    std::optional<int> urgency;               // modality conflicts: 1 to 3
    std::optional<AmbiguityStats> stats;      // ambiguity only
    WorldState witness;

    friend bool operator==(const IssueRecord&, const IssueRecord&) = default;
};

enum class AuthClass { StronglyCompliant, NonCompliant, Underspecified, Ambiguous, Inconsistent };

std::string_view to_string(AuthClass cls);

struct ActionCompliance {
    ActionId action = 0;
    AuthClass cls = AuthClass::Underspecified;
};

struct ComplianceClass {
    std::vector<ActionCompliance> actions;  // one per e in the event
    // Event-level authorization, per Defs. of strong, weak and non-compliance.
    bool strongly_compliant = false;
    bool weakly_compliant = false;
    bool non_compliant = false;
    // Obligations: cautious obl(e) with e not in a, cautious obl(-e) with e in a.
    std::vector<GroundHead> violated_obligations;
    bool obligations_compliant() const { return violated_obligations.empty(); }
};

// Detectors over one state. Construct once per policy; calls are const and
// safe to run concurrently.
class Analyzer {
public:
    explicit Analyzer(ReifiedBase base);

    const Engine& engine() const { return engine_; }
    const ReifiedBase& base() const { return engine_.base(); }
    const GroundPolicy& policy() const { return engine_.base().policy(); }

    Solution solve(const WorldState& state) const { return engine_.solve(state); }

    // Whether no answer set holds both permitted(e) and -permitted(e).
    bool consistent(const Solution& sol, ActionId action) const;
    bool underspecified(const Solution& sol, ActionId action) const;

    std::vector<IssueRecord> inconsistencies(const Solution& sol) const;
    std::optional<IssueRecord> underspecification(const Solution& sol, ActionId action) const;
    struct Ambiguity {
        bool ambiguous = false;
        AmbiguityStats stats;
        std::vector<IssueRecord> records;  // one per pair of clashing rules
    };
    Ambiguity ambiguity(const Solution& sol, ActionId action) const;
    std::vector<IssueRecord> obligation_conflicts(const Solution& sol, ActionId action) const;
    std::vector<IssueRecord> modality_conflicts(const Solution& sol) const;

    AuthClass classify(const Solution& sol, ActionId action) const;
    ComplianceClass classify_event(const Solution& sol, const std::vector<ActionId>& event) const;

    // Every detector for every action, in a fixed order.
    std::vector<IssueRecord> all_issues(const Solution& sol) const;

private:
    std::vector<RuleId> rules_with_head(GroundHead head) const;
    std::vector<GroundLiteral> holding_body(const Solution& sol, RuleId rule) const;
    IssueRecord pair_record(const Solution& sol, IssueKind kind, ActionId action, GroundHead h1, GroundHead h2,
                            RuleId r1, std::optional<RuleId> r2) const;

    Engine engine_;
    std::vector<std::vector<RuleId>> by_head_;  // indexed by GroundHead::index()
};

std::vector<IssueRecord> detect_inconsistency(const ReifiedBase& base, const WorldState& state);
std::optional<IssueRecord> detect_underspecification(const ReifiedBase& base, const WorldState& state,
                                                     ActionId action);
Analyzer::Ambiguity detect_ambiguity(const ReifiedBase& base, const WorldState& state, ActionId action);
std::vector<IssueRecord> detect_obligation_conflict(const ReifiedBase& base, const WorldState& state,
                                                    ActionId action);
std::vector<IssueRecord> detect_modality_conflicts(const ReifiedBase& base, const WorldState& state);
ComplianceClass classify_compliance(const ReifiedBase& base, const WorldState& state, const Event& event);

struct SweepOptions {
    std::vector<GroundLiteral> pins;
    std::uint64_t max_states = kDefaultMaxStates;
    unsigned jobs = 1;
};

// One deduplicated family of issues found by a sweep. `record` is the
// instance seen in the minimal witness state.
struct SweepIssue {
    IssueRecord record;
    std::uint64_t witness_index = 0;  // candidate index of the witness state
    std::uint64_t instances = 0;      // distinct ground variants
    std::uint64_t states = 0;         // states in which some variant occurs
};

struct SweepResult {
    std::vector<SweepIssue> issues;
    std::uint64_t states_checked = 0;
    std::vector<Diagnostic> diagnostics;
};

// Runs every detector over every state. Issues are grouped by kind, urgency,
// rule families and the schematic literals involved. Throws CeilingError when
// the state space is too large.
SweepResult sweep(const Analyzer& analyzer, const SweepOptions& options);

// Grouping key used by sweep; exposed for tests.
std::string family_key(const GroundPolicy& policy, const IssueRecord& record);
// Key of one ground variant.
std::string instance_key(const GroundPolicy& policy, const IssueRecord& record);

}  // namespace aopl
