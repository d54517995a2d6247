#pragma once

#include "aopl/analysis.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aopl {

inline constexpr const char* kToolName = "aopl-lint";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ReportFailing {
    std::string rule;
    std::string text;
    std::vector<std::string> literals;
    std::vector<std::string> blocked_by;

    friend bool operator==(const ReportFailing&, const ReportFailing&) = default;
};

// An issue with every reference resolved to text, ready for rendering.
struct ReportIssue {
    IssueKind kind = IssueKind::Inconsistency;
    std::string action;
    std::vector<std::string> heads;
    std::vector<std::string> rules;     // ground labels
    std::vector<std::string> families;  // schematic labels
    std::vector<std::string> texts;     // one per rule
    std::vector<std::string> pos;
    std::vector<std::string> neg;
    std::vector<ReportFailing> failing;
    std::optional<int> urgency;
    std::optional<AmbiguityStats> stats;
    std::vector<std::string> witness;  // true atoms of the witness state; all others false
    std::uint64_t instances = 1;
    std::uint64_t states = 1;
    std::string explanation;

    friend bool operator==(const ReportIssue&, const ReportIssue&) = default;
};

struct InputDigest {
    std::string role;  // domain | policy
    std::string path;
    std::string sha256;

    friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

struct AnalysisReport {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    int schema_version = kSchemaVersion;
    std::vector<InputDigest> inputs;
    std::uint64_t states_checked = 0;
    std::vector<ReportIssue> issues;
    std::map<std::string, std::uint64_t> counts_by_kind;     // every kind, zeros included
    std::map<std::string, std::uint64_t> counts_by_urgency;  // "1", "2", "3"

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

std::string sha256_hex(const std::string& bytes);

ReportIssue to_report_issue(const GroundPolicy& policy, const IssueRecord& record);

// The human-readable explanation of an issue.
std::string explain(const ReportIssue& issue);
std::string urgency_tag(int urgency);

// Sorts issues (kind, urgency, rule labels, action) and fills in counts.
AnalysisReport build_report(const GroundPolicy& policy, const SweepResult& result, std::vector<InputDigest> inputs);
void finalize(AnalysisReport& report);

std::string render_text(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report);
// Inverse of render_json; throws std::runtime_error on malformed input.
AnalysisReport parse_json(const std::string& text);

}  // namespace aopl
