#include "aopl/report.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace aopl {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string quoted_rule(const ReportIssue& issue, std::size_t i) {
    return '"' + issue.texts.at(i) + "\" (" + issue.rules.at(i) + ')';
}

}  // namespace

std::string urgency_tag(int urgency) {
    switch (urgency) {
        case 1: return "1 (most needing of re-consideration)";
        case 3: return "3 (least urgent)";
        default: return std::to_string(urgency);
    }
}

ReportIssue to_report_issue(const GroundPolicy& gp, const IssueRecord& rec) {
    const GroundDomain& d = gp.domain;
    ReportIssue out;
    out.kind = rec.kind;
    out.action = d.actions.at(rec.action).str();
    for (const auto& h : rec.heads) out.heads.push_back(d.head_str(h));
    for (RuleId r : rec.rules) {
        out.rules.push_back(gp.rules[r].label);
        out.families.push_back(gp.rules[r].family);
        out.texts.push_back(gp.describe(r));
    }
    for (const auto& l : rec.pos) out.pos.push_back(d.literal_str(l));
    for (const auto& l : rec.neg) out.neg.push_back(d.literal_str(l));
    for (const auto& f : rec.failing) {
        ReportFailing rf{gp.rules[f.rule].label, gp.describe(f.rule), {}, {}};
        for (const auto& l : f.literals) rf.literals.push_back(d.literal_str(l));
        for (RuleId b : f.blocked_by) rf.blocked_by.push_back(gp.rules[b].label);
        out.failing.push_back(std::move(rf));
    }
    out.urgency = rec.urgency;
    out.stats = rec.stats;
    out.witness = rec.witness.positive_literals(d);
    out.explanation = explain(out);
    return out;
}

std::string explain(const ReportIssue& issue) {
    std::ostringstream os;
    const std::string& e = issue.action;
    switch (issue.kind) {
        case IssueKind::Inconsistency:
            os << "Action " << e << " is both permitted and not permitted: " << quoted_rule(issue, 0)
               << " conflicts with " << quoted_rule(issue, 1) << '.';
            if (!issue.pos.empty()) os << "\nContributing positively: " << join(issue.pos) << '.';
            if (!issue.neg.empty()) os << "\nContributing negatively: " << join(issue.neg) << '.';
            break;
        case IssueKind::UnderspecCase1:
            os << "There are no authorization rules about " << e;
            break;
        case IssueKind::UnderspecCase2:
            for (std::size_t i = 0; i < issue.failing.size(); ++i) {
                const auto& f = issue.failing[i];
                if (i) os << '\n';
                os << "Rule " << f.rule << " about action " << e << " (stating that \"" << f.text << "\") ";
                if (!f.literals.empty())
                    os << "is rendered inapplicable by the fact that fluent(s) " << join(f.literals)
                       << " do not hold in this state.";
                else
                    os << "is overridden by preference(s) " << join(f.blocked_by) << '.';
            }
            break;
        case IssueKind::Ambiguity:
            os << "Action " << e << " is ambiguous: " << quoted_rule(issue, 0) << " and " << quoted_rule(issue, 1)
               << " both apply and neither is preferred.";
            if (issue.stats)
                os << "\nAnswer sets: n = " << issue.stats->n << ", n_p = " << issue.stats->n_p
                   << ", n_np = " << issue.stats->n_np << '.';
            break;
        case IssueKind::ObligationConflict:
            os << "Conflicting obligations about " << e << ": " << quoted_rule(issue, 0) << " derives "
               << issue.heads.at(0) << " while " << quoted_rule(issue, 1) << " derives " << issue.heads.at(1) << '.';
            break;
        case IssueKind::ModalityConflict:
            os << "Urgency " << urgency_tag(issue.urgency.value_or(0)) << ": " << quoted_rule(issue, 0) << " derives "
               << issue.heads.at(0);
            if (issue.rules.size() > 1)
                os << " while " << quoted_rule(issue, 1) << " derives " << issue.heads.at(1) << '.';
            else
                os << " while " << e << " is neither permitted nor forbidden.";
            break;
    }
    return os.str();
}

void finalize(AnalysisReport& report) {
    std::stable_sort(report.issues.begin(), report.issues.end(), [](const ReportIssue& a, const ReportIssue& b) {
        return std::tie(a.kind, a.urgency, a.rules, a.action, a.explanation) <
               std::tie(b.kind, b.urgency, b.rules, b.action, b.explanation);
    });
    report.counts_by_kind.clear();
    report.counts_by_urgency.clear();
    for (auto k : {IssueKind::Inconsistency, IssueKind::UnderspecCase1, IssueKind::UnderspecCase2,
                   IssueKind::Ambiguity, IssueKind::ObligationConflict, IssueKind::ModalityConflict})
        report.counts_by_kind[std::string(to_string(k))] = 0;
    for (const char* u : {"1", "2", "3"}) report.counts_by_urgency[u] = 0;
    for (const auto& i : report.issues) {
        ++report.counts_by_kind[std::string(to_string(i.kind))];
        if (i.urgency) ++report.counts_by_urgency[std::to_string(*i.urgency)];
    }
}

AnalysisReport build_report(const GroundPolicy& gp, const SweepResult& result, std::vector<InputDigest> inputs) {
    AnalysisReport report;
    report.inputs = std::move(inputs);
    report.states_checked = result.states_checked;
    for (const auto& si : result.issues) {
        ReportIssue issue = to_report_issue(gp, si.record);
        issue.instances = si.instances;
        issue.states = si.states;
        report.issues.push_back(std::move(issue));
    }
    finalize(report);
    return report;
}

std::string render_text(const AnalysisReport& report) {
    std::ostringstream os;
    os << report.tool << ' ' << report.version << ": " << report.states_checked << " state(s) checked, "
       << report.issues.size() << " issue(s)\n";
    for (const auto& in : report.inputs) os << in.role << ": " << in.path << " (sha256 " << in.sha256 << ")\n";
    for (const auto& i : report.issues) {
        os << '\n' << '[' << to_string(i.kind);
        if (i.urgency) os << ", urgency " << *i.urgency;
        os << "] " << i.action;
        if (!i.rules.empty()) os << ": " << join(i.rules);
        os << '\n';
        std::istringstream lines(i.explanation);
        for (std::string line; std::getline(lines, line);) os << "  " << line << '\n';
        if (i.witness.empty())
            os << "  witness state: all atoms false\n";
        else
            os << "  witness state: " << join(i.witness) << " (all other atoms false)\n";
        os << "  seen in " << i.states << " state(s), " << i.instances << " ground instance(s)\n";
    }
    os << "\nsummary:";
    bool first = true;
    for (const auto& [kind, n] : report.counts_by_kind) {
        os << (first ? " " : ", ") << kind << ' ' << n;
        first = false;
    }
    os << "\nby urgency:";
    for (const auto& [u, n] : report.counts_by_urgency) os << ' ' << urgency_tag(std::stoi(u)) << ": " << n << ';';
    os << '\n';
    return os.str();
}

std::string render_json(const AnalysisReport& report) {
    json j;
    j["schema_version"] = report.schema_version;
    j["tool"] = report.tool;
    j["version"] = report.version;
    j["inputs"] = json::array();
    for (const auto& in : report.inputs) j["inputs"].push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
    j["states_checked"] = report.states_checked;
    j["summary"] = {{"by_kind", report.counts_by_kind}, {"by_urgency", report.counts_by_urgency}};
    j["issues"] = json::array();
    for (const auto& i : report.issues) {
        json ji;
        ji["kind"] = std::string(to_string(i.kind));
        ji["action"] = i.action;
        ji["heads"] = i.heads;
        ji["rules"] = i.rules;
        ji["families"] = i.families;
        ji["texts"] = i.texts;
        ji["pos"] = i.pos;
        ji["neg"] = i.neg;
        ji["failing"] = json::array();
        for (const auto& f : i.failing)
            ji["failing"].push_back(
                {{"rule", f.rule}, {"text", f.text}, {"literals", f.literals}, {"blocked_by", f.blocked_by}});
        ji["urgency"] = i.urgency ? json(*i.urgency) : json(nullptr);
        ji["stats"] = i.stats ? json{{"n", i.stats->n}, {"n_p", i.stats->n_p}, {"n_np", i.stats->n_np}} : json(nullptr);
        ji["witness"] = i.witness;
        ji["instances"] = i.instances;
        ji["states"] = i.states;
        ji["explanation"] = i.explanation;
        j["issues"].push_back(std::move(ji));
    }
    return j.dump(2) + '\n';
}

AnalysisReport parse_json(const std::string& text) {
    AnalysisReport r;
    try {
        const json j = json::parse(text);
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kSchemaVersion)
            throw std::runtime_error("unsupported schema_version " + std::to_string(r.schema_version));
        r.tool = j.at("tool").get<std::string>();
        r.version = j.at("version").get<std::string>();
        for (const auto& in : j.at("inputs"))
            r.inputs.push_back({in.at("role").get<std::string>(), in.at("path").get<std::string>(),
                                in.at("sha256").get<std::string>()});
        r.states_checked = j.at("states_checked").get<std::uint64_t>();
        r.counts_by_kind = j.at("summary").at("by_kind").get<std::map<std::string, std::uint64_t>>();
        r.counts_by_urgency = j.at("summary").at("by_urgency").get<std::map<std::string, std::uint64_t>>();
        for (const auto& ji : j.at("issues")) {
            ReportIssue i;
            auto kind = issue_kind_from_string(ji.at("kind").get<std::string>());
            if (!kind) throw std::runtime_error("unknown issue kind " + ji.at("kind").get<std::string>());
            i.kind = *kind;
            i.action = ji.at("action").get<std::string>();
            i.heads = ji.at("heads").get<std::vector<std::string>>();
            i.rules = ji.at("rules").get<std::vector<std::string>>();
            i.families = ji.at("families").get<std::vector<std::string>>();
            i.texts = ji.at("texts").get<std::vector<std::string>>();
            i.pos = ji.at("pos").get<std::vector<std::string>>();
            i.neg = ji.at("neg").get<std::vector<std::string>>();
            for (const auto& f : ji.at("failing"))
                i.failing.push_back({f.at("rule").get<std::string>(), f.at("text").get<std::string>(),
                                     f.at("literals").get<std::vector<std::string>>(),
                                     f.at("blocked_by").get<std::vector<std::string>>()});
            if (!ji.at("urgency").is_null()) i.urgency = ji.at("urgency").get<int>();
            if (!ji.at("stats").is_null()) {
                const auto& s = ji.at("stats");
                i.stats = AmbiguityStats{s.at("n").get<std::uint64_t>(), s.at("n_p").get<std::uint64_t>(),
                                         s.at("n_np").get<std::uint64_t>()};
            }
            i.witness = ji.at("witness").get<std::vector<std::string>>();
            i.instances = ji.at("instances").get<std::uint64_t>();
            i.states = ji.at("states").get<std::uint64_t>();
            i.explanation = ji.at("explanation").get<std::string>();
            r.issues.push_back(std::move(i));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
    return r;
}

}  // namespace aopl
