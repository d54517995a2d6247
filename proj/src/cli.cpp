#include "aopl/cli.hpp"

#include "aopl/analysis.hpp"
#include "aopl/parser.hpp"
#include "aopl/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace aopl {

std::vector<std::string> split_top_level(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
            continue;
        }
        if (c != ' ') cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

namespace {

struct Inputs {
    GroundPolicy policy;
    std::vector<InputDigest> digests;
};

void report(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) err << format_diagnostic(d) << '\n';
}

std::optional<SourceFile> read(const std::string& path, std::ostream& err) {
    try {
        return SourceFile::load(path);
    } catch (const std::exception& e) {
        err << path << ": error: " << e.what() << '\n';
        return std::nullopt;
    }
}

std::optional<ParsedUnit> parse_file(const SourceFile& src, std::ostream& err) {
    ParseResult r = parse(src);
    report(err, r.diagnostics);
    if (!r.ok()) return std::nullopt;
    return std::move(*r.unit);
}

// Parses, validates and grounds the inputs; prints diagnostics.
std::optional<Inputs> load(const std::string& dom_path, const std::optional<std::string>& pol_path,
                           std::ostream& err) {
    Inputs in;
    auto dom = read(dom_path, err);
    if (!dom) return std::nullopt;
    in.digests.push_back({"domain", dom_path, sha256_hex(dom->text())});
    auto unit = parse_file(*dom, err);
    if (!unit) return std::nullopt;
    if (pol_path) {
        auto pol = read(*pol_path, err);
        if (!pol) return std::nullopt;
        in.digests.push_back({"policy", *pol_path, sha256_hex(pol->text())});
        auto pu = parse_file(*pol, err);
        if (!pu) return std::nullopt;
        merge(*unit, std::move(*pu));
    }
    auto diags = validate(unit->policy, unit->domain);
    auto warnings = lint(unit->policy);
    report(err, diags);
    report(err, warnings);
    if (has_errors(diags)) return std::nullopt;
    GroundingResult g = ground(unit->policy, unit->domain);
    report(err, g.diagnostics);
    if (!g.ok()) return std::nullopt;
    in.policy = std::move(*g.policy);
    return in;
}

std::optional<WorldState> load_state(const GroundDomain& domain, const std::string& path, std::ostream& err) {
    auto src = read(path, err);
    if (!src) return std::nullopt;
    std::vector<Diagnostic> diags;
    auto s = parse_state(domain, src->text(), path, diags);
    report(err, diags);
    return s;
}

std::optional<ActionId> resolve_action(const GroundDomain& domain, const std::string& text, std::ostream& err) {
    auto atom = parse_atom(text);
    std::optional<ActionId> id;
    if (atom) id = domain.find_action(*atom);
    if (!id) err << "error: unknown action " << text << '\n';
    return id;
}

std::uint64_t default_max_states(std::ostream& err) {
    if (const char* env = std::getenv("AOPL_LINT_MAX_STATES")) {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        err << "warning: ignoring malformed AOPL_LINT_MAX_STATES=" << env << '\n';
    }
    return kDefaultMaxStates;
}

std::string class_words(AuthClass c) {
    std::string s(to_string(c));
    std::replace(s.begin(), s.end(), '_', ' ');
    if (c == AuthClass::NonCompliant) s = "non-compliant";
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Static analysis for authorization and obligation policies", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + ' ' + kToolVersion);

    std::string dom, pol, state_file, action, event, variant = "rei", output, format = "text";
    std::vector<std::string> pins;
    std::uint64_t max_states = 0;
    unsigned jobs = 1;
    bool show_answer_sets = false;

    auto* analyze = app.add_subcommand("analyze", "check every state for issues");
    analyze->add_option("domain", dom, "domain file")->required();
    analyze->add_option("policy", pol, "policy file")->required();
    analyze->add_option("--max-states", max_states, "ceiling on candidate states (default 2^20)");
    analyze->add_option("--pin", pins, "fix a literal, e.g. colonel(c) or -observer(c)");
    analyze->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    auto* check = app.add_subcommand("check", "analyze a single state");
    check->add_option("domain", dom)->required();
    check->add_option("policy", pol)->required();
    check->add_option("--state", state_file, "state file, one literal per line")->required();
    check->add_option("--action", action, "restrict to one elementary action");
    check->add_flag("--answer-sets", show_answer_sets, "print the holds atoms of every answer set");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* classify = app.add_subcommand("classify", "compliance of an event");
    classify->add_option("domain", dom)->required();
    classify->add_option("policy", pol)->required();
    classify->add_option("--state", state_file)->required();
    classify->add_option("--event", event, "comma-separated elementary actions")->required();

    auto* emit = app.add_subcommand("emit-asp", "print the lp or reified ASP translation");
    emit->add_option("domain", dom)->required();
    emit->add_option("policy", pol)->required();
    emit->add_option("--variant", variant)->check(CLI::IsMember({"lp", "rei"}));
    emit->add_option("-o,--output", output, "write to a file instead of stdout");
    emit->add_option("--state", state_file, "append the facts of a state");

    auto* states = app.add_subcommand("states", "list the states of a domain");
    states->add_option("domain", dom)->required();
    states->add_option("--pin", pins);
    states->add_option("--max-states", max_states);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitClean : kExitUsage;
    }
    if (max_states == 0) max_states = default_max_states(err);

    try {
        if (*states) {
            auto in = load(dom, std::nullopt, err);
            if (!in) return kExitUsage;
            std::vector<Diagnostic> diags;
            auto resolved = resolve_pins(in->policy.domain, pins, diags);
            report(err, diags);
            if (has_errors(diags)) return kExitUsage;
            diags.clear();
            auto all = enumerate_states(in->policy.domain, resolved, diags, max_states);
            report(err, diags);
            for (const auto& s : all) {
                const auto lits = s.literals(in->policy.domain);
                for (std::size_t i = 0; i < lits.size(); ++i) out << (i ? " " : "") << lits[i];
                out << '\n';
            }
            return has_errors(diags) ? kExitUsage : kExitClean;
        }

        auto in = load(dom, pol, err);
        if (!in) return kExitUsage;
        const GroundPolicy& gp = in->policy;

        if (*emit) {
            const AspVariant v = variant == "lp" ? AspVariant::Lp : AspVariant::Rei;
            std::string text = emit_asp(gp, v);
            if (!state_file.empty()) {
                auto s = load_state(gp.domain, state_file, err);
                if (!s) return kExitUsage;
                text += "\n% state\n" + emit_state_facts(gp.domain, *s, v);
            }
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output, std::ios::binary);
                f << text;
                if (!f) {
                    err << output << ": error: cannot write\n";
                    return kExitUsage;
                }
            }
            return kExitClean;
        }

        Analyzer analyzer{ReifiedBase(gp)};

        if (*analyze) {
            std::vector<Diagnostic> diags;
            SweepOptions opts;
            opts.pins = resolve_pins(gp.domain, pins, diags);
            opts.max_states = max_states;
            opts.jobs = jobs;
            report(err, diags);
            if (has_errors(diags)) return kExitUsage;
            SweepResult result = sweep(analyzer, opts);
            report(err, result.diagnostics);
            if (has_errors(result.diagnostics)) return kExitUsage;
            AnalysisReport rep = build_report(gp, result, in->digests);
            out << (format == "json" ? render_json(rep) : render_text(rep));
            return rep.issues.empty() ? kExitClean : kExitIssues;
        }

        auto state = load_state(gp.domain, state_file, err);
        if (!state) return kExitUsage;
        const Solution sol = analyzer.solve(*state);

        if (*check) {
            std::optional<ActionId> only;
            if (!action.empty()) {
                only = resolve_action(gp.domain, action, err);
                if (!only) return kExitUsage;
            }
            if (show_answer_sets) {
                const auto sets = sol.expand();
                for (std::size_t i = 0; i < sets.size(); ++i) {
                    out << "answer set " << i + 1 << ":";
                    for (const auto& a : sets[i].atoms(analyzer.base())) out << ' ' << a;
                    out << '\n';
                }
            }
            SweepResult single;
            single.states_checked = 1;
            for (auto& rec : analyzer.all_issues(sol)) {
                if (only && rec.action != *only) continue;
                single.issues.push_back({std::move(rec), 0, 1, 1});
            }
            AnalysisReport rep = build_report(gp, single, in->digests);
            if (format == "json") {
                out << render_json(rep);
            } else {
                for (ActionId e = 0; e < gp.domain.actions.size(); ++e) {
                    if (only && e != *only) continue;
                    out << gp.domain.actions[e].str() << ": " << class_words(analyzer.classify(sol, e)) << '\n';
                }
                out << render_text(rep);
            }
            return rep.issues.empty() ? kExitClean : kExitIssues;
        }

        if (*classify) {
            std::vector<ActionId> ids;
            for (const auto& e : split_top_level(event)) {
                auto id = resolve_action(gp.domain, e, err);
                if (!id) return kExitUsage;
                if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
            }
            if (ids.empty()) {
                err << "error: empty event\n";
                return kExitUsage;
            }
            std::sort(ids.begin(), ids.end());
            for (ActionId e : ids)
                if (!executable(gp.domain, *state, e))
                    err << "warning: " << gp.domain.actions[e].str() << " is not executable in this state\n";
            ComplianceClass c = analyzer.classify_event(sol, ids);
            for (const auto& a : c.actions)
                out << gp.domain.actions[a.action].str() << ": " << class_words(a.cls) << '\n';
            out << "authorization: ";
            if (c.strongly_compliant)
                out << "strongly compliant\n";
            else if (c.non_compliant)
                out << "non-compliant\n";
            else if (c.weakly_compliant)
                out << "weakly compliant\n";
            else
                out << "not weakly compliant\n";
            out << "obligations: " << (c.obligations_compliant() ? "compliant" : "non-compliant") << '\n';
            for (const auto& h : c.violated_obligations) out << "  violated: " << gp.domain.head_str(h) << '\n';
            return c.strongly_compliant && c.obligations_compliant() ? kExitClean : kExitIssues;
        }
    } catch (const CeilingError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace aopl
