#include "aopl/state_space.hpp"

#include "aopl/parser.hpp"

#include <algorithm>
#include <sstream>

namespace aopl {

namespace {

Diagnostic error(SourcePos pos, std::string message) { return {Severity::Error, std::move(pos), std::move(message), {}}; }

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<GroundLiteral> resolve_pins(const GroundDomain& domain, const std::vector<std::string>& pins,
                                        std::vector<Diagnostic>& diagnostics) {
    std::vector<GroundLiteral> out;
    for (const auto& text : pins) {
        SourcePos pos{"--pin " + text, 0, 0};
        auto lit = parse_literal(text);
        if (!lit || !lit->atom.is_ground()) {
            diagnostics.push_back(error(pos, "malformed literal"));
            continue;
        }
        auto g = domain.resolve(*lit);
        if (!g) {
            diagnostics.push_back(error(pos, "unknown atom " + lit->atom.str()));
            continue;
        }
        out.push_back(*g);
    }
    return out;
}

StateSpace::StateSpace(const GroundDomain& domain, std::vector<GroundLiteral> pins, std::uint64_t max_states)
    : domain_(&domain), base_(domain.state_atoms.size(), false) {
    std::vector<int> pinned(domain.state_atoms.size(), -1);
    for (const auto& p : pins) {
        const int v = p.negative ? 0 : 1;
        if (pinned[p.atom] >= 0 && pinned[p.atom] != v) contradictory_ = true;
        pinned[p.atom] = v;
    }
    for (AtomId a = 0; a < pinned.size(); ++a) {
        if (pinned[a] < 0)
            free_.push_back(a);
        else
            base_[a] = pinned[a] == 1;
    }
    if (contradictory_) return;
    if (free_.size() >= 63 || (std::uint64_t{1} << free_.size()) > max_states)
        throw CeilingError(std::to_string(free_.size()) + " unpinned atoms give more than " +
                           std::to_string(max_states) +
                           " candidate states; pin atoms with --pin or raise --max-states / AOPL_LINT_MAX_STATES");
}

std::optional<WorldState> StateSpace::state(std::uint64_t index) const {
    std::vector<bool> values = base_;
    const std::size_t n = free_.size();
    for (std::size_t k = 0; k < n; ++k) values[free_[k]] = (index >> (n - 1 - k)) & 1;
    WorldState s(std::move(values));
    if (!satisfies_constraints(*domain_, s)) return std::nullopt;
    return s;
}

std::vector<WorldState> StateSpace::states() const {
    std::vector<WorldState> out;
    for_each([&](std::uint64_t, const WorldState& s) { out.push_back(s); });
    return out;
}

std::vector<WorldState> enumerate_states(const GroundDomain& domain, const std::vector<GroundLiteral>& pins,
                                         std::vector<Diagnostic>& diagnostics, std::uint64_t max_states) {
    StateSpace space(domain, pins, max_states);
    if (space.contradictory()) {
        diagnostics.push_back(error({"--pin", 0, 0}, "contradictory pins: an atom is pinned both true and false"));
        return {};
    }
    auto out = space.states();
    if (out.empty()) diagnostics.push_back(error({"--pin", 0, 0}, "no state satisfies the pins and state constraints"));
    return out;
}

std::vector<Event> enumerate_events(const GroundDomain& domain, const WorldState& state, std::size_t max_compound) {
    std::vector<ActionId> exec;
    for (ActionId a = 0; a < domain.actions.size(); ++a)
        if (executable(domain, state, a)) exec.push_back(a);
    std::vector<Event> out;
    const std::size_t top = std::min(max_compound, exec.size());
    for (std::size_t k = 1; k <= top; ++k) {
        // Combinations of k positions in lexicographic order.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Event e{state, {}};
            for (std::size_t i : idx) e.actions.push_back(exec[i]);
            out.push_back(std::move(e));
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == exec.size() - k + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

std::optional<WorldState> parse_state(const GroundDomain& domain, const std::string& text, const std::string& file,
                                      std::vector<Diagnostic>& diagnostics) {
    const std::size_t before = diagnostics.size();
    std::vector<int> seen(domain.state_atoms.size(), -1);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto c = line.find('%'); c != std::string::npos) line.resize(c);
        line = trim(line);
        if (!line.empty() && line.back() == '.') line.pop_back();
        if (line.empty()) continue;
        SourcePos pos{file, line_no, 1};
        auto lit = parse_literal(line);
        if (!lit || !lit->atom.is_ground()) {
            diagnostics.push_back(error(pos, "malformed literal '" + line + "'"));
            continue;
        }
        auto g = domain.resolve(*lit);
        if (!g) {
            diagnostics.push_back(error(pos, "unknown atom " + lit->atom.str()));
            continue;
        }
        const int v = g->negative ? 0 : 1;
        if (seen[g->atom] >= 0 && seen[g->atom] != v) {
            diagnostics.push_back(error(pos, "contradictory literal " + lit->str()));
            continue;
        }
        seen[g->atom] = v;
    }
    if (diagnostics.size() != before) return std::nullopt;
    std::vector<bool> values(seen.size());
    for (std::size_t i = 0; i < seen.size(); ++i) values[i] = seen[i] == 1;
    WorldState s(std::move(values));
    if (!satisfies_constraints(domain, s)) {
        diagnostics.push_back(error({file, 0, 0}, "state violates a state constraint"));
        return std::nullopt;
    }
    return s;
}

}  // namespace aopl
