#include "aopl/world_state.hpp"

#include <algorithm>

namespace aopl {

bool WorldState::holds_all(std::span<const GroundLiteral> lits) const {
    return std::all_of(lits.begin(), lits.end(), [&](GroundLiteral l) { return holds(l); });
}

std::size_t WorldState::positive_count() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), true));
}

std::vector<std::string> WorldState::literals(const GroundDomain& domain) const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (AtomId i = 0; i < values_.size(); ++i) out.push_back(domain.literal_str({i, !values_[i]}));
    return out;
}

std::vector<std::string> WorldState::positive_literals(const GroundDomain& domain) const {
    std::vector<std::string> out;
    for (AtomId i = 0; i < values_.size(); ++i)
        if (values_[i]) out.push_back(domain.state_atoms[i].str());
    return out;
}

bool satisfies_constraints(const GroundDomain& domain, const WorldState& state) {
    for (const auto& c : domain.state_constraints) {
        if (!state.holds_all(c.body)) continue;
        if (!c.head || !state.holds(*c.head)) return false;
    }
    return true;
}

bool executable(const GroundDomain& domain, const WorldState& state, ActionId action) {
    for (const auto& c : domain.exec_constraints)
        if (c.action == action && state.holds_all(c.body)) return false;
    return true;
}

}  // namespace aopl
