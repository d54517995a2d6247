#pragma once

#include "aopl/grounding.hpp"

#include <span>
#include <string>
#include <vector>

namespace aopl {

// A complete truth assignment to the ground statics and fluents of a domain.
class WorldState {
public:
    WorldState() = default;
    explicit WorldState(std::vector<bool> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    bool value(AtomId atom) const { return values_.at(atom); }
    void set(AtomId atom, bool value) { values_.at(atom) = value; }

    bool holds(GroundLiteral lit) const { return value(lit.atom) != lit.negative; }
    bool holds_all(std::span<const GroundLiteral> lits) const;
    std::size_t positive_count() const;

    const std::vector<bool>& values() const { return values_; }

    // Every literal of the state in atom order: colonel(c) -observer(c) ...
    std::vector<std::string> literals(const GroundDomain& domain) const;
    std::vector<std::string> positive_literals(const GroundDomain& domain) const;

    friend bool operator==(const WorldState&, const WorldState&) = default;

private:
    std::vector<bool> values_;
};

// Whether the state satisfies every ground state constraint.
bool satisfies_constraints(const GroundDomain& domain, const WorldState& state);

// Whether the elementary action passes every executability filter in `state`.
bool executable(const GroundDomain& domain, const WorldState& state, ActionId action);

}  // namespace aopl
