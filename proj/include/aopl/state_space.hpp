#pragma once

#include "aopl/diagnostic.hpp"
#include "aopl/grounding.hpp"
#include "aopl/world_state.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aopl {

inline constexpr std::uint64_t kDefaultMaxStates = std::uint64_t{1} << 20;

class CeilingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses pins such as `colonel(c)` or `-observer(c)` against the ground
// domain. Unknown atoms and contradictory pins are reported as errors.
std::vector<GroundLiteral> resolve_pins(const GroundDomain& domain, const std::vector<std::string>& pins,
                                        std::vector<Diagnostic>& diagnostics);

// The candidate assignments of a domain under a set of pins, indexed
// 0 .. candidate_count()-1. Unpinned atoms vary, the first one as the most
// significant bit, so index order lists false before true.
class StateSpace {
public:
    // Throws CeilingError when more than `max_states` candidates would be
    // enumerated. Contradictory pins give an empty space.
    StateSpace(const GroundDomain& domain, std::vector<GroundLiteral> pins,
               std::uint64_t max_states = kDefaultMaxStates);

    std::uint64_t candidate_count() const { return contradictory_ ? 0 : std::uint64_t{1} << free_.size(); }
    std::size_t free_atom_count() const { return free_.size(); }
    bool contradictory() const { return contradictory_; }

    // The candidate at `index`, or nullopt when it violates a state constraint.
    std::optional<WorldState> state(std::uint64_t index) const;

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t i = 0; i < candidate_count(); ++i)
            if (auto s = state(i)) f(i, *s);
    }

    std::vector<WorldState> states() const;

private:
    const GroundDomain* domain_;
    std::vector<bool> base_;
    std::vector<AtomId> free_;
    bool contradictory_ = false;
};

// Every state satisfying the constraints and pins, each once, in index order.
// Contradictory or unsatisfiable pins yield no states and a diagnostic.
std::vector<WorldState> enumerate_states(const GroundDomain& domain, const std::vector<GroundLiteral>& pins,
                                         std::vector<Diagnostic>& diagnostics,
                                         std::uint64_t max_states = kDefaultMaxStates);

struct Event {
    WorldState state;
    std::vector<ActionId> actions;  // non-empty, ascending

    friend bool operator==(const Event&, const Event&) = default;
};

// Every non-empty set of at most `max_compound` actions whose members are each
// executable in `state`; smaller sets first, then lexicographic by action id.
std::vector<Event> enumerate_events(const GroundDomain& domain, const WorldState& state, std::size_t max_compound);

// Reads a state file: one literal per line (`authorized(c,m)` or
// `-observer(c)`), `%` comments. Unlisted atoms are false. Errors for unknown
// atoms, contradictions and constraint violations.
std::optional<WorldState> parse_state(const GroundDomain& domain, const std::string& text, const std::string& file,
                                      std::vector<Diagnostic>& diagnostics);

}  // namespace aopl
