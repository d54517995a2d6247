#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aopl {

class SolverLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A ground normal logic program over named atoms, solved by guess and check:
// guess the truth of every atom that occurs under `not`, take the least model
// of the reduct, keep it when it agrees with the guess and violates no
// constraint. Exponential in the number of such atoms; meant as a reference
// implementation for small programs.
class NormalProgram {
public:
    using AtomIndex = std::size_t;

    AtomIndex atom(std::string_view name);
    const std::string& name(AtomIndex atom) const { return names_.at(atom); }
    std::size_t atom_count() const { return names_.size(); }

    void add_fact(std::string_view head);
    void add_rule(std::string_view head, const std::vector<std::string>& pos, const std::vector<std::string>& neg = {});
    // :- pos, not neg.
    void add_constraint(const std::vector<std::string>& pos, const std::vector<std::string>& neg = {});

    // Number of distinct atoms under default negation.
    std::size_t guess_atom_count() const;

    // Every stable model as a sorted list of atom names; models sorted.
    // Throws SolverLimitError when more than `max_guess_atoms` atoms must be guessed.
    std::vector<std::vector<std::string>> answer_sets(std::size_t max_guess_atoms = 20) const;

private:
    struct Rule {
        bool constraint = false;
        AtomIndex head = 0;
        std::vector<AtomIndex> pos;
        std::vector<AtomIndex> neg;
    };

    std::vector<bool> least_model(const std::vector<bool>& guess) const;
    std::vector<AtomIndex> intern(const std::vector<std::string>& names);

    std::vector<std::string> names_;
    std::map<std::string, AtomIndex, std::less<>> index_;
    std::vector<Rule> rules_;
};

}  // namespace aopl
