#include "aopl/normal_program.hpp"

#include <algorithm>
#include <cstdint>

namespace aopl {

NormalProgram::AtomIndex NormalProgram::atom(std::string_view name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    AtomIndex id = names_.size();
    names_.emplace_back(name);
    index_.emplace(std::string(name), id);
    return id;
}

std::vector<NormalProgram::AtomIndex> NormalProgram::intern(const std::vector<std::string>& names) {
    std::vector<AtomIndex> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(atom(n));
    return out;
}

void NormalProgram::add_fact(std::string_view head) { add_rule(head, {}, {}); }

void NormalProgram::add_rule(std::string_view head, const std::vector<std::string>& pos,
                             const std::vector<std::string>& neg) {
    Rule r;
    r.head = atom(head);
    r.pos = intern(pos);
    r.neg = intern(neg);
    rules_.push_back(std::move(r));
}

void NormalProgram::add_constraint(const std::vector<std::string>& pos, const std::vector<std::string>& neg) {
    Rule r;
    r.constraint = true;
    r.pos = intern(pos);
    r.neg = intern(neg);
    rules_.push_back(std::move(r));
}

std::size_t NormalProgram::guess_atom_count() const {
    std::vector<bool> seen(names_.size(), false);
    std::size_t n = 0;
    for (const auto& r : rules_)
        for (AtomIndex a : r.neg)
            if (!seen[a]) {
                seen[a] = true;
                ++n;
            }
    return n;
}

std::vector<bool> NormalProgram::least_model(const std::vector<bool>& guess) const {
    std::vector<bool> model(names_.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : rules_) {
            if (r.constraint || model[r.head]) continue;
            bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](AtomIndex a) { return guess[a]; });
            if (blocked) continue;
            if (std::all_of(r.pos.begin(), r.pos.end(), [&](AtomIndex a) { return model[a]; })) {
                model[r.head] = true;
                changed = true;
            }
        }
    }
    return model;
}

std::vector<std::vector<std::string>> NormalProgram::answer_sets(std::size_t max_guess_atoms) const {
    std::vector<AtomIndex> guessed;
    {
        std::vector<bool> seen(names_.size(), false);
        for (const auto& r : rules_)
            for (AtomIndex a : r.neg)
                if (!seen[a]) {
                    seen[a] = true;
                    guessed.push_back(a);
                }
    }
    if (guessed.size() > max_guess_atoms || guessed.size() >= 63)
        throw SolverLimitError("program has " + std::to_string(guessed.size()) +
                               " atoms under default negation; limit is " + std::to_string(max_guess_atoms));

    std::vector<std::vector<std::string>> out;
    const std::uint64_t total = std::uint64_t{1} << guessed.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<bool> guess(names_.size(), false);
        for (std::size_t i = 0; i < guessed.size(); ++i)
            if (mask >> i & 1) guess[guessed[i]] = true;
        std::vector<bool> model = least_model(guess);
        bool agrees = std::all_of(guessed.begin(), guessed.end(), [&](AtomIndex a) { return model[a] == guess[a]; });
        if (!agrees) continue;
        bool violated = std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) {
            if (!r.constraint) return false;
            return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomIndex a) { return model[a]; }) &&
                   std::none_of(r.neg.begin(), r.neg.end(), [&](AtomIndex a) { return model[a]; });
        });
        if (violated) continue;
        std::vector<std::string> atoms;
        for (AtomIndex a = 0; a < model.size(); ++a)
            if (model[a]) atoms.push_back(names_[a]);
        std::sort(atoms.begin(), atoms.end());
        out.push_back(std::move(atoms));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aopl
