#pragma once

#include "aopl/analysis.hpp"
#include "aopl/parser.hpp"

#include <random>
#include <string>
#include <vector>

namespace aopl::test {

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

// Parses, validates and grounds; throws std::runtime_error listing the
// diagnostics on failure.
ParsedUnit parse_text(const std::string& text, const std::string& name = "test.aopl");
GroundPolicy ground_text(const std::string& domain, const std::string& policy);
GroundPolicy ground_unit(const ParsedUnit& unit);
GroundPolicy load_mission(const std::string& policy_file);

// State with exactly the named atoms true.
WorldState make_state(const GroundDomain& domain, const std::vector<std::string>& true_atoms);
// All 2^n assignments in enumeration order, ignoring constraints.
std::vector<WorldState> all_states(const GroundDomain& domain);

ActionId action_id(const GroundDomain& domain, const std::string& action);
RuleId rule_id(const GroundPolicy& policy, const std::string& label);
GroundHead head(const GroundDomain& domain, HeadShape shape, const std::string& action);

struct RandomPolicyOptions {
    int max_rules = 6;
    int max_atoms = 4;
    int max_preferences = 2;
    int max_actions = 2;
};

// A random well-formed policy over zero-arity fluents and actions.
ParsedUnit random_policy(std::mt19937& rng, const RandomPolicyOptions& options = {});

// The fixed random corpus shared by the engine tests and the acceptance suite.
std::vector<GroundPolicy> random_corpus(std::size_t count, std::uint32_t seed = 20240611u);

}  // namespace aopl::test
