#pragma once

#include "orthohaptic/config.hpp"

#include <string>
#include <vector>

namespace orthohaptic {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed values; stable across runs
};

/// The acceptance criteria, one result per criterion, evaluated at the given
/// configuration (criteria are parameter-relative).
std::vector<CheckResult> run_acceptance_criteria(const ConfigFile& cfg);

/// Per-module invariant and property suites.
std::vector<CheckResult> run_invariant_suites(const ConfigFile& cfg);

/// Invariant suites followed by the acceptance criteria.
std::vector<CheckResult> run_all_checks(const ConfigFile& cfg);

}  // namespace orthohaptic
