#pragma once

// Named self-checks for one family member: exact identities plus sampled properties.

#include "rauzy/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rauzy {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

struct VerifyReport {
    int a;
    VerifyLevel level;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::string to_json() const;
};

/// Runs every check that applies to a (the parametrization checks need a >= 3).
/// An exception inside a check is reported as a failure of that check.
VerifyReport run_verification(FamilyParam p, VerifyLevel level, std::uint64_t seed, unsigned threads);

}  // namespace rauzy
