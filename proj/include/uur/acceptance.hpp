#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uur/multi_bound.hpp"

namespace uur {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Release gate: runs every criterion with fixed derived seeds, printing one
/// PASS/FAIL line per criterion to `out`.
std::vector<CriterionResult> run_acceptance(std::ostream& out, std::uint64_t seed = 424242);

bool all_passed(const std::vector<CriterionResult>& results);

namespace acceptance {
/// Example-1 reproduction check, parameterized so corrupted fixtures can be
/// exercised as a negative control.
bool check_example1(const MeasurementEnsemble& ens, std::string& detail,
                    std::uint64_t budget = kDefaultNormBudget);
}  // namespace acceptance

}  // namespace uur
