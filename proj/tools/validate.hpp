#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccr::cli {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    bool quick = false;
    std::uint64_t seed = 1;
};

// Oracle suites: grid RA, SIDNR equalization, exhaustive LBA and
// assignment, analytic coverage against Monte Carlo.
std::vector<SuiteResult> run_validation(const ValidateOptions& opt);

}  // namespace ccr::cli
