#pragma once

#include <string>
#include <vector>

namespace pfdeg {

struct ClaimResult {
    std::string claim;
    bool passed;
    std::string detail;
};

struct ClaimReport {
    std::vector<ClaimResult> results;
    bool all_passed() const {
        for (const auto& r : results) {
            if (!r.passed) return false;
        }
        return true;
    }
    /// Throws ClaimViolated naming the first failed claim.
    void require_all() const;
};

}  // namespace pfdeg
