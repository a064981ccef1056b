#pragma once

#include <string>
#include <vector>

namespace pfdeg {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double ms = 0.0;
    double limit_ms = 0.0;  // 0: no time limit
};

/// Runs acceptance criteria 1 to 7 in order. A criterion that throws is
/// reported as failed with the error text.
std::vector<CriterionResult> run_acceptance(unsigned threads = 0);

/// "criterion N PASS|FAIL  name: detail (x ms, limit y ms)"
std::string format_line(const CriterionResult& r);

}  // namespace pfdeg
