#pragma once

#include <string>
#include <vector>

namespace curvseg {

struct SuiteRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<SuiteRow> rows;
    std::string csv;  // raw metrics, comma separated

    bool pass() const;
    std::string table() const;  // plain-text pass/fail table
};

/// suite: one of "metrics", "semicontinuity", "compactness", "equivalence".
SuiteResult run_verify_suite(const std::string& suite, double R);

}  // namespace curvseg
