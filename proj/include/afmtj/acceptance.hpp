#pragma once

#include <string>
#include <vector>

namespace afmtj {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full release checklist against the shipped data directory.
// Criteria that depend on calibration re-run it from the shipped configs, so
// the checks cover the exact pipeline a user reproduces from the CLI.
std::vector<CriterionResult> run_acceptance(const std::string& data_dir);

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace afmtj
