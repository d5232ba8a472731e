#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treedist {

struct FuzzConfig {
    std::uint64_t seed = 1;
    int trials = 500;
    double tol = 1e-9;
    std::string mutation; // "" or "skip-triangle" (harness self-test)
    std::string out_dir = ".";
};

struct FuzzFailure {
    std::string invariant;
    std::string detail;
    std::string reproducer_path;
};

struct FuzzReport {
    int trials_run = 0;
    long long checks = 0;
    std::vector<FuzzFailure> failures;
    bool passed() const { return failures.empty(); }
};

// Seeded randomized run over every cross-module invariant; stops at the
// first failure, shrinks the instance and writes a reproducer file.
FuzzReport run_fuzz(const FuzzConfig& config);

} // namespace treedist
