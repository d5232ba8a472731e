#include "doctest.h"

#include <cstdio>

#include "treedist/errors.hpp"
#include "treedist/fuzz.hpp"

using namespace treedist;

TEST_CASE("short fuzz run passes") {
    FuzzConfig config;
    config.seed = 20260809;
    config.trials = 40;
    config.out_dir = "/tmp";
    auto report = run_fuzz(config);
    CHECK(report.passed());
    CHECK(report.trials_run == 40);
    CHECK(report.checks == 40 * 9);
}

TEST_CASE("determinism: same seed, same trajectory") {
    FuzzConfig config;
    config.seed = 99;
    config.trials = 10;
    config.out_dir = "/tmp";
    auto a = run_fuzz(config);
    auto b = run_fuzz(config);
    CHECK(a.checks == b.checks);
    CHECK(a.passed() == b.passed());
}

TEST_CASE("injected triangle-skip mutant is caught with a reproducer") {
    FuzzConfig config;
    config.seed = 7;
    config.trials = 50;
    config.mutation = "skip-triangle";
    config.out_dir = "/tmp";
    auto report = run_fuzz(config);
    REQUIRE(!report.passed());
    CHECK(report.failures[0].invariant == "thm42-roundtrip");
    FILE* f = std::fopen(report.failures[0].reproducer_path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::fclose(f);
}

TEST_CASE("unknown mutation rejected") {
    FuzzConfig config;
    config.mutation = "not-a-thing";
    CHECK_THROWS_AS(run_fuzz(config), InputError);
}
