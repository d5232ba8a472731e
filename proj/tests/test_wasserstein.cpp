#include "doctest.h"

#include <cmath>
#include <random>

#include "treedist/errors.hpp"
#include "treedist/wasserstein.hpp"

using namespace treedist;

TEST_CASE("hand-checked values") {
    Barcode b29{{0, kInf}, {1, 3}, {2, 5}};
    SUBCASE("delete one bounded bar") {
        Barcode b{{0, kInf}, {1, 3}}, c{{0, kInf}};
        CHECK(wasserstein(b, c, 1).value == 2);
        CHECK(wasserstein_brute_force(b, c, 1) == 2);
    }
    SUBCASE("identical barcodes") {
        CHECK(wasserstein(b29, b29, 1).value == 0);
        CHECK(wasserstein(b29, b29, kInf).value == 0);
    }
    SUBCASE("counterexample barcodes at p = 1") {
        Barcode bn{{0, kInf}, {0, 1}}, bq{{10, kInf}};
        CHECK(wasserstein(bn, bq, 1).value == 11);
        CHECK(wasserstein_brute_force(bn, bq, 1) == 11);
    }
    SUBCASE("worked tree barcode against a single strand") {
        Barcode c{{0, kInf}};
        CHECK(wasserstein(b29, c, 1).value == 5);
        CHECK(wasserstein_brute_force(b29, c, 1) == 5);
    }
    SUBCASE("single deletion at p = 2") {
        Barcode b{{0, 2}}, c{};
        CHECK(wasserstein(b, c, 2).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(wasserstein_brute_force(b, c, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("empty against empty") {
        CHECK(wasserstein({}, {}, 1).value == 0);
        CHECK(wasserstein_brute_force({}, {}, kInf) == 0);
    }
    SUBCASE("differing unbounded counts") {
        Barcode b{{0, kInf}}, c{};
        auto r = wasserstein(b, c, 1);
        CHECK(r.value == kInf);
        CHECK(r.matching.pairs.empty());
        CHECK(wasserstein_brute_force(b, c, 1) == kInf);
    }
    SUBCASE("bottleneck of a fork pair") {
        Barcode b{{0, kInf}, {1, 2}}, c{{0, kInf}};
        CHECK(wasserstein(b, c, kInf).value == 0.5);
    }
}

TEST_CASE("brute force guard") {
    Barcode big(9, Interval{0, 1});
    CHECK_THROWS_AS(wasserstein_brute_force(big, {}, 1), ScaleGuardError);
}

namespace {

Barcode random_barcode(std::mt19937_64& rng, int max_bars, bool allow_unbounded = true) {
    std::uniform_int_distribution<int> nb(0, max_bars);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution unb(0.2);
    Barcode b;
    int n = nb(rng);
    for (int i = 0; i < n; ++i) {
        double birth = u(rng);
        if (allow_unbounded && unb(rng)) b.push_back({birth, kInf});
        else b.push_back({birth, birth + u(rng)});
    }
    return b;
}

} // namespace

TEST_CASE("solver matches brute force on random barcodes") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 400; ++trial) {
        Barcode b = random_barcode(rng, 4);
        Barcode c = random_barcode(rng, 4);
        if (b.size() + c.size() > 8) continue;
        for (double p : {1.0, 2.0, 3.0}) {
            auto got = wasserstein(b, c, p);
            double want = wasserstein_brute_force(b, c, p);
            if (want == kInf) CHECK(got.value == kInf);
            else {
                CHECK(got.value == doctest::Approx(want).epsilon(1e-9));
                // the certificate reproduces the reported value
                CHECK(matching_cost(b, c, got.matching, p) ==
                      doctest::Approx(got.value).epsilon(1e-9));
            }
        }
        auto got = wasserstein(b, c, kInf);
        double want = wasserstein_brute_force(b, c, kInf);
        CHECK(got.value == want);
        if (want < kInf) CHECK(matching_cost(b, c, got.matching, kInf) == want);
    }
}

TEST_CASE("wasserstein is monotone in p") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        Barcode b = random_barcode(rng, 4);
        Barcode c = random_barcode(rng, 4);
        double d1 = wasserstein(b, c, 1).value;
        double d2 = wasserstein(b, c, 2).value;
        double dinf = wasserstein(b, c, kInf).value;
        if (d1 == kInf) continue;
        CHECK(d1 >= d2 - 1e-9);
        CHECK(d2 >= dinf - 1e-9);
    }
}
