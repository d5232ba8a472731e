#include "doctest.h"

#include <random>

#include "test_helpers.hpp"
#include "treedist/barcode.hpp"

using namespace treedist;
using namespace treedist::testing;

namespace {

bool same_bars(const Barcode& a, const Barcode& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].birth != b[i].birth || a[i].death != b[i].death) return false;
    return true;
}

// Independent rank oracle: |image of M(s <= t)| for every pair of critical
// times (plus midpoints) must match the bar counts.
bool matches_rank_oracle(const MergeTree& t, const Barcode& bars) {
    const auto& rep = t.persistent_set();
    std::vector<double> probes = rep.critical_times;
    for (size_t i = 0; i + 1 < rep.critical_times.size(); ++i)
        probes.push_back((rep.critical_times[i] + rep.critical_times[i + 1]) / 2);
    probes.push_back(rep.critical_times.back() + 1.0);
    std::sort(probes.begin(), probes.end());
    for (size_t i = 0; i < probes.size(); ++i) {
        for (size_t j = i; j < probes.size(); ++j) {
            auto m = evolution_map(rep, probes[i], probes[j]);
            std::vector<char> hit(16, 0);
            int image = 0;
            for (int e : m)
                if (!hit[static_cast<size_t>(e)]) {
                    hit[static_cast<size_t>(e)] = 1;
                    ++image;
                }
            if (bars_containing(bars, probes[i], probes[j]) != image) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("elder barcode of the worked tree") {
    auto bars = elder_barcode(tree29());
    CHECK(same_bars(bars, {{0, kInf}, {1, 3}, {2, 5}}));
    CHECK(matches_rank_oracle(tree29(), bars));
}

TEST_CASE("elder barcode of small trees") {
    CHECK(same_bars(elder_barcode(strand(1.5)), {{1.5, kInf}}));
    CHECK(same_bars(elder_barcode(fork(0, 1, 2)), {{0, kInf}, {1, 2}}));
    // equal births: one bar dies at the merge, the eldest lives on
    CHECK(same_bars(elder_barcode(fork(0, 0, 1)), {{0, kInf}, {0, 1}}));
}

TEST_CASE("zero-length branches leave no bar") {
    auto t = make_tree({{"a", 0, {}}, {"b", 3, {}}, {"m", 3, {"a", "b"}}}, "m");
    CHECK(same_bars(elder_barcode(t), {{0, kInf}}));
}

TEST_CASE("exactly one unbounded bar") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto bars = elder_barcode(random_tree(rng, 6));
        int unbounded = 0;
        for (const auto& b : bars)
            if (b.unbounded()) ++unbounded;
        CHECK(unbounded == 1);
    }
}

TEST_CASE("elder rule matches the rank oracle on random trees") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 150; ++trial) {
        auto t = random_tree(rng, 6);
        CHECK(matches_rank_oracle(t, elder_barcode(t)));
    }
    for (int trial = 0; trial < 150; ++trial) {
        auto t = random_grid_tree(rng, 6);
        CHECK(matches_rank_oracle(t, elder_barcode(t)));
    }
}
