#include "doctest.h"

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "treedist/errors.hpp"
#include "treedist/interleaving.hpp"
#include "treedist/lp.hpp"
#include "treedist/wasserstein.hpp"

using namespace treedist;
using namespace treedist::testing;

TEST_CASE("two strands interleave exactly at their birth gap") {
    double r = 3.25;
    auto m = strand(0), n = strand(r);
    CHECK(interleaving_exists(m, n, r).has_value());
    CHECK(!interleaving_exists(m, n, r - 1e-6).has_value());
    CHECK(interleaving_distance(m, n) == r);
}

TEST_CASE("identity witness at zero for equal trees") {
    auto t = tree29();
    auto w = interleaving_exists(t, t, 0.0);
    REQUIRE(w.has_value());
    CHECK(verify_witness(t, t, *w));
    CHECK(interleaving_distance(t, t) == 0.0);
}

TEST_CASE("fork against a strand needs half the branch length") {
    auto m = fork(0, 1, 2), n = strand(0);
    CHECK(interleaving_exists(m, n, 0.5).has_value());
    CHECK(!interleaving_exists(m, n, 0.49).has_value());
    CHECK(interleaving_distance(m, n) == 0.5);
}

TEST_CASE("instability pair distance") {
    auto m = strand(0);
    auto n = make_tree(
        {{"a", 0, {}}, {"b", 0, {}}, {"c", 0, {}}, {"j", 1, {"a", "b", "c"}}}, "j");
    // the bottleneck bound 0.5 is met: all three branches fold onto the
    // strand and come back merged after a total shift of 1
    CHECK(interleaving_distance(m, n) == 0.5);
    CHECK(wasserstein(Barcode{{0, kInf}}, Barcode{{0, kInf}, {0, 1}, {0, 1}}, kInf).value == 0.5);
}

TEST_CASE("counterexample pair distance") {
    auto n = fork(0, 0, 1);
    auto q = strand(10);
    CHECK(interleaving_distance(n, q) == 10.0);
}

TEST_CASE("negative eps rejected, scale guard honored") {
    auto t = tree29();
    CHECK_THROWS_AS(interleaving_exists(t, t, -1.0), InputError);
    InterleavingOptions tight;
    tight.max_critical_set = 2;
    CHECK_THROWS_AS(interleaving_distance(t, t, tight), ScaleGuardError);
}

TEST_CASE("witness tampering is caught") {
    auto m = fork(0, 1, 2), n = strand(0);
    auto w = interleaving_exists(m, n, 0.5);
    REQUIRE(w.has_value());
    CHECK(verify_witness(m, n, *w));
    auto bad = *w;
    bad.epsilon = 0.25;
    CHECK(!verify_witness(m, n, bad));
    // collapsing the identity witness of a two-branch tree breaks a triangle
    auto t = fork(0, 1, 2);
    auto idw = interleaving_exists(t, t, 0.0);
    REQUIRE(idw.has_value());
    auto collapsed = *idw;
    for (auto& cm : collapsed.psi)
        for (auto& e : cm.map) e = 0;
    CHECK(!verify_witness(t, t, collapsed));
}

TEST_CASE("dropping the triangle checks yields bogus witnesses") {
    auto m = fork(0, 1, 2), n = strand(0);
    InterleavingOptions lax;
    lax.enforce_triangles = false;
    auto w = interleaving_exists(m, n, 0.0, lax);
    REQUIRE(w.has_value());
    CHECK(!verify_witness(m, n, *w));
}

TEST_CASE("triangle inequality on random desk-scale triples") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_grid_tree(rng, 4);
        auto b = random_grid_tree(rng, 4);
        auto c = random_grid_tree(rng, 4);
        double ab = interleaving_distance(a, b);
        double bc = interleaving_distance(b, c);
        double ac = interleaving_distance(a, c);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("witness to compatible pair and back") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_grid_tree(rng, 4);
        auto n = random_grid_tree(rng, 4);
        double e = interleaving_distance(m, n);
        auto w = interleaving_exists(m, n, e);
        REQUIRE(w.has_value());
        REQUIRE(verify_witness(m, n, *w));

        auto [pm, pn] = interleaving_to_presentations(m, n, *w);
        CHECK(are_compatible(pm, pn));
        CHECK(label_distance(pm, pn, kInf) == doctest::Approx(e).epsilon(1e-9));
        CHECK(is_isomorphic(coequalize(pm).trees.at(0), m));
        CHECK(is_isomorphic(coequalize(pn).trees.at(0), n));

        auto back = presentations_to_interleaving(pm, pn);
        CHECK(back.epsilon == doctest::Approx(e).epsilon(1e-9));
    }
}

TEST_CASE("compatible pairs from padding induce interleavings") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_tree(rng, 4);
        auto n = random_tree(rng, 4);
        double t = std::max(m.max_height(), n.max_height());
        auto [pm, pn] = pad_concatenate(minimal_presentation(m), minimal_presentation(n), t);
        auto w = presentations_to_interleaving(pm, pn);
        CHECK(w.epsilon == label_distance(pm, pn, kInf));
        CHECK(interleaving_exists(m, n, w.epsilon).has_value());
    }
}

TEST_CASE("coequalizer alignment survives generator shuffles") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_grid_tree(rng, 4);
        auto pm = minimal_presentation(m);
        std::vector<int> perm(static_cast<size_t>(pm.generator_count()));
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto shuffled = permute_generators(pm, perm);
        // conversion runs its own label-alignment assertion internally
        auto w = presentations_to_interleaving(shuffled, shuffled);
        CHECK(w.epsilon == 0.0);
    }
}

TEST_CASE("strand pair conversion carries the gap") {
    double r = 2.5;
    auto m = strand(0), n = strand(r);
    auto w = interleaving_exists(m, n, r);
    REQUIRE(w.has_value());
    auto [pm, pn] = interleaving_to_presentations(m, n, *w);
    CHECK(are_compatible(pm, pn));
    CHECK(label_distance(pm, pn, kInf) == r);
    CHECK(is_isomorphic(coequalize(pm).trees.at(0), m));
    CHECK(is_isomorphic(coequalize(pn).trees.at(0), n));
}

TEST_CASE("identity witness converts to a zero-distance pair") {
    auto t = tree29();
    auto w = interleaving_exists(t, t, 0.0);
    REQUIRE(w.has_value());
    auto [pm, pn] = interleaving_to_presentations(t, t, *w);
    CHECK(label_distance(pm, pn, kInf) == 0.0);
    CHECK(label_distance(pm, pn, 1) == 0.0);
}

TEST_CASE("quoted counterexample presentations induce the expected shift") {
    for (double e : {0.25}) {
        Presentation pm({0, e}, {{e, 0, 1}});
        Presentation pn({0, 0}, {{1, 0, 1}});
        auto w = presentations_to_interleaving(pm, pn);
        CHECK(w.epsilon == std::max(e, 1 - e));
    }
}
