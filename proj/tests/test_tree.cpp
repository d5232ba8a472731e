#include "doctest.h"

#include <random>

#include "test_helpers.hpp"
#include "treedist/errors.hpp"
#include "treedist/tree.hpp"

using namespace treedist;
using namespace treedist::testing;

TEST_CASE("validate accepts the worked examples") {
    CHECK(validate(tree_data({{"a", 0, {}}, {"r", 5, {"a"}}}, "r")).empty());
    CHECK(validate(tree29().to_data()).empty());
}

TEST_CASE("validate flags height order") {
    auto v = validate(tree_data({{"p", 1, {"c"}}, {"c", 3, {}}}, "p"));
    REQUIRE(v.size() == 1);
    CHECK(v[0].invariant == "height-order");
}

TEST_CASE("validate flags structural breakage") {
    CHECK(validate({{}, "r"}).size() == 1);
    CHECK(!validate(tree_data({{"a", 0, {"b"}}}, "a")).empty());       // unknown child
    CHECK(!validate(tree_data({{"a", 0, {}}, {"b", 1, {}}}, "a")).empty()); // disconnected
    CHECK(!validate(tree_data({{"a", 0, {"a"}}}, "a")).empty());       // self-cycle
    auto two_parents = tree_data(
        {{"a", 1, {"c"}}, {"b", 1, {"c"}}, {"c", 0, {}}, {"r", 2, {"a", "b"}}}, "r");
    CHECK(!validate(two_parents).empty());
}

TEST_CASE("persistent set of the worked tree") {
    auto t = tree29();
    const auto& rep = t.persistent_set();
    CHECK(rep.critical_times == std::vector<double>{0, 1, 2, 3, 5});
    CHECK(rep.critical_set_sizes == std::vector<int>{1, 2, 3, 2, 1});
    // merge at 3 folds the branch born 1 into the branch born 0
    CHECK(rep.maps[2] == std::vector<int>{0, 0, 1});
    CHECK(rep.maps[3] == std::vector<int>{0, 0});
}

TEST_CASE("persistent set of small trees") {
    CHECK(strand(2.5).persistent_set().critical_times == std::vector<double>{2.5});
    auto f = fork(0, 1, 2);
    CHECK(f.persistent_set().critical_times == std::vector<double>{0, 1, 2});
    CHECK(f.persistent_set().critical_set_sizes == std::vector<int>{1, 2, 1});
}

TEST_CASE("root caps and chain nodes are not critical") {
    auto capped = make_tree({{"a", 0, {}}, {"r", 5, {"a"}}}, "r");
    CHECK(capped.persistent_set().critical_times == std::vector<double>{0});
    CHECK(is_isomorphic(capped, strand(0)));
    // chain node inside an edge
    auto chained = make_tree(
        {{"a", 0, {}}, {"b", 1, {}}, {"x", 1.5, {"a"}}, {"m", 2, {"x", "b"}}}, "m");
    CHECK(is_isomorphic(chained, fork(0, 1, 2)));
}

TEST_CASE("a leaf born exactly at its merge height is invisible") {
    auto t = make_tree({{"a", 0, {}}, {"b", 3, {}}, {"m", 3, {"a", "b"}}}, "m");
    CHECK(t.persistent_set().critical_times == std::vector<double>{0});
    CHECK(is_isomorphic(t, strand(0)));
}

TEST_CASE("evolution maps") {
    auto t = tree29();
    const auto& rep = t.persistent_set();
    SUBCASE("constant map from three branches to the root") {
        auto m = evolution_map(rep, 2, 5);
        CHECK(m == std::vector<int>{0, 0, 0});
    }
    SUBCASE("identity at s == t") {
        auto m = evolution_map(rep, 2, 2);
        CHECK(m == std::vector<int>{0, 1, 2});
    }
    SUBCASE("empty below the first birth") {
        CHECK(evolution_map(rep, -3, -1).empty());
    }
    SUBCASE("s > t rejected") {
        CHECK_THROWS_AS(evolution_map(rep, 2, 1), InputError);
    }
}

TEST_CASE("lca") {
    auto t = tree29();
    SUBCASE("first merge") {
        auto [id, h] = lca(t, "a", "b");
        CHECK(id == "m");
        CHECK(h == 3);
    }
    SUBCASE("self lca") {
        auto [id, h] = lca(t, "b", "b");
        CHECK(id == "b");
        CHECK(h == 1);
    }
    SUBCASE("eldest vs youngest meet at the root") {
        auto [id, h] = lca(t, "a", "c");
        CHECK(id == "r");
        CHECK(h == 5);
    }
    SUBCASE("unknown id rejected") { CHECK_THROWS_AS(lca(t, "a", "zz"), InputError); }
}

TEST_CASE("isomorphism") {
    auto t = tree29();
    auto permuted = make_tree({{"x3", 2, {}},
                               {"x1", 1, {}},
                               {"x0", 0, {}},
                               {"top", 5, {"x3", "mid"}},
                               {"mid", 3, {"x1", "x0"}}},
                              "top");
    CHECK(is_isomorphic(t, permuted));
    CHECK(!is_isomorphic(fork(0, 1, 2), fork(0, 1, 2.5)));
    // same barcode, different trees: nested vs side-by-side branches
    auto t1 = make_tree({{"a", 0, {}}, {"b", 1, {}}, {"c", 2, {}},
                         {"m", 3, {"b", "c"}}, {"r", 4, {"a", "m"}}},
                        "r");
    auto t2 = make_tree({{"a", 0, {}}, {"b", 1, {}}, {"c", 2, {}},
                         {"m", 3, {"a", "b"}}, {"r", 4, {"m", "c"}}},
                        "r");
    CHECK(!is_isomorphic(t1, t2));
}

TEST_CASE("component counts") {
    auto t = tree29();
    CHECK(component_count_at(t, 2.5) == 3);
    CHECK(component_count_at(t, -100) == 0);
    CHECK(component_count_at(t, 4) == 2);
    CHECK(component_count_at(t, 100) == 1);
}

TEST_CASE("round trip through the persistent set") {
    auto t = tree29();
    CHECK(is_isomorphic(t, from_persistent_set(t.persistent_set())));
}

TEST_CASE("random round trips and lca properties") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto t = random_tree(rng, 6);
        CHECK(is_isomorphic(t, from_persistent_set(t.persistent_set())));
        // lca symmetry and height bound on a random node pair
        std::uniform_int_distribution<int> pick(0, t.node_count() - 1);
        int u = pick(rng), v = pick(rng);
        int a = lca_index(t, u, v);
        CHECK(a == lca_index(t, v, u));
        CHECK(t.node(a).height >= std::max(t.node(u).height, t.node(v).height));
    }
}

TEST_CASE("isomorphism is an equivalence relation on random triples") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_tree(rng, 4);
        auto b = random_tree(rng, 4);
        auto c = random_tree(rng, 4);
        CHECK(is_isomorphic(a, a));
        CHECK(is_isomorphic(a, b) == is_isomorphic(b, a));
        if (is_isomorphic(a, b) && is_isomorphic(b, c)) CHECK(is_isomorphic(a, c));
    }
}

TEST_CASE("component count is monotone between critical times") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        auto t = random_tree(rng, 5);
        const auto& rep = t.persistent_set();
        for (size_t i = 0; i + 1 < rep.critical_times.size(); ++i) {
            double mid = (rep.critical_times[i] + rep.critical_times[i + 1]) / 2;
            CHECK(component_count_at(t, mid) == rep.critical_set_sizes[i]);
        }
    }
}
