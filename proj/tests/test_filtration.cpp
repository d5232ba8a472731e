#include "doctest.h"

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "treedist/barcode.hpp"
#include "treedist/bracket.hpp"
#include "treedist/filtration.hpp"
#include "treedist/lp.hpp"

using namespace treedist;
using namespace treedist::testing;

namespace {

// barycentrically subdivided 1-simplex: vertices a, b, c with edges ab, bc
CellComplex1 path3() { return {3, {{0, 1}, {1, 2}}}; }

CellularFunction constant_zero() {
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Zero(3);
    f.edge_values = Eigen::VectorXd::Zero(2);
    return f;
}

CellularFunction zero_vertices_unit_edges() {
    CellularFunction g;
    g.vertex_values = Eigen::VectorXd::Zero(3);
    g.edge_values = Eigen::VectorXd::Ones(2);
    return g;
}

} // namespace

TEST_CASE("monotonicity") {
    auto x = path3();
    CHECK(is_monotone(x, constant_zero()));
    CHECK(is_monotone(x, zero_vertices_unit_edges()));
    CellularFunction bad;
    bad.vertex_values = Eigen::VectorXd::Zero(3);
    bad.vertex_values[0] = 2;
    bad.edge_values = Eigen::VectorXd::Ones(2);
    CHECK(!is_monotone(x, bad));
    CellularFunction skewed;
    skewed.vertex_values = Eigen::VectorXd::Zero(2);
    skewed.edge_values = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(is_monotone(x, skewed), InputError);
}

TEST_CASE("sublevel merge trees of the instability pair") {
    auto x = path3();
    auto fm = sublevel_merge_forest(x, constant_zero());
    REQUIRE(fm.trees.size() == 1);
    CHECK(is_isomorphic(fm.trees[0], strand(0)));

    auto fn = sublevel_merge_forest(x, zero_vertices_unit_edges());
    REQUIRE(fn.trees.size() == 1);
    auto expect = make_tree(
        {{"a", 0, {}}, {"b", 0, {}}, {"c", 0, {}}, {"j", 1, {"a", "b", "c"}}}, "j");
    CHECK(is_isomorphic(fn.trees[0], expect));
}

TEST_CASE("sublevel sweep handles a single vertex and a multiway path") {
    CellComplex1 dot{1, {}};
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Constant(1, 2.5);
    f.edge_values = Eigen::VectorXd::Zero(0);
    auto forest = sublevel_merge_forest(dot, f);
    REQUIRE(forest.trees.size() == 1);
    CHECK(is_isomorphic(forest.trees[0], strand(2.5)));

    CellularFunction g;
    g.vertex_values = Eigen::VectorXd::Zero(3);
    g.vertex_values << 0, 2, 1;
    g.edge_values = Eigen::VectorXd::Constant(2, 3.0);
    auto multi = sublevel_merge_forest(path3(), g);
    REQUIRE(multi.trees.size() == 1);
    auto expect = make_tree(
        {{"a", 0, {}}, {"b", 2, {}}, {"c", 1, {}}, {"j", 3, {"a", "b", "c"}}}, "j");
    CHECK(is_isomorphic(multi.trees[0], expect));
}

TEST_CASE("incidence presentations of the instability pair") {
    auto x = path3();
    auto pm = incidence_presentation(x, constant_zero());
    auto pn = incidence_presentation(x, zero_vertices_unit_edges());
    CHECK(are_compatible(pm, pn));
    Eigen::VectorXd lm(5), ln(5);
    lm << 0, 0, 0, 0, 0;
    ln << 0, 0, 0, 1, 1;
    CHECK(pm.label_vector() == lm);
    CHECK(pn.label_vector() == ln);
    CHECK(label_distance(pm, pn, 1) == 2.0);
    CHECK(label_distance(pm, pn, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(label_distance(pm, pn, kInf) == 1.0);

    CellComplex1 disconnected{2, {}};
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Zero(2);
    f.edge_values = Eigen::VectorXd::Zero(0);
    CHECK_THROWS_AS(incidence_presentation(disconnected, f), InputError);
}

TEST_CASE("function distances") {
    auto f = constant_zero(), g = zero_vertices_unit_edges();
    CHECK(lp_function_distance(f, g, 1) == 2.0);
    CHECK(lp_function_distance(f, g, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(lp_function_distance(f, g, kInf) == 1.0);
    CHECK(lp_function_distance(f, f, 1) == 0.0);
}

TEST_CASE("a two-vertex path presents a fork through its incidence") {
    CellComplex1 x{2, {{0, 1}}};
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Zero(2);
    f.vertex_values << 0, 1;
    f.edge_values = Eigen::VectorXd::Constant(1, 2.0);
    auto p = incidence_presentation(x, f);
    Eigen::MatrixXi expect(2, 1);
    expect << 1, 1;
    CHECK(p.matrix() == expect);
    CHECK(is_isomorphic(coequalize(p).trees.at(0), fork(0, 1, 2)));
}

TEST_CASE("lifting the incidence pair recreates the complex") {
    auto x = path3();
    auto pm = incidence_presentation(x, constant_zero());
    auto pn = incidence_presentation(x, zero_vertices_unit_edges());
    auto lift = geometric_lift(pm, pn);
    CHECK(lift.complex.vertex_count == x.vertex_count);
    CHECK(lift.complex.edges == x.edges);
    CHECK(lift.f.vertex_values == constant_zero().vertex_values);
    CHECK(lift.g.edge_values == zero_vertices_unit_edges().edge_values);
}

TEST_CASE("geometric lift of the counterexample presentations") {
    double e = 0.25;
    Presentation pm({0, e}, {{e, 0, 1}});
    Presentation pn({0, 0}, {{1, 0, 1}});
    auto lift = geometric_lift(pm, pn);
    CHECK(lift.complex.vertex_count == 2);
    CHECK(lift.complex.edges.size() == 1);
    for (double p : {1.0, 2.0, kInf})
        CHECK(lp_function_distance(lift.f, lift.g, p) == label_distance(pm, pn, p));
    auto fm = sublevel_merge_forest(lift.complex, lift.f);
    auto fn = sublevel_merge_forest(lift.complex, lift.g);
    CHECK(is_isomorphic(fm.trees.at(0), coequalize(pm).trees.at(0)));
    CHECK(is_isomorphic(fn.trees.at(0), coequalize(pn).trees.at(0)));
}

TEST_CASE("self relations lift to twin vertices without changing the trees") {
    Presentation pm({1.0}, {{1.5, 0, 0}});
    auto lift = geometric_lift(pm, pm);
    CHECK(lift.complex.vertex_count == 2);
    CHECK(is_monotone(lift.complex, lift.f));
    auto forest = sublevel_merge_forest(lift.complex, lift.f);
    REQUIRE(forest.trees.size() == 1);
    CHECK(is_isomorphic(forest.trees[0], strand(1.0)));
    CHECK(lp_function_distance(lift.f, lift.g, 1) == 0.0);
}

TEST_CASE("lift round trip on padded pairs") {
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_tree(rng, 4);
        auto n = random_tree(rng, 4);
        double t = std::max(m.max_height(), n.max_height());
        auto [pm, pn] = pad_concatenate(minimal_presentation(m), minimal_presentation(n), t);
        auto lift = geometric_lift(pm, pn);
        CHECK(is_monotone(lift.complex, lift.f));
        CHECK(is_monotone(lift.complex, lift.g));
        auto fm = sublevel_merge_forest(lift.complex, lift.f);
        auto fn = sublevel_merge_forest(lift.complex, lift.g);
        CHECK(is_isomorphic(fm.trees.at(0), m));
        CHECK(is_isomorphic(fn.trees.at(0), n));
        for (double p : {1.0, 2.0, kInf})
            CHECK(lp_function_distance(lift.f, lift.g, p) == label_distance(pm, pn, p));
    }
}

namespace {

// connected graph with monotone values; edge values sit above both endpoints
std::pair<CellComplex1, CellularFunction> random_monotone(std::mt19937_64& rng, int max_cells) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> nv(1, std::max(1, (max_cells + 1) / 2));
    int v = nv(rng);
    CellComplex1 x;
    x.vertex_count = v;
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Zero(v);
    for (int i = 0; i < v; ++i) f.vertex_values[i] = u(rng);
    std::vector<double> ev;
    for (int i = 1; i < v; ++i) {
        std::uniform_int_distribution<int> anchor(0, i - 1);
        int a = anchor(rng);
        x.edges.push_back({a, i});
        ev.push_back(std::max(f.vertex_values[a], f.vertex_values[i]) + u(rng));
    }
    while (static_cast<int>(x.edges.size()) + v < max_cells && v >= 2) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        x.edges.push_back({a, b});
        ev.push_back(std::max(f.vertex_values[a], f.vertex_values[b]) + u(rng));
    }
    f.edge_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ev.size()));
    for (size_t i = 0; i < ev.size(); ++i) f.edge_values[static_cast<Eigen::Index>(i)] = ev[i];
    return {x, f};
}

CellularFunction random_monotone_on(std::mt19937_64& rng, const CellComplex1& x) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CellularFunction f;
    f.vertex_values = Eigen::VectorXd::Zero(x.vertex_count);
    for (int i = 0; i < x.vertex_count; ++i) f.vertex_values[i] = u(rng);
    f.edge_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.edges.size()));
    for (size_t j = 0; j < x.edges.size(); ++j)
        f.edge_values[static_cast<Eigen::Index>(j)] =
            std::max(f.vertex_values[x.edges[j].first], f.vertex_values[x.edges[j].second]) +
            u(rng);
    return f;
}

} // namespace

TEST_CASE("sublevel sweep commutes with relabeling the complex") {
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 30; ++trial) {
        auto [x, f] = random_monotone(rng, 10);
        std::vector<int> perm(static_cast<size_t>(x.vertex_count));
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        CellComplex1 rx;
        rx.vertex_count = x.vertex_count;
        CellularFunction rf;
        rf.vertex_values = Eigen::VectorXd::Zero(x.vertex_count);
        for (int v = 0; v < x.vertex_count; ++v)
            rf.vertex_values[perm[static_cast<size_t>(v)]] = f.vertex_values[v];
        for (auto [a, b] : x.edges)
            rx.edges.push_back({perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)]});
        rf.edge_values = f.edge_values;
        auto lhs = sublevel_merge_forest(x, f);
        auto rhs = sublevel_merge_forest(rx, rf);
        REQUIRE(lhs.trees.size() == rhs.trees.size());
        CHECK(is_isomorphic(lhs.trees.at(0), rhs.trees.at(0)));
    }
}

TEST_CASE("stability chain on random monotone pairs") {
    std::mt19937_64 rng(223);
    for (int trial = 0; trial < 60; ++trial) {
        auto [x, f] = random_monotone(rng, 10);
        auto g = random_monotone_on(rng, x);
        auto tm = sublevel_merge_forest(x, f).trees.at(0);
        auto tn = sublevel_merge_forest(x, g).trees.at(0);
        auto pm = incidence_presentation(x, f);
        auto pn = incidence_presentation(x, g);
        REQUIRE(are_compatible(pm, pn));
        for (double p : {1.0, 2.0, kInf}) {
            double label = label_distance(pm, pn, p);
            CHECK(label == lp_function_distance(f, g, p));
            double w = wasserstein(elder_barcode(tm), elder_barcode(tn), p).value;
            CHECK(w <= label + 1e-9);
        }
        double di = interleaving_distance(tm, tn);
        CHECK(di <= lp_function_distance(f, g, kInf) + 1e-9);
    }
}
