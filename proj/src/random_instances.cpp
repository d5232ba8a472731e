#include "treedist/random_instances.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace treedist {

namespace {

struct Comp {
    std::string id;
    double top;
};

MergeTree cascade(std::mt19937_64& rng, std::vector<Comp> comps, TreeData d,
                  const std::function<double(double)>& gap) {
    int next = 0;
    while (comps.size() > 1) {
        std::uniform_int_distribution<size_t> pick(0, comps.size() - 1);
        size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        double h = std::max(comps[i].top, comps[j].top) + gap(std::max(comps[i].top, comps[j].top));
        d.nodes.push_back({"m" + std::to_string(next++), h, {comps[i].id, comps[j].id}});
        comps[i] = {d.nodes.back().id, h};
        comps.erase(comps.begin() + static_cast<long>(j));
    }
    d.root = comps[0].id;
    return MergeTree::build(d);
}

} // namespace

MergeTree random_merge_tree(std::mt19937_64& rng, int max_leaves) {
    std::uniform_int_distribution<int> nl(1, max_leaves);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int n = nl(rng);
    TreeData d;
    std::vector<Comp> comps;
    for (int i = 0; i < n; ++i) {
        d.nodes.push_back({"l" + std::to_string(i), u(rng), {}});
        comps.push_back({d.nodes.back().id, d.nodes.back().height});
    }
    return cascade(rng, std::move(comps), std::move(d), [&](double) { return u(rng); });
}

MergeTree random_grid_merge_tree(std::mt19937_64& rng, int max_leaves, double step) {
    std::uniform_int_distribution<int> nl(1, max_leaves);
    std::uniform_int_distribution<int> lv(0, 8);
    std::uniform_int_distribution<int> gap(0, 3);
    int n = nl(rng);
    TreeData d;
    std::vector<Comp> comps;
    for (int i = 0; i < n; ++i) {
        d.nodes.push_back({"l" + std::to_string(i), step * lv(rng), {}});
        comps.push_back({d.nodes.back().id, d.nodes.back().height});
    }
    return cascade(rng, std::move(comps), std::move(d),
                   [&](double) { return step * gap(rng); });
}

Barcode random_barcode(std::mt19937_64& rng, int max_bars, bool allow_unbounded) {
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

std::pair<CellComplex1, CellularFunction> random_monotone_complex(std::mt19937_64& rng,
                                                                  int max_cells) {
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
    return {std::move(x), std::move(f)};
}

CellularFunction random_monotone_function(std::mt19937_64& rng, const CellComplex1& x) {
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

} // namespace treedist
