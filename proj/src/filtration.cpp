#include "treedist/filtration.hpp"

#include <algorithm>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

void validate_complex(const CellComplex1& x) {
    if (x.vertex_count < 0) throw InputError("complex: negative vertex count");
    for (auto [a, b] : x.edges) {
        if (a < 0 || a >= x.vertex_count || b < 0 || b >= x.vertex_count)
            throw InputError("complex: edge endpoint out of range");
        if (a == b) throw InputError("complex: edges need two distinct endpoints");
    }
}

namespace {

void check_dims(const CellComplex1& x, const CellularFunction& f) {
    validate_complex(x);
    if (f.vertex_values.size() != x.vertex_count ||
        f.edge_values.size() != static_cast<Eigen::Index>(x.edges.size()))
        throw InputError("cellular function does not fit the complex");
}

bool connected(const CellComplex1& x) {
    if (x.vertex_count == 0) return false;
    std::vector<int> uf(static_cast<size_t>(x.vertex_count));
    for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    auto find = [&](int v) {
        while (uf[static_cast<size_t>(v)] != v)
            v = uf[static_cast<size_t>(v)] = uf[static_cast<size_t>(uf[static_cast<size_t>(v)])];
        return v;
    };
    for (auto [a, b] : x.edges) uf[static_cast<size_t>(find(a))] = find(b);
    for (int v = 1; v < x.vertex_count; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

} // namespace

bool is_monotone(const CellComplex1& x, const CellularFunction& f) {
    check_dims(x, f);
    for (size_t j = 0; j < x.edges.size(); ++j) {
        double e = f.edge_values[static_cast<Eigen::Index>(j)];
        if (e < f.vertex_values[x.edges[j].first] || e < f.vertex_values[x.edges[j].second])
            return false;
    }
    return true;
}

MergeForest sublevel_merge_forest(const CellComplex1& x, const CellularFunction& f) {
    if (!is_monotone(x, f)) throw InputError("sublevel_merge_forest needs a monotone function");
    std::vector<double> gens(static_cast<size_t>(x.vertex_count));
    for (int v = 0; v < x.vertex_count; ++v) gens[static_cast<size_t>(v)] = f.vertex_values[v];
    std::vector<Relation> rels;
    rels.reserve(x.edges.size());
    for (size_t j = 0; j < x.edges.size(); ++j)
        rels.push_back({f.edge_values[static_cast<Eigen::Index>(j)], x.edges[j].first,
                        x.edges[j].second});
    return coequalize(Presentation(std::move(gens), std::move(rels)));
}

Presentation incidence_presentation(const CellComplex1& x, const CellularFunction& f) {
    if (!is_monotone(x, f)) throw InputError("incidence_presentation needs a monotone function");
    if (!connected(x))
        throw InputError("incidence_presentation needs a connected complex");
    std::vector<double> gens(static_cast<size_t>(x.vertex_count));
    for (int v = 0; v < x.vertex_count; ++v) gens[static_cast<size_t>(v)] = f.vertex_values[v];
    std::vector<Relation> rels;
    rels.reserve(x.edges.size());
    for (size_t j = 0; j < x.edges.size(); ++j)
        rels.push_back({f.edge_values[static_cast<Eigen::Index>(j)], x.edges[j].first,
                        x.edges[j].second});
    return Presentation(std::move(gens), std::move(rels));
}

double lp_function_distance(const CellularFunction& f, const CellularFunction& g, double p) {
    if (f.vertex_values.size() != g.vertex_values.size() ||
        f.edge_values.size() != g.edge_values.size())
        throw InputError("lp_function_distance: dimension mismatch");
    Eigen::VectorXd diff(f.vertex_values.size() + f.edge_values.size());
    diff << f.vertex_values - g.vertex_values, f.edge_values - g.edge_values;
    return lp_norm(diff, p);
}

Lift geometric_lift(const Presentation& pm, const Presentation& pn) {
    if (!are_compatible(pm, pn)) throw InputError("geometric_lift needs compatible presentations");
    Lift out;
    const int k = pm.generator_count();
    out.complex.vertex_count = k;
    std::vector<double> fv(pm.generator_births());
    std::vector<double> gv(pn.generator_births());
    std::vector<double> fe, ge;
    for (int j = 0; j < pm.relation_count(); ++j) {
        const Relation& rm = pm.relations()[static_cast<size_t>(j)];
        const Relation& rn = pn.relations()[static_cast<size_t>(j)];
        int a = rm.f, b = rm.g;
        if (a == b) {
            // self relation: attach a twin vertex born at the relation's own
            // labels; it is absorbed immediately, so pi_0 is untouched
            b = out.complex.vertex_count++;
            fv.push_back(rm.birth);
            gv.push_back(rn.birth);
        }
        out.complex.edges.push_back({a, b});
        fe.push_back(rm.birth);
        ge.push_back(rn.birth);
    }
    auto to_vec = [](const std::vector<double>& v) {
        Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
        for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
        return out;
    };
    out.f.vertex_values = to_vec(fv);
    out.f.edge_values = to_vec(fe);
    out.g.vertex_values = to_vec(gv);
    out.g.edge_values = to_vec(ge);
    return out;
}

} // namespace treedist
