#include "treedist/io.hpp"

#include <fstream>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist::io {

namespace {

double number(const json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
    return j.get<double>();
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
    return *it;
}

} // namespace

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

double p_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw InputError("p: expected a number or \"inf\"");
    }
    double p = number(j, "p");
    if (!is_valid_p(p)) throw InputError("p must lie in [1, inf]");
    return p;
}

json p_to_json(double p) {
    if (p == kInf) return "inf";
    return p;
}

json tree_to_json(const MergeTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes()) {
        json jn;
        jn["id"] = n.id;
        jn["height"] = n.height;
        jn["children"] = n.children;
        nodes.push_back(std::move(jn));
    }
    json j;
    j["nodes"] = std::move(nodes);
    j["root"] = t.node(t.root()).id;
    return j;
}

TreeData tree_data_from_json(const json& j) {
    TreeData d;
    for (const auto& jn : field(j, "nodes")) {
        MergeNode n;
        n.id = field(jn, "id").get<std::string>();
        n.height = number(field(jn, "height"), "height");
        if (auto it = jn.find("children"); it != jn.end())
            for (const auto& c : *it) n.children.push_back(c.get<std::string>());
        d.nodes.push_back(std::move(n));
    }
    d.root = field(j, "root").get<std::string>();
    return d;
}

MergeTree tree_from_json(const json& j) { return MergeTree::build(tree_data_from_json(j)); }

json forest_to_json(const MergeForest& f) {
    json trees = json::array();
    for (const auto& t : f.trees) trees.push_back(tree_to_json(t));
    json j;
    j["trees"] = std::move(trees);
    return j;
}

json barcode_to_json(const Barcode& b) {
    json bars = json::array();
    for (const auto& i : b) {
        json ji;
        ji["birth"] = i.birth;
        if (i.unbounded()) ji["death"] = "inf";
        else ji["death"] = i.death;
        bars.push_back(std::move(ji));
    }
    json j;
    j["bars"] = std::move(bars);
    return j;
}

Barcode barcode_from_json(const json& j) {
    Barcode b;
    for (const auto& ji : field(j, "bars")) {
        Interval i;
        i.birth = number(field(ji, "birth"), "birth");
        const json& d = field(ji, "death");
        i.death = d.is_string() && d.get<std::string>() == "inf" ? kInf : number(d, "death");
        if (i.death < i.birth) throw InputError("bar dies before it is born");
        b.push_back(i);
    }
    return b;
}

json presentation_to_json(const Presentation& p) {
    json rels = json::array();
    for (const auto& r : p.relations()) {
        json jr;
        jr["birth"] = r.birth;
        jr["f"] = r.f;
        jr["g"] = r.g;
        rels.push_back(std::move(jr));
    }
    json j;
    j["generators"] = p.generator_births();
    j["relations"] = std::move(rels);
    return j;
}

Presentation presentation_from_json(const json& j) {
    std::vector<double> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(number(g, "generator"));
    std::vector<Relation> rels;
    for (const auto& jr : field(j, "relations")) {
        Relation r;
        r.birth = number(field(jr, "birth"), "relation birth");
        r.f = field(jr, "f").get<int>();
        r.g = field(jr, "g").get<int>();
        rels.push_back(r);
    }
    return Presentation(std::move(gens), std::move(rels));
}

json complex_to_json(const CellComplex1& x) {
    json edges = json::array();
    for (auto [a, b] : x.edges) edges.push_back(json::array({a, b}));
    json j;
    j["vertexCount"] = x.vertex_count;
    j["edges"] = std::move(edges);
    return j;
}

CellComplex1 complex_from_json(const json& j) {
    CellComplex1 x;
    x.vertex_count = field(j, "vertexCount").get<int>();
    for (const auto& e : field(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw InputError("edge: expected a pair");
        x.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    validate_complex(x);
    return x;
}

json function_to_json(const CellularFunction& f) {
    json j;
    j["vertexValues"] = std::vector<double>(f.vertex_values.begin(), f.vertex_values.end());
    j["edgeValues"] = std::vector<double>(f.edge_values.begin(), f.edge_values.end());
    return j;
}

CellularFunction function_from_json(const json& j) {
    CellularFunction f;
    const json& vv = field(j, "vertexValues");
    f.vertex_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vv.size()));
    for (size_t i = 0; i < vv.size(); ++i)
        f.vertex_values[static_cast<Eigen::Index>(i)] = number(vv[i], "vertex value");
    const json& ev = field(j, "edgeValues");
    f.edge_values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ev.size()));
    for (size_t i = 0; i < ev.size(); ++i)
        f.edge_values[static_cast<Eigen::Index>(i)] = number(ev[i], "edge value");
    return f;
}

json matching_to_json(const Matching& m) {
    json pairs = json::array();
    for (auto [i, j] : m.pairs) pairs.push_back(json::array({i, j}));
    json out;
    out["pairs"] = std::move(pairs);
    return out;
}

json witness_to_json(const InterleavingWitness& w) {
    auto tables = [](const std::vector<ComponentMap>& maps) {
        json arr = json::array();
        for (const auto& cm : maps) {
            json jm;
            jm["time"] = cm.time;
            jm["map"] = cm.map;
            arr.push_back(std::move(jm));
        }
        return arr;
    };
    json j;
    j["epsilon"] = w.epsilon;
    j["phi"] = tables(w.phi);
    j["psi"] = tables(w.psi);
    return j;
}

InterleavingWitness witness_from_json(const json& j) {
    InterleavingWitness w;
    w.epsilon = number(field(j, "epsilon"), "epsilon");
    auto tables = [](const json& arr) {
        std::vector<ComponentMap> maps;
        for (const auto& jm : arr) {
            ComponentMap cm;
            cm.time = field(jm, "time").get<double>();
            for (const auto& e : field(jm, "map")) cm.map.push_back(e.get<int>());
            maps.push_back(std::move(cm));
        }
        return maps;
    };
    w.phi = tables(field(j, "phi"));
    w.psi = tables(field(j, "psi"));
    return w;
}

json bracket_to_json(const DistanceBracket& b) {
    json j;
    j["p"] = p_to_json(b.p);
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    json lc;
    lc["wasserstein"] = b.lower_certificate.wasserstein_value == kInf
                            ? json("inf")
                            : json(b.lower_certificate.wasserstein_value);
    lc["matching"] = matching_to_json(b.lower_certificate.matching);
    lc["barcodeM"] = barcode_to_json(b.lower_certificate.barcode_m);
    lc["barcodeN"] = barcode_to_json(b.lower_certificate.barcode_n);
    lc["interleaving"] = b.lower_certificate.interleaving_value;
    j["lowerCertificate"] = std::move(lc);
    json path = json::array();
    for (const auto& hop : b.upper_path) {
        json jh;
        jh["value"] = hop.value;
        jh["left"] = presentation_to_json(hop.left);
        jh["right"] = presentation_to_json(hop.right);
        path.push_back(std::move(jh));
    }
    j["upperCertificate"] = std::move(path);
    j["pivotsUsed"] = b.pivots_used;
    return j;
}

} // namespace treedist::io
