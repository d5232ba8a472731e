#include "treedist/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "treedist/barcode.hpp"
#include "treedist/bracket.hpp"
#include "treedist/cophenetic.hpp"
#include "treedist/errors.hpp"
#include "treedist/filtration.hpp"
#include "treedist/interleaving.hpp"
#include "treedist/io.hpp"
#include "treedist/lp.hpp"
#include "treedist/random_instances.hpp"
#include "treedist/wasserstein.hpp"

namespace treedist {

namespace {

using Detail = std::optional<std::string>;

struct Ctx {
    double tol = 1e-9;
    InterleavingOptions opt;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ---- invariants over a pair of trees ----------------------------------

Detail check_tree_roundtrip(const MergeTree& m, const MergeTree& n, Ctx&) {
    for (const MergeTree* t : {&m, &n}) {
        if (!is_isomorphic(*t, from_persistent_set(t->persistent_set())))
            return "persistent set round trip lost the tree";
        auto p = minimal_presentation(*t);
        auto f = coequalize(p);
        if (f.trees.size() != 1 || !is_isomorphic(f.trees[0], *t))
            return "coequalize(minimal_presentation) is not the tree";
    }
    return std::nullopt;
}

Detail check_elder_rank(const MergeTree& m, const MergeTree& n, Ctx&) {
    for (const MergeTree* t : {&m, &n}) {
        auto bars = elder_barcode(*t);
        const auto& rep = t->persistent_set();
        int unbounded = 0;
        for (const auto& b : bars)
            if (b.unbounded()) ++unbounded;
        if (unbounded != 1) return "barcode does not have exactly one unbounded bar";
        std::vector<double> probes = rep.critical_times;
        for (size_t i = 0; i + 1 < rep.critical_times.size(); ++i)
            probes.push_back((rep.critical_times[i] + rep.critical_times[i + 1]) / 2);
        std::sort(probes.begin(), probes.end());
        for (size_t i = 0; i < probes.size(); ++i) {
            for (size_t j = i; j < probes.size(); ++j) {
                auto ev = evolution_map(rep, probes[i], probes[j]);
                std::vector<char> hit(32, 0);
                int image = 0;
                for (int e : ev)
                    if (!hit[static_cast<size_t>(e)]) {
                        hit[static_cast<size_t>(e)] = 1;
                        ++image;
                    }
                if (bars_containing(bars, probes[i], probes[j]) != image)
                    return "elder barcode disagrees with the evolution-rank oracle";
            }
        }
    }
    return std::nullopt;
}

Detail check_pad_compat(const MergeTree& m, const MergeTree& n, Ctx& ctx) {
    double t = std::max(m.max_height(), n.max_height());
    auto [pm, pn] = pad_concatenate(minimal_presentation(m), minimal_presentation(n), t);
    if (!are_compatible(pm, pn)) return "pad_concatenate output incompatible";
    if (!is_isomorphic(coequalize(pm).trees.at(0), m)) return "left pad lost its tree";
    if (!is_isomorphic(coequalize(pn).trees.at(0), n)) return "right pad lost its tree";
    double d1 = label_distance(pm, pn, 1);
    double d2 = label_distance(pm, pn, 2);
    double di = label_distance(pm, pn, kInf);
    if (d1 < d2 - ctx.tol || d2 < di - ctx.tol) return "label distance not monotone in p";
    if (label_distance(pn, pm, 2) != d2) return "label distance asymmetric";
    return std::nullopt;
}

Detail check_thm42_roundtrip(const MergeTree& m, const MergeTree& n, Ctx& ctx) {
    double e = interleaving_distance(m, n, ctx.opt);
    auto w = interleaving_exists(m, n, e, ctx.opt);
    if (!w) return "no witness at the reported interleaving distance";
    if (!verify_witness(m, n, *w, ctx.tol))
        return "witness at the reported distance fails verification";
    auto [pm, pn] = interleaving_to_presentations(m, n, *w);
    double label = label_distance(pm, pn, kInf);
    if (std::abs(label - e) > ctx.tol)
        return "conversion label gap " + fmt(label) + " != eps " + fmt(e);
    auto back = presentations_to_interleaving(pm, pn, ctx.opt);
    if (std::abs(back.epsilon - e) > ctx.tol)
        return "round-trip epsilon " + fmt(back.epsilon) + " != " + fmt(e);
    return std::nullopt;
}

Detail check_bracket(const MergeTree& m, const MergeTree& n, Ctx& ctx) {
    double lower1 = 0, lower2 = 0, lowerinf = 0;
    for (double p : {1.0, 2.0, kInf}) {
        auto br = presentation_distance_bracket(m, n, p, {}, 2, ctx.opt);
        if (br.lower > br.upper + ctx.tol)
            return "bracket inverted at p=" + fmt(p) + ": " + fmt(br.lower) + " > " +
                   fmt(br.upper);
        if (br.lower_certificate.wasserstein_value > br.upper + ctx.tol)
            return "Wasserstein exceeds the upper certificate";
        for (const auto& hop : br.upper_path) {
            double d1 = label_distance(hop.left, hop.right, 1);
            double d2 = label_distance(hop.left, hop.right, 2);
            double di = label_distance(hop.left, hop.right, kInf);
            if (d1 < d2 - ctx.tol || d2 < di - ctx.tol)
                return "certificate label distance not monotone in p";
        }
        if (p == 1.0) lower1 = br.lower;
        if (p == 2.0) lower2 = br.lower;
        if (p == kInf) {
            lowerinf = br.lower;
            if (std::abs(br.lower - br.upper) > ctx.tol)
                return "infinity bracket did not collapse: " + fmt(br.lower) + " vs " +
                       fmt(br.upper);
            if (!is_isomorphic(m, n) && br.lower_certificate.interleaving_value > 0 &&
                br.lower <= 0)
                return "non-isomorphic pair with positive interleaving got a zero lower bound";
        }
    }
    if (lower1 < lower2 - ctx.tol || lower2 < lowerinf - ctx.tol)
        return "bracket lower bounds not monotone in p";
    return std::nullopt;
}

Detail check_cophenetic_bound(const MergeTree& m, const MergeTree& n, Ctx& ctx) {
    if (m.leaves().size() > 3 || n.leaves().size() > 3) return std::nullopt;
    for (double p : {1.0, 2.0}) {
        auto br = presentation_distance_bracket(m, n, p, {}, 2, ctx.opt);
        double dc = cophenetic_distance(m, n, p);
        if (dc < br.lower - ctx.tol)
            return "cophenetic distance beats the presentation lower bound at p=" + fmt(p);
    }
    return std::nullopt;
}

// ---- invariants over a triple -----------------------------------------

Detail check_triangle(const MergeTree& a, const MergeTree& b, const MergeTree& c, Ctx& ctx) {
    double ab = interleaving_distance(a, b, ctx.opt);
    double bc = interleaving_distance(b, c, ctx.opt);
    double ac = interleaving_distance(a, c, ctx.opt);
    if (ac > ab + bc + ctx.tol)
        return "interleaving triangle broken: " + fmt(ac) + " > " + fmt(ab) + " + " + fmt(bc);
    return std::nullopt;
}

// ---- invariants over barcodes -----------------------------------------

Detail check_wasserstein_oracle(const Barcode& b, const Barcode& c, Ctx& ctx) {
    if (b.size() + c.size() > 8) return std::nullopt;
    for (double p : {1.0, 2.0}) {
        double got = wasserstein(b, c, p).value;
        double want = wasserstein_brute_force(b, c, p);
        if (want == kInf ? got != kInf : std::abs(got - want) > ctx.tol)
            return "solver " + fmt(got) + " != oracle " + fmt(want) + " at p=" + fmt(p);
    }
    double got = wasserstein(b, c, kInf).value;
    double want = wasserstein_brute_force(b, c, kInf);
    if (got != want) return "bottleneck " + fmt(got) + " != oracle " + fmt(want);
    return std::nullopt;
}

// ---- invariants over monotone pairs ------------------------------------

Detail check_stability(const CellComplex1& x, const CellularFunction& f,
                       const CellularFunction& g, Ctx& ctx) {
    auto tm = sublevel_merge_forest(x, f).trees.at(0);
    auto tn = sublevel_merge_forest(x, g).trees.at(0);
    auto pm = incidence_presentation(x, f);
    auto pn = incidence_presentation(x, g);
    if (!are_compatible(pm, pn)) return "incidence presentations incompatible";
    for (double p : {1.0, 2.0, kInf}) {
        double label = label_distance(pm, pn, p);
        if (label != lp_function_distance(f, g, p))
            return "label distance differs from the cell-value distance";
        double w = wasserstein(elder_barcode(tm), elder_barcode(tn), p).value;
        if (w > label + ctx.tol)
            return "Wasserstein " + fmt(w) + " exceeds the stability bound " + fmt(label);
    }
    double di = interleaving_distance(tm, tn, ctx.opt);
    if (di > lp_function_distance(f, g, kInf) + ctx.tol)
        return "interleaving distance exceeds the sup-norm bound";
    // lift round trip
    auto lift = geometric_lift(pm, pn);
    if (!is_monotone(lift.complex, lift.f) || !is_monotone(lift.complex, lift.g))
        return "lift broke monotonicity";
    if (!is_isomorphic(sublevel_merge_forest(lift.complex, lift.f).trees.at(0), tm) ||
        !is_isomorphic(sublevel_merge_forest(lift.complex, lift.g).trees.at(0), tn))
        return "lift changed a sublevel tree";
    for (double p : {1.0, 2.0, kInf})
        if (lp_function_distance(lift.f, lift.g, p) != label_distance(pm, pn, p))
            return "lift changed the distance";
    return std::nullopt;
}

// ---- shrinking ----------------------------------------------------------

std::vector<MergeTree> shrink_tree(const MergeTree& t) {
    std::vector<MergeTree> out;
    if (t.node_count() > 1) {
        for (int leaf : t.leaves()) {
            if (t.leaves().size() <= 1) break;
            TreeData d = t.to_data();
            const std::string& id = t.node(leaf).id;
            std::erase_if(d.nodes, [&](const MergeNode& n) { return n.id == id; });
            for (auto& n : d.nodes) std::erase(n.children, id);
            if (validate(d).empty()) out.push_back(MergeTree::build(d));
        }
    }
    TreeData d = t.to_data();
    bool changed = false;
    for (auto& n : d.nodes) {
        double snapped = std::round(n.height * 4.0) / 4.0;
        if (snapped != n.height) {
            n.height = snapped;
            changed = true;
        }
    }
    if (changed && validate(d).empty()) out.push_back(MergeTree::build(d));
    return out;
}

struct Failure {
    std::string invariant;
    std::string detail;
    io::json instance;
};

using TreePairTest = Detail (*)(const MergeTree&, const MergeTree&, Ctx&);

std::optional<Failure> run_tree_pair(const char* name, TreePairTest test, MergeTree m,
                                     MergeTree n, Ctx& ctx) {
    Detail d = test(m, n, ctx);
    if (!d) return std::nullopt;
    // greedy shrink: keep any smaller instance that still fails
    bool improved = true;
    int steps = 0;
    while (improved && steps < 100) {
        improved = false;
        for (auto& cand : shrink_tree(m)) {
            ++steps;
            if (auto dd = test(cand, n, ctx)) {
                m = cand;
                d = dd;
                improved = true;
                break;
            }
        }
        if (improved) continue;
        for (auto& cand : shrink_tree(n)) {
            ++steps;
            if (auto dd = test(m, cand, ctx)) {
                n = cand;
                d = dd;
                improved = true;
                break;
            }
        }
    }
    Failure f;
    f.invariant = name;
    f.detail = *d;
    f.instance["m"] = io::tree_to_json(m);
    f.instance["n"] = io::tree_to_json(n);
    return f;
}

} // namespace

FuzzReport run_fuzz(const FuzzConfig& config) {
    FuzzReport report;
    Ctx ctx;
    ctx.tol = config.tol;
    ctx.opt.tol = config.tol;
    if (config.mutation == "skip-triangle") ctx.opt.enforce_triangles = false;
    else if (!config.mutation.empty())
        throw InputError("unknown mutation: " + config.mutation);

    auto record = [&](Failure f, std::uint64_t trial) {
        f.instance["invariant"] = f.invariant;
        f.instance["detail"] = f.detail;
        f.instance["seed"] = config.seed;
        f.instance["trial"] = trial;
        std::string path = config.out_dir + "/reproducer.json";
        io::write_file(path, f.instance);
        report.failures.push_back({f.invariant, f.detail, path});
    };

    for (int trial = 0; trial < config.trials; ++trial) {
        std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial));
        MergeTree m = random_grid_merge_tree(rng, 4);
        MergeTree n = random_grid_merge_tree(rng, 4);
        MergeTree c = random_grid_merge_tree(rng, 3);
        MergeTree gm = random_merge_tree(rng, 5);
        MergeTree gn = random_merge_tree(rng, 5);

        struct Named {
            const char* name;
            TreePairTest test;
            const MergeTree* a;
            const MergeTree* b;
        };
        const Named tree_checks[] = {
            {"tree-roundtrip", check_tree_roundtrip, &gm, &gn},
            {"elder-rank", check_elder_rank, &m, &gn},
            {"pad-compat", check_pad_compat, &gm, &n},
            {"thm42-roundtrip", check_thm42_roundtrip, &m, &n},
            {"bracket", check_bracket, &m, &n},
            {"cophenetic-bound", check_cophenetic_bound, &m, &c},
        };
        for (const auto& chk : tree_checks) {
            ++report.checks;
            if (auto f = run_tree_pair(chk.name, chk.test, *chk.a, *chk.b, ctx)) {
                record(std::move(*f), static_cast<std::uint64_t>(trial));
                report.trials_run = trial + 1;
                return report;
            }
        }

        ++report.checks;
        if (auto d = check_triangle(m, n, c, ctx)) {
            Failure f;
            f.invariant = "interleaving-triangle";
            f.detail = *d;
            f.instance["a"] = io::tree_to_json(m);
            f.instance["b"] = io::tree_to_json(n);
            f.instance["c"] = io::tree_to_json(c);
            record(std::move(f), static_cast<std::uint64_t>(trial));
            report.trials_run = trial + 1;
            return report;
        }

        Barcode ba = random_barcode(rng, 4);
        Barcode bb = random_barcode(rng, 4);
        ++report.checks;
        if (auto d = check_wasserstein_oracle(ba, bb, ctx)) {
            // shrink by dropping bars while the check still fails
            bool improved = true;
            while (improved) {
                improved = false;
                for (size_t i = 0; i < ba.size() && !improved; ++i) {
                    Barcode cand = ba;
                    cand.erase(cand.begin() + static_cast<long>(i));
                    if (auto dd = check_wasserstein_oracle(cand, bb, ctx)) {
                        ba = cand;
                        d = dd;
                        improved = true;
                    }
                }
                for (size_t i = 0; i < bb.size() && !improved; ++i) {
                    Barcode cand = bb;
                    cand.erase(cand.begin() + static_cast<long>(i));
                    if (auto dd = check_wasserstein_oracle(ba, cand, ctx)) {
                        bb = cand;
                        d = dd;
                        improved = true;
                    }
                }
            }
            Failure f;
            f.invariant = "wasserstein-oracle";
            f.detail = *d;
            f.instance["barcodeA"] = io::barcode_to_json(ba);
            f.instance["barcodeB"] = io::barcode_to_json(bb);
            record(std::move(f), static_cast<std::uint64_t>(trial));
            report.trials_run = trial + 1;
            return report;
        }

        auto [x, fm] = random_monotone_complex(rng, 10);
        auto gn2 = random_monotone_function(rng, x);
        ++report.checks;
        if (auto d = check_stability(x, fm, gn2, ctx)) {
            // shrink by dropping surplus edges
            bool improved = true;
            while (improved && x.edges.size() + 1 > static_cast<size_t>(x.vertex_count)) {
                improved = false;
                for (size_t j = x.vertex_count - 1; j < x.edges.size(); ++j) {
                    CellComplex1 cx = x;
                    CellularFunction cf = fm, cg = gn2;
                    cx.edges.erase(cx.edges.begin() + static_cast<long>(j));
                    auto drop = [&](CellularFunction& h) {
                        Eigen::VectorXd e(h.edge_values.size() - 1);
                        int w = 0;
                        for (int i = 0; i < h.edge_values.size(); ++i)
                            if (i != static_cast<int>(j)) e[w++] = h.edge_values[i];
                        h.edge_values = e;
                    };
                    drop(cf);
                    drop(cg);
                    if (auto dd = check_stability(cx, cf, cg, ctx)) {
                        x = cx;
                        fm = cf;
                        gn2 = cg;
                        d = dd;
                        improved = true;
                        break;
                    }
                }
            }
            Failure f;
            f.invariant = "stability-chain";
            f.detail = *d;
            f.instance["complex"] = io::complex_to_json(x);
            f.instance["f"] = io::function_to_json(fm);
            f.instance["g"] = io::function_to_json(gn2);
            record(std::move(f), static_cast<std::uint64_t>(trial));
            report.trials_run = trial + 1;
            return report;
        }

        report.trials_run = trial + 1;
    }
    return report;
}

} // namespace treedist
