#include "treedist/interleaving.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

namespace {

// Element births of a persistent set: one per strand of the tree.
struct Births {
    std::vector<double> time;
    std::vector<int> idx;  // critical index of appearance
    std::vector<int> elem; // element index there
    int count() const { return static_cast<int>(time.size()); }
};

Births births_of(const PersistentSetRep& rep) {
    Births b;
    if (rep.critical_times.empty()) return b;
    for (int e = 0; e < rep.critical_set_sizes[0]; ++e) {
        b.time.push_back(rep.critical_times[0]);
        b.idx.push_back(0);
        b.elem.push_back(e);
    }
    for (size_t i = 1; i < rep.critical_times.size(); ++i) {
        std::vector<char> hit(static_cast<size_t>(rep.critical_set_sizes[i]), 0);
        for (int img : rep.maps[i - 1]) hit[static_cast<size_t>(img)] = 1;
        for (int e = 0; e < rep.critical_set_sizes[i]; ++e) {
            if (hit[static_cast<size_t>(e)]) continue;
            b.time.push_back(rep.critical_times[i]);
            b.idx.push_back(static_cast<int>(i));
            b.elem.push_back(e);
        }
    }
    return b;
}

// First critical time at which two born strands share a component.
double merge_time(const PersistentSetRep& rep, const Births& b, int u, int v) {
    int q = std::max(b.idx[static_cast<size_t>(u)], b.idx[static_cast<size_t>(v)]);
    int eu = rep.evolve(b.idx[static_cast<size_t>(u)], b.elem[static_cast<size_t>(u)], q);
    int ev = rep.evolve(b.idx[static_cast<size_t>(v)], b.elem[static_cast<size_t>(v)], q);
    while (eu != ev) {
        ++q;
        if (q >= static_cast<int>(rep.critical_times.size()))
            throw InputError("merge_time: strands never meet (not a tree)");
        eu = rep.maps[static_cast<size_t>(q) - 1][static_cast<size_t>(eu)];
        ev = rep.maps[static_cast<size_t>(q) - 1][static_cast<size_t>(ev)];
    }
    return rep.critical_times[static_cast<size_t>(q)];
}

struct Side {
    const PersistentSetRep* rep = nullptr;
    Births births;
    std::vector<std::vector<double>> merge; // pairwise merge times of births
};

Side make_side(const MergeTree& t) {
    Side s;
    s.rep = &t.persistent_set();
    s.births = births_of(*s.rep);
    int n = s.births.count();
    s.merge.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            s.merge[static_cast<size_t>(u)][static_cast<size_t>(v)] =
                s.merge[static_cast<size_t>(v)][static_cast<size_t>(u)] =
                    merge_time(*s.rep, s.births, u, v);
    return s;
}

// Evolves an assigned image (element at index `from`) to the index holding
// time t (+ tol) in the codomain rep.
int evolve_to_time(const PersistentSetRep& rep, int from, int elem, double t, double tol) {
    int to = rep.index_at(t, tol);
    return rep.evolve(from, elem, to);
}

struct Assignment {
    std::vector<int> target_idx;  // codomain critical index per birth
    std::vector<int> target_elem; // assigned element per birth (-1 unset)
};

// One direction of the interleaving, determined by where each strand birth
// lands. Naturality holds iff images agree at every pairwise merge time.
bool consistent_with(const Side& dom, const PersistentSetRep& cod, const Assignment& asg, int u,
                     double eps, double tol) {
    for (int v = 0; v < dom.births.count(); ++v) {
        if (v == u || asg.target_elem[static_cast<size_t>(v)] < 0) continue;
        double tm = dom.merge[static_cast<size_t>(u)][static_cast<size_t>(v)];
        int iu = evolve_to_time(cod, asg.target_idx[static_cast<size_t>(u)],
                                asg.target_elem[static_cast<size_t>(u)], tm + eps, tol);
        int iv = evolve_to_time(cod, asg.target_idx[static_cast<size_t>(v)],
                                asg.target_elem[static_cast<size_t>(v)], tm + eps, tol);
        if (iu != iv) return false;
    }
    return true;
}

struct SearchCtx {
    const Side& m;
    const Side& n;
    double eps;
    double tol;
    bool triangles;
    long long budget = 0;
    long long spent = 0;

    Assignment phi;
    Assignment psi;
    // representative N-birth inside each phi target component, fixed after
    // the phi phase; -1 until computed
    std::vector<int> phi_rep;

    void tick() {
        if (++spent > budget)
            throw ScaleGuardError("interleaving search exceeded its effort cap", budget);
    }

    bool search_psi(int k);
    bool search_phi(int u);
    bool triangle1_holds(int u) const;
    bool triangle2_holds(int k) const;
};

// psi(phi) must be the 2eps shift on M; checked per M-birth u as soon as the
// representative N-birth of phi(u) has its psi image.
bool SearchCtx::triangle1_holds(int u) const {
    int k = phi_rep[static_cast<size_t>(u)];
    double t2 = m.births.time[static_cast<size_t>(u)] + 2 * eps;
    int via = evolve_to_time(*m.rep, psi.target_idx[static_cast<size_t>(k)],
                             psi.target_elem[static_cast<size_t>(k)], t2, tol);
    int direct = evolve_to_time(*m.rep, m.births.idx[static_cast<size_t>(u)],
                                m.births.elem[static_cast<size_t>(u)], t2, tol);
    return via == direct;
}

// phi(psi) must be the 2eps shift on N; checked per N-birth k right away.
bool SearchCtx::triangle2_holds(int k) const {
    double tk = n.births.time[static_cast<size_t>(k)];
    int target = psi.target_elem[static_cast<size_t>(k)];
    int qm = psi.target_idx[static_cast<size_t>(k)];
    // representative M-birth inside the psi target component
    int rep_m = -1;
    for (int u = 0; u < m.births.count(); ++u) {
        if (m.births.idx[static_cast<size_t>(u)] > qm) continue;
        if (m.rep->evolve(m.births.idx[static_cast<size_t>(u)], m.births.elem[static_cast<size_t>(u)],
                          qm) == target) {
            rep_m = u;
            break;
        }
    }
    if (rep_m < 0) return false; // unreachable: every element descends from a birth
    double t2 = tk + 2 * eps;
    int via = evolve_to_time(*n.rep, phi.target_idx[static_cast<size_t>(rep_m)],
                             phi.target_elem[static_cast<size_t>(rep_m)], t2, tol);
    int direct = evolve_to_time(*n.rep, n.births.idx[static_cast<size_t>(k)],
                                n.births.elem[static_cast<size_t>(k)], t2, tol);
    return via == direct;
}

bool SearchCtx::search_psi(int k) {
    if (k == n.births.count()) return true;
    int qm = psi.target_idx[static_cast<size_t>(k)];
    int choices = (*m.rep).critical_set_sizes[static_cast<size_t>(qm)];
    for (int e = 0; e < choices; ++e) {
        tick();
        psi.target_elem[static_cast<size_t>(k)] = e;
        bool ok = consistent_with(n, *m.rep, psi, k, eps, tol);
        if (ok && triangles) {
            ok = triangle2_holds(k);
            for (int u = 0; ok && u < m.births.count(); ++u)
                if (phi_rep[static_cast<size_t>(u)] == k) ok = triangle1_holds(u);
        }
        if (ok && search_psi(k + 1)) return true;
    }
    psi.target_elem[static_cast<size_t>(k)] = -1;
    return false;
}

bool SearchCtx::search_phi(int u) {
    if (u == m.births.count()) {
        // fix representative N-births of the phi targets, then search psi
        for (int x = 0; x < m.births.count(); ++x) {
            int qn = phi.target_idx[static_cast<size_t>(x)];
            int rep_n = -1;
            for (int k = 0; k < n.births.count(); ++k) {
                if (n.births.idx[static_cast<size_t>(k)] > qn) continue;
                if (n.rep->evolve(n.births.idx[static_cast<size_t>(k)],
                                  n.births.elem[static_cast<size_t>(k)], qn) ==
                    phi.target_elem[static_cast<size_t>(x)]) {
                    rep_n = k;
                    break;
                }
            }
            if (rep_n < 0) return false;
            phi_rep[static_cast<size_t>(x)] = rep_n;
        }
        return search_psi(0);
    }
    int qn = phi.target_idx[static_cast<size_t>(u)];
    int choices = (*n.rep).critical_set_sizes[static_cast<size_t>(qn)];
    for (int e = 0; e < choices; ++e) {
        tick();
        phi.target_elem[static_cast<size_t>(u)] = e;
        if (consistent_with(m, *n.rep, phi, u, eps, tol) && search_phi(u + 1)) return true;
    }
    phi.target_elem[static_cast<size_t>(u)] = -1;
    return false;
}

// Tables over the grid where either side changes.
std::vector<ComponentMap> build_tables(const Side& dom, const PersistentSetRep& cod,
                                       const Assignment& asg, double eps, double tol) {
    std::vector<double> grid = dom.rep->critical_times;
    for (double s : cod.critical_times) grid.push_back(s - eps);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<ComponentMap> tables;
    for (double g : grid) {
        int qd = dom.rep->index_at(g, tol);
        if (qd < 0) continue;
        ComponentMap cm;
        cm.time = g;
        cm.map.assign(static_cast<size_t>(dom.rep->critical_set_sizes[static_cast<size_t>(qd)]),
                      -1);
        for (int x = 0; x < static_cast<int>(cm.map.size()); ++x) {
            for (int u = 0; u < dom.births.count(); ++u) {
                if (dom.births.idx[static_cast<size_t>(u)] > qd) continue;
                if (dom.rep->evolve(dom.births.idx[static_cast<size_t>(u)],
                                    dom.births.elem[static_cast<size_t>(u)], qd) != x)
                    continue;
                cm.map[static_cast<size_t>(x)] =
                    evolve_to_time(cod, asg.target_idx[static_cast<size_t>(u)],
                                   asg.target_elem[static_cast<size_t>(u)], g + eps, tol);
                break;
            }
        }
        tables.push_back(std::move(cm));
    }
    return tables;
}

// Map table lookup at time t: latest table at or before t (+ tol).
const ComponentMap* eval_table(const std::vector<ComponentMap>& tables, double t, double tol) {
    const ComponentMap* out = nullptr;
    for (const auto& cm : tables) {
        if (cm.time <= t + tol) out = &cm;
        else break;
    }
    return out;
}

std::vector<int> compose_evolution(const PersistentSetRep& rep, double s, double t, double tol) {
    int i = rep.index_at(s, tol);
    int j = rep.index_at(t, tol);
    if (i < 0) return {};
    std::vector<int> m(static_cast<size_t>(rep.critical_set_sizes[static_cast<size_t>(i)]));
    for (int e = 0; e < static_cast<int>(m.size()); ++e)
        m[static_cast<size_t>(e)] = rep.evolve(i, e, j);
    return m;
}

void check_scale(const MergeTree& t, const InterleavingOptions& opt) {
    for (int s : t.persistent_set().critical_set_sizes)
        if (s > opt.max_critical_set)
            throw ScaleGuardError("interleaving search limited to small critical sets",
                                  opt.max_critical_set);
}

} // namespace

std::optional<InterleavingWitness> interleaving_exists(const MergeTree& m, const MergeTree& n,
                                                       double eps,
                                                       const InterleavingOptions& opt) {
    if (eps < 0) throw InputError("interleaving_exists: eps must be nonnegative");
    check_scale(m, opt);
    check_scale(n, opt);

    Side sm = make_side(m);
    Side sn = make_side(n);

    // both directions need nonempty codomains at every birth
    SearchCtx ctx{sm, sn, eps, opt.tol, opt.enforce_triangles, opt.search_budget, 0, {}, {}, {}};
    ctx.phi.target_idx.resize(static_cast<size_t>(sm.births.count()));
    ctx.phi.target_elem.assign(static_cast<size_t>(sm.births.count()), -1);
    ctx.phi_rep.assign(static_cast<size_t>(sm.births.count()), -1);
    for (int u = 0; u < sm.births.count(); ++u) {
        int q = sn.rep->index_at(sm.births.time[static_cast<size_t>(u)] + eps, opt.tol);
        if (q < 0) return std::nullopt;
        ctx.phi.target_idx[static_cast<size_t>(u)] = q;
    }
    ctx.psi.target_idx.resize(static_cast<size_t>(sn.births.count()));
    ctx.psi.target_elem.assign(static_cast<size_t>(sn.births.count()), -1);
    for (int k = 0; k < sn.births.count(); ++k) {
        int q = sm.rep->index_at(sn.births.time[static_cast<size_t>(k)] + eps, opt.tol);
        if (q < 0) return std::nullopt;
        ctx.psi.target_idx[static_cast<size_t>(k)] = q;
    }

    if (!ctx.search_phi(0)) return std::nullopt;

    InterleavingWitness w;
    w.epsilon = eps;
    w.phi = build_tables(sm, *sn.rep, ctx.phi, eps, opt.tol);
    w.psi = build_tables(sn, *sm.rep, ctx.psi, eps, opt.tol);
    return w;
}

double interleaving_distance(const MergeTree& m, const MergeTree& n,
                             const InterleavingOptions& opt) {
    check_scale(m, opt);
    check_scale(n, opt);
    std::vector<double> taus = m.persistent_set().critical_times;
    for (double s : n.persistent_set().critical_times) taus.push_back(s);
    std::vector<double> cands{0.0};
    for (size_t i = 0; i < taus.size(); ++i) {
        for (size_t j = i + 1; j < taus.size(); ++j) {
            double d = std::abs(taus[i] - taus[j]);
            cands.push_back(d);
            cands.push_back(d / 2);
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    // the largest candidate is always feasible: both trees are single
    // components that far out
    size_t lo = 0, hi = cands.size() - 1;
    if (!interleaving_exists(m, n, cands[hi], opt).has_value())
        throw std::logic_error("interleaving_distance: top candidate infeasible");
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (interleaving_exists(m, n, cands[mid], opt).has_value()) hi = mid;
        else lo = mid + 1;
    }
    double best = cands[hi];
    // attainment probe: the decision procedure must fail just below
    if (best > 0) {
        double probe = best - 1e-6;
        if (probe >= 0 && interleaving_exists(m, n, probe, opt).has_value())
            throw std::logic_error(
                "interleaving_distance: candidate set missed the optimum");
    }
    return best;
}

bool verify_witness(const MergeTree& m, const MergeTree& n, const InterleavingWitness& w,
                    double tol) {
    if (w.epsilon < 0) return false;
    const PersistentSetRep& rm = m.persistent_set();
    const PersistentSetRep& rn = n.persistent_set();
    double eps = w.epsilon;

    auto check_direction = [&](const PersistentSetRep& dom, const PersistentSetRep& cod,
                               const std::vector<ComponentMap>& tables) {
        // probe set: all domain critical times and shifted codomain times
        std::vector<double> probes = dom.critical_times;
        for (double s : cod.critical_times) probes.push_back(s - eps);
        for (const auto& cm : tables) probes.push_back(cm.time);
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

        const ComponentMap* prev = nullptr;
        double prev_t = 0.0;
        for (double t : probes) {
            int qd = dom.index_at(t, tol);
            if (qd < 0) continue;
            const ComponentMap* cur = eval_table(tables, t, tol);
            if (!cur) return false;
            if (static_cast<int>(cur->map.size()) != dom.critical_set_sizes[static_cast<size_t>(qd)])
                return false;
            int qc = cod.index_at(t + eps, tol);
            if (qc < 0) return false;
            for (int img : cur->map)
                if (img < 0 || img >= cod.critical_set_sizes[static_cast<size_t>(qc)]) return false;
            if (prev) {
                // naturality square between consecutive probes
                auto dom_step = compose_evolution(dom, prev_t, t, tol);
                auto cod_step = compose_evolution(cod, prev_t + eps, t + eps, tol);
                for (size_t e = 0; e < dom_step.size(); ++e) {
                    int via_dom = cur->map[static_cast<size_t>(dom_step[e])];
                    int via_cod = cod_step[static_cast<size_t>(prev->map[e])];
                    if (via_dom != via_cod) return false;
                }
            }
            prev = cur;
            prev_t = t;
        }
        return true;
    };
    if (!check_direction(rm, rn, w.phi)) return false;
    if (!check_direction(rn, rm, w.psi)) return false;

    auto check_triangle = [&](const PersistentSetRep& dom, const PersistentSetRep& cod,
                              const std::vector<ComponentMap>& fwd,
                              const std::vector<ComponentMap>& back) {
        std::vector<double> probes = dom.critical_times;
        for (double s : cod.critical_times) probes.push_back(s - eps);
        for (double s : dom.critical_times) probes.push_back(s - 2 * eps);
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
        for (double t : probes) {
            int qd = dom.index_at(t, tol);
            if (qd < 0) continue;
            const ComponentMap* f = eval_table(fwd, t, tol);
            const ComponentMap* g = eval_table(back, t + eps, tol);
            if (!f || !g) return false;
            auto shift = compose_evolution(dom, t, t + 2 * eps, tol);
            if (f->map.size() != shift.size()) return false;
            for (size_t e = 0; e < shift.size(); ++e) {
                int via = g->map[static_cast<size_t>(f->map[e])];
                if (via != shift[e]) return false;
            }
        }
        return true;
    };
    if (!check_triangle(rm, rn, w.phi, w.psi)) return false;
    if (!check_triangle(rn, rm, w.psi, w.phi)) return false;
    return true;
}

std::pair<Presentation, Presentation> interleaving_to_presentations(const MergeTree& m,
                                                                    const MergeTree& n,
                                                                    const InterleavingWitness& w) {
    const double tol = 1e-9;
    if (!verify_witness(m, n, w, tol))
        throw InputError("interleaving_to_presentations: witness fails verification");
    const double eps = w.epsilon;
    Presentation pm = minimal_presentation(m);
    Presentation pn = minimal_presentation(n);
    const int km = pm.generator_count(), kn = pn.generator_count();

    // phi image of each M generator at its birth, named by a generator of N
    auto rep_gen = [&](const MergeTree& dom, const MergeTree& cod,
                       const std::vector<ComponentMap>& tables, int leaf_node,
                       double birth) -> int {
        int x = dom.element_at(leaf_node, birth, tol);
        const ComponentMap* cm = eval_table(tables, birth, tol);
        if (!cm) throw InputError("interleaving_to_presentations: witness table gap");
        int target = cm->map[static_cast<size_t>(x)];
        for (int j = 0; j < static_cast<int>(cod.leaves().size()); ++j) {
            int leaf = cod.leaves()[static_cast<size_t>(j)];
            if (cod.node(leaf).height > birth + eps + tol) continue;
            if (cod.element_at(leaf, birth + eps, tol) == target) return j;
        }
        throw InputError("interleaving_to_presentations: no representative strand");
    };

    std::vector<int> phi_rep(static_cast<size_t>(km));
    for (int i = 0; i < km; ++i)
        phi_rep[static_cast<size_t>(i)] =
            rep_gen(m, n, w.phi, m.leaves()[static_cast<size_t>(i)],
                    pm.generator_births()[static_cast<size_t>(i)]);
    std::vector<int> psi_rep(static_cast<size_t>(kn));
    for (int j = 0; j < kn; ++j)
        psi_rep[static_cast<size_t>(j)] =
            rep_gen(n, m, w.psi, n.leaves()[static_cast<size_t>(j)],
                    pn.generator_births()[static_cast<size_t>(j)]);

    // rows: generators of M then generators of N (shifted); columns: M
    // relations, N relations shifted, one gluing column per M generator at
    // birth + 2eps, one per N generator at birth + eps
    std::vector<double> gens_m, gens_n;
    for (int i = 0; i < km; ++i) {
        gens_m.push_back(pm.generator_births()[static_cast<size_t>(i)]);
        gens_n.push_back(pm.generator_births()[static_cast<size_t>(i)] + eps);
    }
    for (int j = 0; j < kn; ++j) {
        gens_m.push_back(pn.generator_births()[static_cast<size_t>(j)] + eps);
        gens_n.push_back(pn.generator_births()[static_cast<size_t>(j)]);
    }

    auto clamp_birth = [](double b, const std::vector<double>& gens, int f, int g) {
        return std::max({b, gens[static_cast<size_t>(f)], gens[static_cast<size_t>(g)]});
    };

    std::vector<Relation> rels_m, rels_n;
    for (const auto& r : pm.relations()) {
        rels_m.push_back({clamp_birth(r.birth, gens_m, r.f, r.g), r.f, r.g});
        rels_n.push_back({clamp_birth(r.birth + eps, gens_n, r.f, r.g), r.f, r.g});
    }
    for (const auto& r : pn.relations()) {
        int f = km + r.f, g = km + r.g;
        rels_m.push_back({clamp_birth(r.birth + eps, gens_m, f, g), f, g});
        rels_n.push_back({clamp_birth(r.birth, gens_n, f, g), f, g});
    }
    for (int i = 0; i < km; ++i) {
        int f = i, g = km + phi_rep[static_cast<size_t>(i)];
        double b = pm.generator_births()[static_cast<size_t>(i)];
        rels_m.push_back({clamp_birth(b + 2 * eps, gens_m, f, g), f, g});
        rels_n.push_back({clamp_birth(b + eps, gens_n, f, g), f, g});
    }
    for (int j = 0; j < kn; ++j) {
        int f = psi_rep[static_cast<size_t>(j)], g = km + j;
        double b = pn.generator_births()[static_cast<size_t>(j)];
        rels_m.push_back({clamp_birth(b + eps, gens_m, f, g), f, g});
        rels_n.push_back({clamp_birth(b + 2 * eps, gens_n, f, g), f, g});
    }
    return {Presentation(std::move(gens_m), std::move(rels_m)),
            Presentation(std::move(gens_n), std::move(rels_n))};
}

InterleavingWitness presentations_to_interleaving(const Presentation& pa, const Presentation& pb,
                                                  const InterleavingOptions& opt) {
    if (!are_compatible(pa, pb))
        throw InputError("presentations_to_interleaving: incompatible presentations");
    const double eps = label_distance(pa, pb, kInf);
    CoeqResult ca = coequalize_full(pa);
    CoeqResult cb = coequalize_full(pb);
    if (ca.forest.trees.size() != 1 || cb.forest.trees.size() != 1)
        throw InputError("presentations_to_interleaving: inputs must present single trees");
    const MergeTree& ta = ca.forest.trees[0];
    const MergeTree& tb = cb.forest.trees[0];
    // the rebuilt tree's persistent set is label-aligned with the coequalizer
    auto aligned = [](const PersistentSetRep& a, const PersistentSetRep& b) {
        return a.critical_times == b.critical_times && a.critical_set_sizes == b.critical_set_sizes &&
               a.maps == b.maps;
    };
    if (!aligned(ta.persistent_set(), ca.rep) || !aligned(tb.persistent_set(), cb.rep))
        throw std::logic_error("presentations_to_interleaving: element labeling drifted");

    auto build_dir = [&](const Presentation& pd, const CoeqResult& cd, const Presentation& pc,
                         const CoeqResult& cc) {
        std::vector<double> grid = cd.rep.critical_times;
        for (double s : cc.rep.critical_times) grid.push_back(s - eps);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        std::vector<ComponentMap> tables;
        for (double g : grid) {
            int q = cd.rep.index_at(g, opt.tol);
            if (q < 0) continue;
            ComponentMap cm;
            cm.time = g;
            cm.map.assign(static_cast<size_t>(cd.rep.critical_set_sizes[static_cast<size_t>(q)]),
                          -1);
            for (int x = 0; x < static_cast<int>(cm.map.size()); ++x) {
                int gen = -1;
                for (int i = 0; i < pd.generator_count(); ++i) {
                    if (cd.element_of(q, i) == x) {
                        gen = i;
                        break;
                    }
                }
                if (gen < 0) throw std::logic_error("component without a generator");
                cm.map[static_cast<size_t>(x)] =
                    element_of_generator_at(pc, cc, gen, g + eps, opt.tol);
            }
            tables.push_back(std::move(cm));
        }
        return tables;
    };

    InterleavingWitness w;
    w.epsilon = eps;
    w.phi = build_dir(pa, ca, pb, cb);
    w.psi = build_dir(pb, cb, pa, ca);
    if (!verify_witness(ta, tb, w, opt.tol))
        throw std::logic_error("presentations_to_interleaving: constructed witness invalid");
    return w;
}

} // namespace treedist
