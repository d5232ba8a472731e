#include "treedist/presentation.hpp"

#include <algorithm>
#include <unordered_map>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

Presentation::Presentation(std::vector<double> generator_births, std::vector<Relation> relations)
    : generators_(std::move(generator_births)), relations_(std::move(relations)) {
    const int k = generator_count();
    for (auto& g : generators_)
        if (g == 0.0) g = 0.0; // collapse -0
    for (auto& r : relations_) {
        if (r.birth == 0.0) r.birth = 0.0;
        if (r.f < 0 || r.f >= k || r.g < 0 || r.g >= k)
            throw InputError("relation endpoint out of range");
        if (r.birth < generators_[static_cast<size_t>(r.f)] ||
            r.birth < generators_[static_cast<size_t>(r.g)])
            throw InputError("relation born before one of its generators");
    }
}

Eigen::MatrixXi Presentation::matrix() const {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(generator_count(), relation_count());
    for (int j = 0; j < relation_count(); ++j) {
        m(relations_[static_cast<size_t>(j)].f, j) = 1;
        m(relations_[static_cast<size_t>(j)].g, j) = 1;
    }
    return m;
}

Eigen::VectorXd Presentation::label_vector() const {
    Eigen::VectorXd v(generator_count() + relation_count());
    for (int i = 0; i < generator_count(); ++i) v[i] = generators_[static_cast<size_t>(i)];
    for (int j = 0; j < relation_count(); ++j)
        v[generator_count() + j] = relations_[static_cast<size_t>(j)].birth;
    return v;
}

Presentation minimal_presentation(const MergeTree& tree) {
    const int n = tree.node_count();
    std::vector<int> gen_of(static_cast<size_t>(n), -1);
    std::vector<double> gens;
    for (int i = 0; i < static_cast<int>(tree.leaves().size()); ++i) {
        int leaf = tree.leaves()[static_cast<size_t>(i)];
        gen_of[static_cast<size_t>(leaf)] = i;
        gens.push_back(tree.node(leaf).height);
    }

    // rep[v] = lowest generator index inside v's subtree; generators are
    // sorted by (birth, node index), so this is the earliest-born branch
    std::vector<int> rep(static_cast<size_t>(n), -1);
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ha = tree.node(a).height, hb = tree.node(b).height;
        return ha != hb ? ha < hb : a < b;
    });
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v : order) {
            if (rep[static_cast<size_t>(v)] != -1) continue;
            if (tree.is_leaf(v)) {
                rep[static_cast<size_t>(v)] = gen_of[static_cast<size_t>(v)];
                progress = true;
                continue;
            }
            int best = -1;
            bool ready = true;
            for (int c : tree.child_indices(v)) {
                if (rep[static_cast<size_t>(c)] == -1) {
                    ready = false;
                    break;
                }
                if (best == -1 || rep[static_cast<size_t>(c)] < best)
                    best = rep[static_cast<size_t>(c)];
            }
            if (ready) {
                rep[static_cast<size_t>(v)] = best;
                progress = true;
            }
        }
    }

    std::vector<Relation> rels;
    for (int v : order) {
        if (tree.child_indices(v).size() < 2) continue; // leaves and the root cap
        std::vector<int> group_reps;
        for (int c : tree.child_indices(v)) group_reps.push_back(rep[static_cast<size_t>(c)]);
        std::sort(group_reps.begin(), group_reps.end());
        for (size_t i = 1; i < group_reps.size(); ++i)
            rels.push_back({tree.node(v).height, group_reps[0], group_reps[i]});
    }
    return Presentation(std::move(gens), std::move(rels));
}

CoeqResult coequalize_full(const Presentation& p) {
    const int k = p.generator_count();
    const int l = p.relation_count();

    struct Event {
        double time;
        int kind; // 0 = generator birth, 1 = relation
        int idx;
    };
    std::vector<Event> events;
    events.reserve(static_cast<size_t>(k + l));
    for (int i = 0; i < k; ++i)
        events.push_back({p.generator_births()[static_cast<size_t>(i)], 0, i});
    for (int j = 0; j < l; ++j) events.push_back({p.relations()[static_cast<size_t>(j)].birth, 1, j});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.idx < b.idx;
    });

    std::vector<int> uf(static_cast<size_t>(k), -1); // -1 = unborn
    // class ordering key: (earliest birth, lowest index among earliest-born
    // generators) -- matches the leaf-serial order of the rebuilt trees
    std::vector<double> class_birth(static_cast<size_t>(k), 0.0);
    std::vector<int> class_tie(static_cast<size_t>(k), 0);
    auto find = [&](int x) {
        int r = x;
        while (uf[static_cast<size_t>(r)] != r) r = uf[static_cast<size_t>(r)];
        while (uf[static_cast<size_t>(x)] != x) {
            int nxt = uf[static_cast<size_t>(x)];
            uf[static_cast<size_t>(x)] = r;
            x = nxt;
        }
        return r;
    };

    std::vector<double> times;
    std::vector<int> sizes;
    std::vector<std::vector<int>> steps;
    std::vector<std::vector<int>> gen_elems;
    std::vector<int> prev_snap;

    size_t pos = 0;
    while (pos < events.size()) {
        double h = events[pos].time;
        while (pos < events.size() && events[pos].time == h) {
            const Event& ev = events[pos];
            if (ev.kind == 0) {
                uf[static_cast<size_t>(ev.idx)] = ev.idx;
                class_birth[static_cast<size_t>(ev.idx)] =
                    p.generator_births()[static_cast<size_t>(ev.idx)];
                class_tie[static_cast<size_t>(ev.idx)] = ev.idx;
            } else {
                const Relation& r = p.relations()[static_cast<size_t>(ev.idx)];
                int a = find(r.f), b = find(r.g);
                if (a != b) {
                    int keep = std::min(a, b), gone = std::max(a, b);
                    double bk = class_birth[static_cast<size_t>(keep)];
                    double bg = class_birth[static_cast<size_t>(gone)];
                    if (bg < bk) {
                        class_birth[static_cast<size_t>(keep)] = bg;
                        class_tie[static_cast<size_t>(keep)] = class_tie[static_cast<size_t>(gone)];
                    } else if (bg == bk) {
                        class_tie[static_cast<size_t>(keep)] = std::min(
                            class_tie[static_cast<size_t>(keep)], class_tie[static_cast<size_t>(gone)]);
                    }
                    uf[static_cast<size_t>(gone)] = keep;
                }
            }
            ++pos;
        }
        std::vector<int> roots;
        std::vector<int> elem_of_gen(static_cast<size_t>(k), -1);
        for (int i = 0; i < k; ++i)
            if (uf[static_cast<size_t>(i)] != -1 && find(i) == i) roots.push_back(i);
        std::sort(roots.begin(), roots.end(), [&](int a, int b) {
            double ba = class_birth[static_cast<size_t>(a)], bb = class_birth[static_cast<size_t>(b)];
            if (ba != bb) return ba < bb;
            return class_tie[static_cast<size_t>(a)] < class_tie[static_cast<size_t>(b)];
        });
        std::unordered_map<int, int> index;
        for (int e = 0; e < static_cast<int>(roots.size()); ++e)
            index.emplace(roots[static_cast<size_t>(e)], e);
        for (int i = 0; i < k; ++i)
            if (uf[static_cast<size_t>(i)] != -1)
                elem_of_gen[static_cast<size_t>(i)] = index.at(find(i));
        if (roots.empty()) continue;
        if (!times.empty()) {
            std::vector<int> step(prev_snap.size());
            for (size_t e = 0; e < prev_snap.size(); ++e)
                step[e] = index.at(find(prev_snap[e]));
            steps.push_back(std::move(step));
        }
        times.push_back(h);
        sizes.push_back(static_cast<int>(roots.size()));
        gen_elems.push_back(std::move(elem_of_gen));
        prev_snap = std::move(roots);
    }

    CoeqResult out;
    std::vector<int> carry;
    for (size_t i = 0; i < times.size(); ++i) {
        if (out.rep.critical_times.empty()) {
            out.rep.critical_times.push_back(times[i]);
            out.rep.critical_set_sizes.push_back(sizes[i]);
            out.generator_elements.push_back(gen_elems[i]);
            carry.resize(static_cast<size_t>(sizes[i]));
            for (int e = 0; e < sizes[i]; ++e) carry[static_cast<size_t>(e)] = e;
            continue;
        }
        const auto& step = steps[i - 1];
        std::vector<char> hit(static_cast<size_t>(sizes[i]), 0);
        bool injective = true;
        for (int img : step) {
            if (hit[static_cast<size_t>(img)]) injective = false;
            hit[static_cast<size_t>(img)] = 1;
        }
        bool births = false;
        for (char c : hit)
            if (!c) births = true;
        for (auto& e : carry) e = step[static_cast<size_t>(e)];
        if (!injective || births) {
            out.rep.critical_times.push_back(times[i]);
            out.rep.critical_set_sizes.push_back(sizes[i]);
            out.rep.maps.push_back(carry);
            out.generator_elements.push_back(gen_elems[i]);
            carry.resize(static_cast<size_t>(sizes[i]));
            for (int e = 0; e < sizes[i]; ++e) carry[static_cast<size_t>(e)] = e;
        }
    }
    out.forest = forest_from_persistent_set(out.rep);
    return out;
}

MergeForest coequalize(const Presentation& p) { return coequalize_full(p).forest; }

int element_of_generator_at(const Presentation& p, const CoeqResult& coeq, int gen, double t,
                            double tol) {
    if (gen < 0 || gen >= p.generator_count())
        throw InputError("element_of_generator_at: unknown generator");
    if (p.generator_births()[static_cast<size_t>(gen)] > t + tol)
        throw InputError("element_of_generator_at: strand not born yet");
    int q = coeq.rep.index_at(t, tol);
    if (q < 0) throw InputError("element_of_generator_at: empty coequalizer at that time");
    if (coeq.element_of(q, gen) != -1) return coeq.element_of(q, gen);
    // strand born strictly between critical times: breadth-first through the
    // relations alive by t until a strand recorded at the snapshot turns up
    std::vector<char> seen(static_cast<size_t>(p.generator_count()), 0);
    std::vector<int> queue{gen};
    seen[static_cast<size_t>(gen)] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int cur = queue[head];
        for (const auto& r : p.relations()) {
            if (r.birth > t + tol) continue;
            int other = r.f == cur ? r.g : (r.g == cur ? r.f : -1);
            if (other < 0 || seen[static_cast<size_t>(other)]) continue;
            if (coeq.element_of(q, other) != -1) return coeq.element_of(q, other);
            seen[static_cast<size_t>(other)] = 1;
            queue.push_back(other);
        }
    }
    throw InputError("element_of_generator_at: strand unresolvable at that time");
}

Presentation add_trivial_pair(const Presentation& p, double a, int target) {
    if (target < 0 || target >= p.generator_count())
        throw InputError("add_trivial_pair: unknown target generator");
    if (a < p.generator_births()[static_cast<size_t>(target)])
        throw InputError("add_trivial_pair: pair born before its target generator");
    auto gens = p.generator_births();
    auto rels = p.relations();
    int fresh = static_cast<int>(gens.size());
    gens.push_back(a);
    rels.push_back({a, fresh, target});
    return Presentation(std::move(gens), std::move(rels));
}

bool are_compatible(const Presentation& a, const Presentation& b) {
    if (a.generator_count() != b.generator_count() || a.relation_count() != b.relation_count())
        return false;
    for (int j = 0; j < a.relation_count(); ++j) {
        const Relation& ra = a.relations()[static_cast<size_t>(j)];
        const Relation& rb = b.relations()[static_cast<size_t>(j)];
        if (std::minmax(ra.f, ra.g) != std::minmax(rb.f, rb.g)) return false;
    }
    return true;
}

std::pair<Presentation, Presentation> pad_concatenate(const Presentation& pm,
                                                       const Presentation& pn, double t) {
    auto check_side = [&](const Presentation& p, const char* side) {
        if (coequalize(p).trees.size() != 1)
            throw InputError(std::string("pad_concatenate: ") + side +
                             " side does not present a single tree");
        for (double g : p.generator_births())
            if (t < g) throw InputError("pad_concatenate: t below a generator birth");
        for (const auto& r : p.relations())
            if (t < r.birth) throw InputError("pad_concatenate: t below a relation birth");
    };
    check_side(pm, "left");
    check_side(pn, "right");

    auto argmin_gen = [](const Presentation& p) {
        int best = 0;
        for (int i = 1; i < p.generator_count(); ++i)
            if (p.generator_births()[static_cast<size_t>(i)] <
                p.generator_births()[static_cast<size_t>(best)])
                best = i;
        return best;
    };
    Presentation a = pm, b = pn;
    while (a.generator_count() < b.generator_count()) a = add_trivial_pair(a, t, argmin_gen(a));
    while (b.generator_count() < a.generator_count()) b = add_trivial_pair(b, t, argmin_gen(b));

    std::vector<Relation> rels_a = a.relations();
    for (const auto& r : b.relations()) rels_a.push_back({t, r.f, r.g});
    std::vector<Relation> rels_b;
    rels_b.reserve(a.relations().size() + b.relations().size());
    for (const auto& r : a.relations()) rels_b.push_back({t, r.f, r.g});
    for (const auto& r : b.relations()) rels_b.push_back(r);

    return {Presentation(a.generator_births(), std::move(rels_a)),
            Presentation(b.generator_births(), std::move(rels_b))};
}

double label_distance(const Presentation& a, const Presentation& b, double p) {
    if (!are_compatible(a, b)) throw InputError("label_distance needs compatible presentations");
    return lp_norm(a.label_vector() - b.label_vector(), p);
}

Presentation permute_generators(const Presentation& p, const std::vector<int>& perm) {
    const int k = p.generator_count();
    if (static_cast<int>(perm.size()) != k)
        throw InputError("permute_generators: permutation size mismatch");
    std::vector<int> inv(static_cast<size_t>(k), -1);
    std::vector<double> gens(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        int old = perm[static_cast<size_t>(i)];
        if (old < 0 || old >= k || inv[static_cast<size_t>(old)] != -1)
            throw InputError("permute_generators: not a permutation");
        inv[static_cast<size_t>(old)] = i;
        gens[static_cast<size_t>(i)] = p.generator_births()[static_cast<size_t>(old)];
    }
    std::vector<Relation> rels = p.relations();
    for (auto& r : rels) {
        r.f = inv[static_cast<size_t>(r.f)];
        r.g = inv[static_cast<size_t>(r.g)];
    }
    return Presentation(std::move(gens), std::move(rels));
}

} // namespace treedist
