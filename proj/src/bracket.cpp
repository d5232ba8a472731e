#include "treedist/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "treedist/barcode.hpp"
#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

namespace {

bool presents(const Presentation& p, const MergeTree& t) {
    auto f = coequalize(p);
    return f.trees.size() == 1 && is_isomorphic(f.trees[0], t);
}

bool valid_certificate(const UpperCertificate& c, const MergeTree& m, const MergeTree& n,
                       double p) {
    if (!are_compatible(c.left, c.right)) return false;
    if (!presents(c.left, m) || !presents(c.right, n)) return false;
    return std::abs(label_distance(c.left, c.right, p) - c.value) <= 1e-9;
}

Presentation sort_generators(const Presentation& p) {
    std::vector<int> perm(static_cast<size_t>(p.generator_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        return p.generator_births()[static_cast<size_t>(a)] <
               p.generator_births()[static_cast<size_t>(b)];
    });
    return permute_generators(p, perm);
}

// Padded concatenation with both generator lists sorted, which is the
// optimal pairing of the generator blocks on the line.
UpperCertificate strategy_pad(const MergeTree& m, const MergeTree& n, double p) {
    Presentation a = minimal_presentation(m);
    Presentation b = minimal_presentation(n);
    double t = std::max(m.max_height(), n.max_height());
    auto argmin_gen = [](const Presentation& q) {
        int best = 0;
        for (int i = 1; i < q.generator_count(); ++i)
            if (q.generator_births()[static_cast<size_t>(i)] <
                q.generator_births()[static_cast<size_t>(best)])
                best = i;
        return best;
    };
    while (a.generator_count() < b.generator_count()) a = add_trivial_pair(a, t, argmin_gen(a));
    while (b.generator_count() < a.generator_count()) b = add_trivial_pair(b, t, argmin_gen(b));
    auto [ca, cb] = pad_concatenate(sort_generators(a), sort_generators(b), t);
    UpperCertificate cert{ca, cb, 0.0};
    cert.value = label_distance(ca, cb, p);
    return cert;
}

UpperCertificate strategy_interleave(const MergeTree& m, const MergeTree& n, double p,
                                     const InterleavingOptions& opt) {
    double e = interleaving_distance(m, n, opt);
    auto w = interleaving_exists(m, n, e, opt);
    if (!w) throw std::logic_error("semi_distance_upper: witness vanished at the distance");
    auto [pa, pb] = interleaving_to_presentations(m, n, *w);
    UpperCertificate cert{pa, pb, 0.0};
    cert.value = label_distance(pa, pb, p);
    return cert;
}

// Earliest time the endpoints of relation j connect without using j; +inf
// when they never do. That time is the floor for moving j's label.
double connect_time_without(const Presentation& p, int j) {
    const Relation& rj = p.relations()[static_cast<size_t>(j)];
    if (rj.f == rj.g) return p.generator_births()[static_cast<size_t>(rj.f)];
    std::vector<int> order(static_cast<size_t>(p.relation_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return p.relations()[static_cast<size_t>(a)].birth <
               p.relations()[static_cast<size_t>(b)].birth;
    });
    std::vector<int> uf(static_cast<size_t>(p.generator_count()));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x) x = uf[static_cast<size_t>(x)] =
                                                    uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
        return x;
    };
    for (int idx : order) {
        if (idx == j) continue;
        const Relation& r = p.relations()[static_cast<size_t>(idx)];
        uf[static_cast<size_t>(find(r.f))] = find(r.g);
        if (find(rj.f) == find(rj.g)) return r.birth;
    }
    return kInf;
}

// Coordinate descent on relation labels that can move without changing the
// coequalizer: a label is movable within [floor, inf) when the relation is
// redundant at its current value.
UpperCertificate descend_labels(UpperCertificate cert, double p, int passes) {
    for (int pass = 0; pass < passes; ++pass) {
        bool changed = false;
        auto gens_a = cert.left.generator_births();
        auto rels_a = cert.left.relations();
        auto gens_b = cert.right.generator_births();
        auto rels_b = cert.right.relations();
        for (int j = 0; j < static_cast<int>(rels_a.size()); ++j) {
            double lo_a = connect_time_without(cert.left, j);
            double lo_b = connect_time_without(cert.right, j);
            bool mov_a = rels_a[static_cast<size_t>(j)].birth >= lo_a;
            bool mov_b = rels_b[static_cast<size_t>(j)].birth >= lo_b;
            double a = rels_a[static_cast<size_t>(j)].birth;
            double b = rels_b[static_cast<size_t>(j)].birth;
            double na = a, nb = b;
            if (mov_a && mov_b) {
                na = nb = std::max(lo_a, lo_b);
            } else if (mov_a) {
                na = std::max(lo_a, b);
            } else if (mov_b) {
                nb = std::max(lo_b, a);
            }
            if (na != a || nb != b) {
                rels_a[static_cast<size_t>(j)].birth = na;
                rels_b[static_cast<size_t>(j)].birth = nb;
                cert.left = Presentation(gens_a, rels_a);
                cert.right = Presentation(gens_b, rels_b);
                changed = true;
            }
        }
        if (!changed) break;
    }
    cert.value = label_distance(cert.left, cert.right, p);
    return cert;
}

} // namespace

SemiUpperResult semi_distance_upper(const MergeTree& m, const MergeTree& n, double p, int budget,
                                    const InterleavingOptions& opt) {
    require_valid_p(p);
    std::vector<UpperCertificate> candidates;

    Presentation am = minimal_presentation(m);
    Presentation an = minimal_presentation(n);
    if (are_compatible(am, an))
        candidates.push_back({am, an, label_distance(am, an, p)});

    candidates.push_back(strategy_pad(m, n, p));
    candidates.push_back(strategy_interleave(m, n, p, opt));
    if (budget > 0) {
        size_t base = candidates.size();
        for (size_t i = 0; i < base; ++i)
            candidates.push_back(descend_labels(candidates[i], p, budget));
    }

    const UpperCertificate* best = nullptr;
    for (const auto& c : candidates) {
        if (!valid_certificate(c, m, n, p)) continue;
        if (!best || c.value < best->value) best = &c;
    }
    if (!best) throw std::logic_error("semi_distance_upper: all certificates failed validation");
    return {best->value, *best};
}

DistanceBracket presentation_distance_bracket(const MergeTree& m, const MergeTree& n, double p,
                                              const std::vector<MergeTree>& pivots, int budget,
                                              const InterleavingOptions& opt) {
    require_valid_p(p);
    if (pivots.size() > 8)
        throw ScaleGuardError("presentation_distance_bracket supports at most 8 pivots", 8);

    DistanceBracket br;
    br.p = p;
    br.lower_certificate.barcode_m = elder_barcode(m);
    br.lower_certificate.barcode_n = elder_barcode(n);
    auto wr = wasserstein(br.lower_certificate.barcode_m, br.lower_certificate.barcode_n, p);
    br.lower_certificate.wasserstein_value = wr.value;
    br.lower_certificate.matching = wr.matching;
    br.lower_certificate.interleaving_value = interleaving_distance(m, n, opt);
    br.lower = std::max(wr.value, br.lower_certificate.interleaving_value);

    // every ordered subset of the pivot list defines a path
    double best = kInf;
    std::vector<UpperCertificate> best_path;
    std::vector<int> best_pivots;
    const int k = static_cast<int>(pivots.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<const MergeTree*> stops{&m};
        std::vector<int> used;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) {
                stops.push_back(&pivots[static_cast<size_t>(i)]);
                used.push_back(i);
            }
        stops.push_back(&n);
        double total = 0.0;
        std::vector<UpperCertificate> path;
        for (size_t h = 0; h + 1 < stops.size(); ++h) {
            auto hop = semi_distance_upper(*stops[h], *stops[h + 1], p, budget, opt);
            total += hop.value;
            path.push_back(hop.certificate);
        }
        if (total < best) {
            best = total;
            best_path = std::move(path);
            best_pivots = std::move(used);
        }
    }
    br.upper = best;
    br.upper_path = std::move(best_path);
    br.pivots_used = std::move(best_pivots);
    return br;
}

} // namespace treedist
