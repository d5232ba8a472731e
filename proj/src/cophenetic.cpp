#include "treedist/cophenetic.hpp"

#include <algorithm>
#include <cmath>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

namespace {

// leaf-by-leaf LCA height table, diagonal = leaf birth
Eigen::MatrixXd leaf_lca_table(const MergeTree& t) {
    const int n = static_cast<int>(t.leaves().size());
    Eigen::MatrixXd out(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int anc = lca_index(t, t.leaves()[static_cast<size_t>(a)],
                                t.leaves()[static_cast<size_t>(b)]);
            out(a, b) = t.node(anc).height;
        }
    return out;
}

struct Search {
    const Eigen::MatrixXd& lm;
    const Eigen::MatrixXd& ln;
    int k;
    double p;
    long long budget;
    long long spent = 0;

    std::vector<int> a; // label -> leaf of M (canonical first-occurrence form)
    std::vector<int> b; // label -> leaf of N
    double best = kInf;

    Search(const Eigen::MatrixXd& lm_, const Eigen::MatrixXd& ln_, int k_, double p_,
           long long budget_)
        : lm(lm_), ln(ln_), k(k_), p(p_), budget(budget_) {
        a.assign(static_cast<size_t>(k), -1);
        b.assign(static_cast<size_t>(k), -1);
    }

    void tick() {
        if (++spent > budget)
            throw ScaleGuardError("cophenetic labeling enumeration exceeded its effort cap",
                                  budget);
    }

    // partial cost of position i against earlier positions plus the diagonal
    double delta(int i) const {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) {
            double d = std::abs(lm(a[static_cast<size_t>(j)], a[static_cast<size_t>(i)]) -
                                ln(b[static_cast<size_t>(j)], b[static_cast<size_t>(i)]));
            if (p == kInf) acc = std::max(acc, d);
            else acc += pow_abs(d, p);
        }
        return acc;
    }

    void inner(int i, int used_n, double cost) {
        tick();
        if (cost >= best) return; // cannot improve
        if (i == k) {
            if (used_n == static_cast<int>(ln.rows())) best = cost;
            return;
        }
        if (static_cast<int>(ln.rows()) - used_n > k - i) return; // surjectivity impossible
        for (int leaf = 0; leaf < static_cast<int>(ln.rows()); ++leaf) {
            bool fresh = true;
            for (int j = 0; j < i; ++j)
                if (b[static_cast<size_t>(j)] == leaf) fresh = false;
            b[static_cast<size_t>(i)] = leaf;
            double d = delta(i);
            double next = p == kInf ? std::max(cost, d) : cost + d;
            inner(i + 1, used_n + (fresh ? 1 : 0), next);
        }
        b[static_cast<size_t>(i)] = -1;
    }

    // canonical enumeration: new leaves of M appear in increasing order, which
    // quotients out the simultaneous relabeling symmetry
    void outer(int i, int used_m) {
        tick();
        if (static_cast<int>(lm.rows()) - used_m > k - i) return;
        if (i == k) {
            if (used_m == static_cast<int>(lm.rows())) inner(0, 0, 0.0);
            return;
        }
        for (int leaf = 0; leaf <= std::min(used_m, static_cast<int>(lm.rows()) - 1); ++leaf) {
            a[static_cast<size_t>(i)] = leaf;
            outer(i + 1, std::max(used_m, leaf + 1));
        }
        a[static_cast<size_t>(i)] = -1;
    }
};

} // namespace

Eigen::MatrixXd cophenetic_vector(const MergeTree& tree, const std::vector<std::string>& labels) {
    const int k = static_cast<int>(labels.size());
    std::vector<int> leaf_idx(static_cast<size_t>(k), -1);
    std::vector<char> covered(tree.leaves().size(), 0);
    for (int i = 0; i < k; ++i) {
        auto idx = tree.index_of(labels[static_cast<size_t>(i)]);
        if (!idx || !tree.is_leaf(*idx))
            throw InputError("cophenetic_vector: label does not name a leaf");
        leaf_idx[static_cast<size_t>(i)] = *idx;
        for (int s = 0; s < static_cast<int>(tree.leaves().size()); ++s)
            if (tree.leaves()[static_cast<size_t>(s)] == *idx) covered[static_cast<size_t>(s)] = 1;
    }
    for (char c : covered)
        if (!c) throw InputError("cophenetic_vector: labeling misses a leaf");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            int anc = lca_index(tree, leaf_idx[static_cast<size_t>(i)],
                                leaf_idx[static_cast<size_t>(j)]);
            out(i, j) = tree.node(anc).height;
        }
    return out;
}

double cophenetic_distance(const MergeTree& m, const MergeTree& n, double p, int k_max) {
    require_valid_p(p);
    const int nm = static_cast<int>(m.leaves().size());
    const int nn = static_cast<int>(n.leaves().size());
    const int k_min = std::max(nm, nn);
    if (k_max < 0) k_max = nm + nn;
    if (k_max < k_min) throw InputError("cophenetic_distance: label budget below the leaf count");

    Eigen::MatrixXd lm = leaf_lca_table(m);
    Eigen::MatrixXd ln = leaf_lca_table(n);

    // best carries summed p-th powers for finite p, the max for p = inf
    double best = kInf;
    const long long budget = 50'000'000;
    long long spent = 0;
    for (int k = k_min; k <= k_max; ++k) {
        Search s(lm, ln, k, p, budget - spent);
        s.best = best;
        s.outer(0, 0);
        spent += s.spent;
        best = std::min(best, s.best);
    }
    return p == kInf ? best : p_root(best, p);
}

} // namespace treedist
