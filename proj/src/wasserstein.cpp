#include "treedist/wasserstein.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "treedist/errors.hpp"
#include "treedist/lp.hpp"

namespace treedist {

namespace {

// p-th power of the matching cost for finite p; the max-form for p = inf.
double match_cost(const Interval& i, const Interval& j, double p) {
    if (i.unbounded() != j.unbounded()) return kInf;
    if (i.unbounded()) return p == kInf ? std::abs(i.birth - j.birth) : pow_abs(i.birth - j.birth, p);
    if (p == kInf) return std::max(std::abs(i.birth - j.birth), std::abs(i.death - j.death));
    return pow_abs(i.birth - j.birth, p) + pow_abs(i.death - j.death, p);
}

double delete_cost(const Interval& i, double p) {
    if (i.unbounded()) return kInf;
    double half = (i.death - i.birth) / 2.0;
    return p == kInf ? half : 2.0 * pow_abs(half, p);
}

// Square min-cost assignment by shortest augmenting paths; costs finite.
// Returns row index assigned to each column.
std::vector<int> solve_assignment(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            int i0 = p[static_cast<size_t>(j0)], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                double cur = a(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<size_t>(j0)];
            p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_of_col(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) row_of_col[static_cast<size_t>(j) - 1] = p[static_cast<size_t>(j)] - 1;
    return row_of_col;
}

// Kuhn's augmenting path matching on an explicit adjacency list.
bool try_augment(int v, const std::vector<std::vector<int>>& adj, std::vector<char>& seen,
                 std::vector<int>& match_right) {
    for (int to : adj[static_cast<size_t>(v)]) {
        if (seen[static_cast<size_t>(to)]) continue;
        seen[static_cast<size_t>(to)] = 1;
        if (match_right[static_cast<size_t>(to)] == -1 ||
            try_augment(match_right[static_cast<size_t>(to)], adj, seen, match_right)) {
            match_right[static_cast<size_t>(to)] = v;
            return true;
        }
    }
    return false;
}

// Perfect matching on rows = B + diag(C), cols = C + diag(B) with costs <= t.
// Returns the matching via match_right (col -> row) when feasible.
bool bottleneck_feasible(const Barcode& b, const Barcode& c, double t,
                         std::vector<int>& match_right) {
    const int n = static_cast<int>(b.size()), m = static_cast<int>(c.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(n + m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j)
            if (match_cost(b[static_cast<size_t>(i)], c[static_cast<size_t>(j)], kInf) <= t)
                adj[static_cast<size_t>(i)].push_back(j);
        if (delete_cost(b[static_cast<size_t>(i)], kInf) <= t)
            adj[static_cast<size_t>(i)].push_back(m + i);
    }
    for (int j = 0; j < m; ++j) {
        auto& row = adj[static_cast<size_t>(n + j)];
        if (delete_cost(c[static_cast<size_t>(j)], kInf) <= t) row.push_back(j);
        for (int i = 0; i < n; ++i) row.push_back(m + i); // diagonal to diagonal, free
    }
    match_right.assign(static_cast<size_t>(n + m), -1);
    int matched = 0;
    for (int v = 0; v < n + m; ++v) {
        std::vector<char> seen(static_cast<size_t>(n + m), 0);
        if (try_augment(v, adj, seen, match_right)) ++matched;
    }
    return matched == n + m;
}

WassersteinResult bottleneck(const Barcode& b, const Barcode& c) {
    std::vector<double> candidates{0.0};
    for (const auto& i : b) {
        for (const auto& j : c) {
            double mc = match_cost(i, j, kInf);
            if (mc < kInf) candidates.push_back(mc);
        }
        if (!i.unbounded()) candidates.push_back(delete_cost(i, kInf));
    }
    for (const auto& j : c)
        if (!j.unbounded()) candidates.push_back(delete_cost(j, kInf));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // the largest candidate admits everything (match unbounded bars among
    // themselves, delete the rest), so a first feasible index exists
    size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        std::vector<int> tmp;
        if (bottleneck_feasible(b, c, candidates[mid], tmp)) hi = mid;
        else lo = mid + 1;
    }
    std::vector<int> match_right;
    bottleneck_feasible(b, c, candidates[hi], match_right);
    WassersteinResult out;
    out.value = candidates[hi];
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
        int row = match_right[static_cast<size_t>(j)];
        if (row >= 0 && row < static_cast<int>(b.size())) out.matching.pairs.push_back({row, j});
    }
    return out;
}

} // namespace

WassersteinResult wasserstein(const Barcode& b, const Barcode& c, double p) {
    require_valid_p(p);
    std::vector<int> bu, cu, bb, cb; // unbounded / bounded index lists
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        (b[static_cast<size_t>(i)].unbounded() ? bu : bb).push_back(i);
    for (int j = 0; j < static_cast<int>(c.size()); ++j)
        (c[static_cast<size_t>(j)].unbounded() ? cu : cb).push_back(j);
    if (bu.size() != cu.size()) {
        WassersteinResult out;
        out.value = kInf;
        return out;
    }
    if (p == kInf) return bottleneck(b, c);

    WassersteinResult out;
    double total = 0.0;

    if (!bu.empty()) {
        const int u = static_cast<int>(bu.size());
        Eigen::MatrixXd cost(u, u);
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < u; ++j)
                cost(i, j) = match_cost(b[static_cast<size_t>(bu[static_cast<size_t>(i)])],
                                        c[static_cast<size_t>(cu[static_cast<size_t>(j)])], p);
        auto row_of_col = solve_assignment(cost);
        for (int j = 0; j < u; ++j) {
            int i = row_of_col[static_cast<size_t>(j)];
            total += cost(i, j);
            out.matching.pairs.push_back({bu[static_cast<size_t>(i)], cu[static_cast<size_t>(j)]});
        }
    }

    const int n = static_cast<int>(bb.size()), m = static_cast<int>(cb.size());
    if (n + m > 0) {
        const int s = n + m;
        // forbidden cells get a finite sentinel above any useful total
        double big = 1.0;
        for (int i : bb) big += delete_cost(b[static_cast<size_t>(i)], p);
        for (int j : cb) big += delete_cost(c[static_cast<size_t>(j)], p);
        for (int i : bb)
            for (int j : cb)
                big += match_cost(b[static_cast<size_t>(i)], c[static_cast<size_t>(j)], p);
        Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(s, s);
        for (int i = 0; i < n; ++i) {
            const Interval& bi = b[static_cast<size_t>(bb[static_cast<size_t>(i)])];
            for (int j = 0; j < m; ++j)
                cost(i, j) = match_cost(bi, c[static_cast<size_t>(cb[static_cast<size_t>(j)])], p);
            for (int j = 0; j < n; ++j)
                cost(i, m + j) = (i == j) ? delete_cost(bi, p) : big;
        }
        for (int i = 0; i < m; ++i) {
            const Interval& cj = c[static_cast<size_t>(cb[static_cast<size_t>(i)])];
            for (int j = 0; j < m; ++j)
                cost(n + i, j) = (i == j) ? delete_cost(cj, p) : big;
        }
        auto row_of_col = solve_assignment(cost);
        for (int j = 0; j < s; ++j) {
            int i = row_of_col[static_cast<size_t>(j)];
            total += cost(i, j);
            if (i < n && j < m)
                out.matching.pairs.push_back({bb[static_cast<size_t>(i)], cb[static_cast<size_t>(j)]});
        }
    }

    out.value = p_root(total, p);
    return out;
}

double matching_cost(const Barcode& b, const Barcode& c, const Matching& m, double p) {
    require_valid_p(p);
    std::vector<char> used_b(b.size(), 0), used_c(c.size(), 0);
    double total = 0.0, worst = 0.0;
    auto fold = [&](double x) {
        if (p == kInf) worst = std::max(worst, x);
        else total += x;
    };
    for (auto [i, j] : m.pairs) {
        used_b[static_cast<size_t>(i)] = 1;
        used_c[static_cast<size_t>(j)] = 1;
        fold(match_cost(b[static_cast<size_t>(i)], c[static_cast<size_t>(j)], p));
    }
    for (size_t i = 0; i < b.size(); ++i)
        if (!used_b[i]) fold(delete_cost(b[i], p));
    for (size_t j = 0; j < c.size(); ++j)
        if (!used_c[j]) fold(delete_cost(c[j], p));
    return p == kInf ? worst : p_root(total, p);
}

namespace {

double brute_rec(const Barcode& b, const Barcode& c, double p, size_t i, std::vector<char>& used) {
    if (i == b.size()) {
        double acc = p == kInf ? 0.0 : 0.0;
        for (size_t j = 0; j < c.size(); ++j) {
            if (used[j]) continue;
            double d = delete_cost(c[j], p);
            acc = p == kInf ? std::max(acc, d) : acc + d;
        }
        return acc;
    }
    double best = kInf;
    // delete bar i
    {
        double d = delete_cost(b[i], p);
        double rest = brute_rec(b, c, p, i + 1, used);
        best = p == kInf ? std::max(d, rest) : d + rest;
    }
    for (size_t j = 0; j < c.size(); ++j) {
        if (used[j]) continue;
        double mcost = match_cost(b[i], c[j], p);
        if (mcost == kInf) continue;
        used[j] = 1;
        double rest = brute_rec(b, c, p, i + 1, used);
        used[j] = 0;
        double cand = p == kInf ? std::max(mcost, rest) : mcost + rest;
        best = std::min(best, cand);
    }
    return best;
}

} // namespace

double wasserstein_brute_force(const Barcode& b, const Barcode& c, double p) {
    require_valid_p(p);
    if (b.size() + c.size() > 8)
        throw ScaleGuardError("wasserstein_brute_force handles at most 8 bars total", 8);
    std::vector<char> used(c.size(), 0);
    double total = brute_rec(b, c, p, 0, used);
    return p == kInf ? total : p_root(total, p);
}

} // namespace treedist
