#include "treedist/barcode.hpp"

#include <algorithm>

namespace treedist {

Barcode elder_barcode(const MergeTree& tree) {
    const PersistentSetRep& rep = tree.persistent_set();
    Barcode bars;
    if (rep.critical_times.empty()) return bars;

    // birth time of the bar carried by each live element
    std::vector<double> birth(static_cast<size_t>(rep.critical_set_sizes[0]),
                              rep.critical_times[0]);
    for (size_t i = 0; i + 1 < rep.critical_times.size(); ++i) {
        double h = rep.critical_times[i + 1];
        const auto& m = rep.maps[i];
        std::vector<double> next(static_cast<size_t>(rep.critical_set_sizes[i + 1]), h);
        std::vector<char> seen(next.size(), 0);
        for (size_t e = 0; e < m.size(); ++e) {
            size_t img = static_cast<size_t>(m[e]);
            if (!seen[img]) {
                seen[img] = 1;
                next[img] = birth[e];
            } else if (birth[e] < next[img]) {
                // younger branch dies at the merge (elements arrive in
                // eldest-first order, so ties keep the earlier element)
                bars.push_back({next[img], h});
                next[img] = birth[e];
            } else {
                bars.push_back({birth[e], h});
            }
        }
        birth = std::move(next);
    }
    for (double b : birth) bars.push_back({b, kInf});

    std::erase_if(bars, [](const Interval& i) { return i.empty(); });
    std::sort(bars.begin(), bars.end(), [](const Interval& a, const Interval& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death > b.death;
    });
    return bars;
}

int bars_containing(const Barcode& b, double s, double t) {
    int n = 0;
    for (const auto& bar : b)
        if (bar.contains(s, t)) ++n;
    return n;
}

} // namespace treedist
