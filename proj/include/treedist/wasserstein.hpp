#pragma once

#include <vector>

#include "treedist/barcode.hpp"

namespace treedist {

// Partial bijection between two barcodes; everything else is deleted to the
// diagonal. Indices refer to the input barcodes.
struct Matching {
    std::vector<std::pair<int, int>> pairs;
};

struct WassersteinResult {
    double value = 0.0;
    Matching matching;
};

// Optimal matching cost: square assignment with one diagonal slot per bar
// for finite p, threshold search over candidate costs plus bipartite
// feasibility for p = inf (bottleneck). Unbounded bars only ever match
// unbounded bars; differing unbounded counts give value inf and an empty
// matching.
WassersteinResult wasserstein(const Barcode& b, const Barcode& c, double p);

// Exact infimum by enumerating every partial bijection; |b| + |c| <= 8.
double wasserstein_brute_force(const Barcode& b, const Barcode& c, double p);

// p-cost of a given matching (deleted bars included); inf when the matching
// is inconsistent with the bar types.
double matching_cost(const Barcode& b, const Barcode& c, const Matching& m, double p);

} // namespace treedist
