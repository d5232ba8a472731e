#pragma once

#include <vector>

#include "treedist/interleaving.hpp"
#include "treedist/presentation.hpp"
#include "treedist/tree.hpp"
#include "treedist/wasserstein.hpp"

namespace treedist {

// One hop of an upper certificate: a compatible pair presenting the hop's
// two trees whose label distance realizes the claimed value.
struct UpperCertificate {
    Presentation left;
    Presentation right;
    double value = 0.0;
};

struct SemiUpperResult {
    double value = 0.0;
    UpperCertificate certificate;
};

// Best found upper bound on the p-presentation semi-distance. Strategies:
// padded concatenation of minimal presentations at the lowest legal height
// with sorted generator pairing, the interleaving conversion at the exact
// interleaving distance, and coordinate descent on movable relation labels
// (budget = descent passes). Every candidate certificate is re-verified
// (compatibility plus coequalizing back to the inputs) before use.
SemiUpperResult semi_distance_upper(const MergeTree& m, const MergeTree& n, double p,
                                    int budget = 4, const InterleavingOptions& opt = {});

struct LowerCertificate {
    Barcode barcode_m;
    Barcode barcode_n;
    double wasserstein_value = 0.0;
    Matching matching;
    double interleaving_value = 0.0;
};

struct DistanceBracket {
    double p = 1.0;
    double lower = 0.0;
    double upper = 0.0;
    LowerCertificate lower_certificate;
    std::vector<UpperCertificate> upper_path; // one entry per hop
    std::vector<int> pivots_used;             // indices into the pivot list
};

// lower = max(p-Wasserstein distance of the elder barcodes, interleaving
// distance); upper = cheapest path through an ordered subset of the pivots
// (the direct path always competes). At p = inf the two sides meet at the
// interleaving distance.
DistanceBracket presentation_distance_bracket(const MergeTree& m, const MergeTree& n, double p,
                                              const std::vector<MergeTree>& pivots = {},
                                              int budget = 4,
                                              const InterleavingOptions& opt = {});

} // namespace treedist
