#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "treedist/presentation.hpp"
#include "treedist/tree.hpp"

namespace treedist {

// Component map at one time; map[e] is the image element at time + epsilon.
struct ComponentMap {
    double time = 0.0;
    std::vector<int> map;
};

// Shifted pair phi: M -> N S_eps, psi: N -> M S_eps as finite tables over the
// combined critical grid; both triangle identities hold.
struct InterleavingWitness {
    double epsilon = 0.0;
    std::vector<ComponentMap> phi;
    std::vector<ComponentMap> psi;
};

struct InterleavingOptions {
    int max_critical_set = 12; // per-side scale guard
    double tol = 1e-9;         // absolute tolerance for time lookups
    bool enforce_triangles = true; // disabled only by the fuzz mutant
    // cap on decision-search steps; the search is exponential in the worst
    // case, so exhaustion raises the scale guard instead of spinning
    long long search_budget = 20'000'000;
};

// Decision procedure: exhaustive search over component maps determined by
// element births, pruned by naturality, accepted when both triangle
// identities hold. Returns a verified witness or nullopt after exhaustion.
std::optional<InterleavingWitness> interleaving_exists(const MergeTree& m, const MergeTree& n,
                                                       double eps,
                                                       const InterleavingOptions& opt = {});

// Smallest feasible eps over the candidate set {0} + {|a-b|, |a-b|/2} for
// critical times a, b of either tree; attainment is probed by a decision
// test just below the returned value and fails loudly on a discrepancy.
double interleaving_distance(const MergeTree& m, const MergeTree& n,
                             const InterleavingOptions& opt = {});

// Full recheck of naturality squares and both triangle identities on the
// combined critical grid.
bool verify_witness(const MergeTree& m, const MergeTree& n, const InterleavingWitness& w,
                    double tol = 1e-9);

// Compatible pair built from minimal presentations and the witness maps; the
// sup label distance equals the witness epsilon (up to roundoff of shifted
// labels).
std::pair<Presentation, Presentation> interleaving_to_presentations(const MergeTree& m,
                                                                    const MergeTree& n,
                                                                    const InterleavingWitness& w);

// Interleaving induced by a compatible pair at eps = their sup label
// distance, via the universal property of the coequalizers. The returned
// witness is fully verified against the coequalized trees.
InterleavingWitness presentations_to_interleaving(const Presentation& pa, const Presentation& pb,
                                                  const InterleavingOptions& opt = {});

} // namespace treedist
