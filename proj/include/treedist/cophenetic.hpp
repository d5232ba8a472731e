#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "treedist/tree.hpp"

namespace treedist {

// Upper-triangular matrix of pairwise least-common-ancestor heights under an
// ordered leaf labeling (entries below the diagonal stay zero). The diagonal
// carries the labeled leaf's birth height. `labels[i]` names the leaf that
// label i points at; the labeling must cover every leaf.
Eigen::MatrixXd cophenetic_vector(const MergeTree& tree, const std::vector<std::string>& labels);

// Infimum of the l^p distance between cophenetic vectors over all pairs of
// surjective ordered leaf labelings with max(n_m, n_n) <= k <= k_max labels.
// k_max defaults to n_m + n_n when negative. Enumeration is exact; an effort
// cap guards against oversized inputs.
double cophenetic_distance(const MergeTree& m, const MergeTree& n, double p, int k_max = -1);

} // namespace treedist
