#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "treedist/tree.hpp"

namespace treedist {

// A relating strand born at `birth` whose two merge functions target the
// generators `f` and `g` (possibly equal).
struct Relation {
    double birth = 0.0;
    int f = 0;
    int g = 0;
};

// Generators plus relations whose coequalizer is a merge forest. A strand map
// into generator i exists only from strands born no earlier, so every
// relation satisfies birth >= max(generator births of its endpoints).
class Presentation {
public:
    Presentation() = default;
    Presentation(std::vector<double> generator_births, std::vector<Relation> relations);

    const std::vector<double>& generator_births() const { return generators_; }
    const std::vector<Relation>& relations() const { return relations_; }
    int generator_count() const { return static_cast<int>(generators_.size()); }
    int relation_count() const { return static_cast<int>(relations_.size()); }

    // 0/1 incidence of relations (columns) to generators (rows).
    Eigen::MatrixXi matrix() const;
    // Generator births followed by relation births.
    Eigen::VectorXd label_vector() const;

private:
    std::vector<double> generators_;
    std::vector<Relation> relations_;
};

// Coequalizer together with the data needed to chase strands through it.
struct CoeqResult {
    MergeForest forest;
    PersistentSetRep rep;
    // generator_elements[i][gen] = element of critical set i holding the
    // generator strand, or -1 when the strand is not born yet.
    std::vector<std::vector<int>> generator_elements;

    // Element holding generator `gen` at the critical index `idx`.
    int element_of(int idx, int gen) const {
        return generator_elements[static_cast<size_t>(idx)][static_cast<size_t>(gen)];
    }
};

// One generator per leaf, n-1 relations at the merge heights. The anchor
// endpoint at a multiway merge is the joining branch holding the earliest
// born generator (ties: lowest index).
Presentation minimal_presentation(const MergeTree& tree);

MergeForest coequalize(const Presentation& p);
CoeqResult coequalize_full(const Presentation& p);

// Element of the coequalizer's critical set at time t whose component holds
// the given generator strand; follows instant-merge relations for strands
// born strictly between critical times.
int element_of_generator_at(const Presentation& p, const CoeqResult& coeq, int gen, double t,
                            double tol = 0.0);

// Appends a generator born at `a` killed immediately by a relation into
// `target`. Rejects a < birth(target); the coequalizer is unchanged.
Presentation add_trivial_pair(const Presentation& p, double a, int target);

// Identical 0/1 matrices, no row or column permutation.
bool are_compatible(const Presentation& a, const Presentation& b);

// Compatible presentations of the same two trees: generator counts equalized
// by trivial pairs at height t, matrices concatenated side by side, foreign
// relation columns labeled t. Requires t at or above every label of both
// inputs and single-component coequalizers.
std::pair<Presentation, Presentation> pad_concatenate(const Presentation& pm,
                                                       const Presentation& pn, double t);

// l^p norm of the label vector difference of a compatible pair.
double label_distance(const Presentation& a, const Presentation& b, double p);

// Reorders generators; perm[new_index] = old_index. Relation endpoints follow.
Presentation permute_generators(const Presentation& p, const std::vector<int>& perm);

} // namespace treedist
