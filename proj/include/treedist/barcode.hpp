#pragma once

#include <vector>

#include "treedist/lp.hpp"
#include "treedist/tree.hpp"

namespace treedist {

// Half-open interval [birth, death); death = kInf marks the essential bar.
struct Interval {
    double birth = 0.0;
    double death = 0.0;

    bool unbounded() const { return death == kInf; }
    bool empty() const { return birth == death; }
    bool contains(double s, double t) const { return birth <= s && t < death; }
};

using Barcode = std::vector<Interval>;

// Branch decomposition: one bar per contributing leaf, the younger branch
// dies at each merge, the eldest branch carries the unbounded bar.
// Zero-length branches are dropped.
Barcode elder_barcode(const MergeTree& tree);

// Number of bars containing [s, t]; equals the image size of the evolution
// map M(s <= t) (test oracle for the elder rule).
int bars_containing(const Barcode& b, double s, double t);

} // namespace treedist
