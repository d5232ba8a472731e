#pragma once

#include <random>
#include <utility>

#include "treedist/barcode.hpp"
#include "treedist/filtration.hpp"
#include "treedist/tree.hpp"

namespace treedist {

// Random binary merge cascade; generic heights (strictly positive gaps).
MergeTree random_merge_tree(std::mt19937_64& rng, int max_leaves);

// Heights snapped to a grid with zero gaps allowed: exercises simultaneous
// merges, multiway joins and zero-length branches.
MergeTree random_grid_merge_tree(std::mt19937_64& rng, int max_leaves, double step = 0.25);

Barcode random_barcode(std::mt19937_64& rng, int max_bars, bool allow_unbounded = true);

// Connected graph with vertex values uniform on [0,1] and edge values at the
// endpoint maximum plus uniform slack; monotone by construction.
std::pair<CellComplex1, CellularFunction> random_monotone_complex(std::mt19937_64& rng,
                                                                  int max_cells);

// A second monotone function on an existing complex.
CellularFunction random_monotone_function(std::mt19937_64& rng, const CellComplex1& x);

} // namespace treedist
