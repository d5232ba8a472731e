#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "treedist/presentation.hpp"
#include "treedist/tree.hpp"

namespace treedist {

// Regular 1-complex: vertices 0..vertex_count-1 and edges with distinct
// endpoints.
struct CellComplex1 {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
};

// One real value per cell. Monotone when every edge value dominates both of
// its endpoint values.
struct CellularFunction {
    Eigen::VectorXd vertex_values;
    Eigen::VectorXd edge_values;
};

void validate_complex(const CellComplex1& x);

bool is_monotone(const CellComplex1& x, const CellularFunction& f);

// Connected components of the sublevel subcomplexes, swept by value
// (vertices create, edges union). Rejects non-monotone functions.
MergeForest sublevel_merge_forest(const CellComplex1& x, const CellularFunction& f);

// Vertices as generators, edges as relations, labels = cell values. The
// coequalizer is the sublevel merge forest; two functions on the same
// complex give compatible presentations. Rejects disconnected complexes
// (the coequalizer must be a single tree).
Presentation incidence_presentation(const CellComplex1& x, const CellularFunction& f);

// l^p norm of the difference over all cells (vertices then edges).
double lp_function_distance(const CellularFunction& f, const CellularFunction& g, double p);

struct Lift {
    CellComplex1 complex;
    CellularFunction f;
    CellularFunction g;
};

// Realizes a compatible pair as monotone cellular functions on one complex:
// one vertex per generator, one edge per relation. A relation whose two
// merge functions hit the same generator gets a twin vertex born at the
// relation's own labels so the quotient topology is unchanged.
Lift geometric_lift(const Presentation& pm, const Presentation& pn);

} // namespace treedist
