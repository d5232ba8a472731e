#pragma once

#include <string>

#include "json.hpp"
#include "treedist/barcode.hpp"
#include "treedist/bracket.hpp"
#include "treedist/filtration.hpp"
#include "treedist/interleaving.hpp"
#include "treedist/presentation.hpp"
#include "treedist/tree.hpp"
#include "treedist/wasserstein.hpp"

namespace treedist::io {

using json = nlohmann::ordered_json;

json load_file(const std::string& path);
void write_file(const std::string& path, const json& j);

// p is a number in [1, inf); the string "inf" encodes p = infinity.
double p_from_json(const json& j);
json p_to_json(double p);

json tree_to_json(const MergeTree& t);
TreeData tree_data_from_json(const json& j);
MergeTree tree_from_json(const json& j); // parse + validate + normalize

json forest_to_json(const MergeForest& f);

json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const json& j);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json complex_to_json(const CellComplex1& x);
CellComplex1 complex_from_json(const json& j);
json function_to_json(const CellularFunction& f);
CellularFunction function_from_json(const json& j);

json matching_to_json(const Matching& m);
json witness_to_json(const InterleavingWitness& w);
InterleavingWitness witness_from_json(const json& j);

json bracket_to_json(const DistanceBracket& b);

} // namespace treedist::io
