#pragma once

#include <json.hpp>

#include "heckelab/hecke_affine.hpp"
#include "heckelab/hecke_modules.hpp"

namespace heckelab {

using nlohmann::json;

std::string scalar_to_string(const Scalar& s);
Scalar scalar_from_string(const Field* f, const std::string& s);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, const Field* f, const std::string& field_name);

// structure-constant dump of a finite Hecke algebra (CLI hook `oracle`)
json algebra_to_json(const HeckeAlgebra& H);
// structural round-trip carrier for the dump
struct AlgebraDump {
  std::string group, coeff;
  std::vector<std::vector<int>> basis;           // matrix entry codes per basis elt
  std::map<int, long long> q_s;                  // per simple reflection
  std::vector<std::tuple<int, std::vector<int>, long long>> c;  // (s, torus codes, value)
  std::vector<std::tuple<int, int, int, std::string>> table;    // sparse triples
  bool operator==(const AlgebraDump&) const = default;
};
AlgebraDump algebra_dump_from_json(const json& j);
json algebra_dump_to_json(const AlgebraDump& d);
// rebuild the algebra named by the dump and verify the dump matches it
bool algebra_dump_consistent(const AlgebraDump& d);

// root datum record {type, rank, pairing}
json root_datum_to_json(const RootDatum& d);

// double-coset index tables {cell_index: [element_ids]} for golden files
json double_cosets_to_json(const FiniteGroup& g, const DoubleCosets& dc);

// finite Hecke module (same shape as the affine module format)
json hecke_module_to_json(const HeckeModule& m);
HeckeModule hecke_module_from_json(const json& j, const HeckeAlgebra& algebra);

// affine module round-trip (shared module format)
json affine_module_to_json(const AffineModule& m);
AffineModule affine_module_from_json(const json& j);

json parse_json_document(const std::string& text);

}  // namespace heckelab
