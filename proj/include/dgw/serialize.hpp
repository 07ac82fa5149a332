#pragma once

#include <string>

#include "json.hpp"

#include "dgw/chain.hpp"
#include "dgw/coalg.hpp"
#include "dgw/dga.hpp"
#include "dgw/reedy.hpp"

namespace dgw {

using Json = nlohmann::ordered_json;

// parse errors become InputError "<source>:<line>:<column>: <reason>"
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json load_json_file(const std::string& path);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Ring& ring, std::size_t rows, std::size_t cols);

// {"ring": "F3", "ranks": {"0": 2}, "d": {"1": [[...]]}}, d keyed by source degree
Json to_json(const ChainComplex& x);
ChainComplex complex_from_json(const Json& j);
ChainComplex complex_from_json(const Json& j, const Ring& ring);

// {"src": complex, "dst": complex, "components": {"0": [[...]]}}
Json to_json(const ChainMap& f);
ChainMap chain_map_from_json(const Json& j);

// {"objects": [{name, degree}], "morphisms": [{name, src, dst, tag}], "compose": {g: {f: gf}}, "factor": {f: {minus, plus}}}
Json to_json(const ReedyCategory& c);
ReedyCategory category_from_json(const Json& j);

// {"ring", "generators": [{name, degree}], "differential": {gen: [{"word": [gens], "coeff": "1"}]}, "max_weight"}
DGAlgebra algebra_from_json(const Json& j);
// {"ring", "complex": {ranks, d}, "names": [...], "max_weight"}: the truncated cofree coalgebra
DGCoalgebra coalgebra_from_json(const Json& j);

std::string json_kind(const Json& j);  // complex, chain_map, category, algebra, coalgebra
std::string digest(const Json& j);     // FNV-1a of the compact dump, 16 hex digits

}  // namespace dgw
