#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hypergm/aomoto.hpp"
#include "hypergm/gaussmanin.hpp"
#include "hypergm/monodromy.hpp"

namespace hypergm {

using json = nlohmann::ordered_json;

json to_json(const Rat& r);
Rat rat_from_json(const json& j);

json to_json(const WeightExpr& e);
WeightExpr weight_expr_from_json(const json& j);

/// {"n": int, "hyperplanes": [[rat strings]], "infinity": int}
Arrangement arrangement_from_json(const json& j);
json to_json(const Arrangement& a);

/// Flat object {"a1": "1/3", ..., "ah": "-1/2"}; an "a0" entry, if present,
/// must equal minus the sum of the others.
Weights weights_from_json(const json& j);
json to_json(const Weights& w);

json to_json(const Lattice& l);
json flats_to_json(const std::vector<Flat>& flats);
json circuits_to_json(const std::vector<Circuit>& cs);
json broken_circuits_to_json(const std::vector<BrokenCircuit>& bs);
json index_sets_to_json(const std::vector<IndexSet>& sets);

/// {"terms": [{"idx": [ints], "c": "p/q"}]}; index `moving` prints as "s".
json to_json(const ExtElem& e, int moving = -1);
json relations_to_json(const std::vector<Relation>& rels);

json to_json(const GMConnection& g);
GMConnection connection_from_json(const json& j);

/// Complex number as ["re", "im"] with 17 significant digits.
json complex_to_json(const cplx& z);
json to_json(const MonodromyResult& r);

/// Reads a whole file; throws ValidationError when it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(const std::string& text, const std::string& what);

}  // namespace hypergm
