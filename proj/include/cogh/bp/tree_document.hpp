#pragma once

#include <json.hpp>

#include "cogh/bp/causal_tree.hpp"
#include "cogh/bp/propagate.hpp"

namespace cogh::bp {

/// Parses
///
///   { "processors": [ { "id": "N4", "n": 2, "parent": null, "prior": [0.5, 0.5],
///                       "external_input": [1, 1] },
///                     { "id": "N2", "n": 2, "parent": "N4",
///                       "matrix": [1, 0, 0, 1], "external_input": [0.5, 0.5] } ] }
///
/// `matrix` is row-major parent_n x n, rows indexed by parent value.
/// `external_input` defaults to all ones (no evidence). Processors may be
/// listed in any order; children keep document order. Throws
/// cogh::DocumentError.
CausalTree tree_from_json(const nlohmann::json& doc);
nlohmann::json tree_to_json(const CausalTree& tree);

/// { id: [p...] } with degenerate beliefs emitted as null.
nlohmann::json beliefs_to_json(const BeliefTable& table);

/// True for documents shaped like a causal tree (has "processors").
bool looks_like_tree(const nlohmann::json& doc);

}  // namespace cogh::bp
