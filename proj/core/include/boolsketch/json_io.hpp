#pragma once

// JSON forms of the library's results. Vertex and coordinate indices are
// 1-based in every document.

#include <nlohmann/json.hpp>

#include "boolsketch/fourier.hpp"
#include "boolsketch/hypergraph.hpp"
#include "boolsketch/ingestion.hpp"
#include "boolsketch/learners.hpp"
#include "boolsketch/recovery.hpp"

namespace boolsketch {

using Json = nlohmann::ordered_json;

/// {"n": n, "terms": [{"set": [...], "coeff": c}, ...]} in canonical set order.
Json to_json(const SparsePolynomial& f);
/// Throws InvalidArgument on a malformed document.
SparsePolynomial polynomial_from_json(const Json& j);

/// {"n": n, "edges": [[...], ...]}.
Json to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const Json& j);

Json to_json(const ParitySet& s);
Json to_json(const LearnOutcome& outcome);
Json to_json(const SketchResult& result);
Json to_json(const RecoveryResult& result, const CandidateSet& candidates);
Json to_json(const WindowGraph& window, const WindowSpec& spec);

}  // namespace boolsketch
