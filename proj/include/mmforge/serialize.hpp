#pragma once

#include <string>

#include "json.hpp"
#include "mmforge/bounds.hpp"
#include "mmforge/eiglab.hpp"
#include "mmforge/graph.hpp"
#include "mmforge/matrix.hpp"
#include "mmforge/searcher.hpp"

namespace mmforge {

using Json = nlohmann::ordered_json;

// Readers throw ParseError on malformed JSON shapes and ValidationError on
// values that break a type's invariants.

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Full dense rows.
Json to_json(const SymMatrix& a);
SymMatrix matrix_from_json(const Json& j);

/// {"items": [{"value": x | null, "multiplicity": k}, ...]}; null means free.
Json to_json(const SpectrumSpec& s);
SpectrumSpec spectrum_from_json(const Json& j);

Json to_json(const EigenReport& r);
Json to_json(const PatternReport& r);

/// The stored eigen and pattern sections are recomputed on load.
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const VerifyResult& v);
Json to_json(const BoundResult& b);

/// Externally tagged, e.g. {"CompleteBipartite": [3, 3]}, {"Complete": 5},
/// {"ComplementForm": {"p0": 2, "pairs": [[1, 2]], "r": 1}},
/// {"Corona": {...}}, {"ParallelPaths": {"n": 3, "d": [1, 0, -1]}},
/// {"Custom": {"n": 3, "edges": [[0, 1]]}}.
Json to_json(const FamilyDescriptor& d);
FamilyDescriptor family_from_json(const Json& j);

/// Missing keys keep their defaults.
Json to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const Json& j);

Json to_json(const SearchResult& r);

/// Parses text, mapping nlohmann errors to ParseError.
Json parse_json(const std::string& text);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// One row per line, entries at 17 significant digits.
std::string matrix_to_csv(const SymMatrix& a);

}  // namespace mmforge
