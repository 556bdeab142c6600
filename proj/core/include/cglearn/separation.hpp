#pragma once

#include "cglearn/graph.hpp"

namespace cglearn {

/// Disjoint nonempty sets A, B and a conditioning set S.
struct SeparationQuery {
    VertexSet a;
    VertexSet b;
    VertexSet s;
};

/// True iff S separates A from B in the moral graph of the induced subgraph
/// over the smallest ancestral set containing A ∪ B ∪ S.
///
/// Precondition: g is a chain graph (not re-validated here; this sits on the
/// oracle hot path). Throws InvalidQuery on overlapping, empty or
/// out-of-range query sets.
bool c_separated(const MixedGraph& g, const SeparationQuery& query);

/// Convenience wrapper for singleton A = {u}, B = {v}.
bool c_separated(const MixedGraph& g, VertexId u, VertexId v, const VertexSet& s);

/// Minimal separator for two nonadjacent vertices: build the ancestral
/// induced subgraph, moralize, start from the moral neighborhood of `a`, then
/// shrink it with a BFS pass from each endpoint (first-hit marking). The
/// result Z separates, and no proper subset of Z does.
///
/// Precondition: g is a chain graph. Throws AdjacentPair when a, b are
/// adjacent and InvalidQuery when a == b or out of range.
VertexSet minimal_separator(const MixedGraph& g, VertexId a, VertexId b);

}  // namespace cglearn
