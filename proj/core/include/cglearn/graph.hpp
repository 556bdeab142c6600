#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cglearn/errors.hpp"

namespace cglearn {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free vector of vertex ids; the library's set currency.
using VertexSet = std::vector<VertexId>;

/// (u, v) means u -> v for directed edges; u < v for undirected edges.
using EdgePair = std::pair<VertexId, VertexId>;

namespace detail {
constexpr std::uint64_t pair_key(VertexId u, VertexId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
constexpr std::uint64_t unordered_key(VertexId u, VertexId v) {
    return u < v ? pair_key(u, v) : pair_key(v, u);
}
}  // namespace detail

/// Sorts and deduplicates in place; returns the argument for chaining.
VertexSet& normalize_set(VertexSet& s);

/// Mixed graph over vertices 0..p-1 with directed and undirected edges.
///
/// Immutable after construction: adjacency views are precomputed, so const
/// access is safe from concurrent readers. Use MixedGraphBuilder to assemble
/// one edge at a time with conflict checking.
class MixedGraph {
public:
    explicit MixedGraph(std::size_t vertex_count = 0);
    static MixedGraph from_edges(std::size_t vertex_count,
                                 std::vector<EdgePair> directed,
                                 std::vector<EdgePair> undirected);

    std::size_t vertex_count() const { return p_; }
    std::size_t edge_count() const { return directed_.size() + undirected_.size(); }

    bool has_directed(VertexId u, VertexId v) const;
    bool has_undirected(VertexId u, VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;

    const VertexSet& parents(VertexId v) const { return parents_.at(v); }
    const VertexSet& children(VertexId v) const { return children_.at(v); }
    const VertexSet& undirected_neighbors(VertexId v) const { return neighbors_.at(v); }
    /// Parents plus undirected neighbors (the boundary bd(v)).
    const VertexSet& boundary(VertexId v) const { return boundary_.at(v); }
    /// Everything adjacent to v, regardless of edge kind.
    const VertexSet& adjacency(VertexId v) const { return adjacency_.at(v); }

    std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const;

    /// Lexicographically sorted edge lists (undirected ones normalized u < v).
    const std::vector<EdgePair>& directed_edges() const { return directed_; }
    const std::vector<EdgePair>& undirected_edges() const { return undirected_; }

    bool operator==(const MixedGraph& other) const {
        return p_ == other.p_ && directed_ == other.directed_ && undirected_ == other.undirected_;
    }

private:
    friend class MixedGraphBuilder;

    std::size_t p_ = 0;
    std::vector<EdgePair> directed_;
    std::vector<EdgePair> undirected_;
    std::unordered_set<std::uint64_t> directed_keys_;
    std::unordered_set<std::uint64_t> undirected_keys_;
    std::vector<VertexSet> parents_, children_, neighbors_, boundary_, adjacency_;
};

/// Incremental construction with validation (self loops, duplicate or
/// conflicting edges are rejected).
class MixedGraphBuilder {
public:
    explicit MixedGraphBuilder(std::size_t vertex_count);

    void add_directed(VertexId u, VertexId v);
    void add_undirected(VertexId u, VertexId v);
    bool has_pair(VertexId u, VertexId v) const;

    MixedGraph build();

private:
    void check(VertexId u, VertexId v) const;

    std::size_t p_;
    std::vector<EdgePair> directed_, undirected_;
    std::unordered_set<std::uint64_t> directed_keys_;
    std::unordered_set<std::uint64_t> pair_keys_;  // any edge kind, unordered
};

struct ChainComponentPartition {
    /// Disjoint vertex sets covering V, indexed by smallest member ascending.
    std::vector<VertexSet> components;
    /// component_of[v] = index into components.
    std::vector<std::size_t> component_of;
};

/// True iff g has no semi-directed cycle. Decided by contracting chain
/// components and cycle-checking the component digraph.
bool is_chain_graph(const MixedGraph& g);

/// Connected components of the undirected-edge subgraph. Throws NotAChainGraph.
ChainComponentPartition chain_components(const MixedGraph& g);

/// Component indices of chain_components(g) in a topological order of the
/// component digraph (ties broken by component index). Throws NotAChainGraph.
std::vector<std::size_t> topological_component_order(const MixedGraph& g,
                                                     const ChainComponentPartition& partition);

/// Undirected graph joining every adjacent pair plus every pair of vertices
/// with children in a common chain component. Throws NotAChainGraph.
MixedGraph moral_graph(const MixedGraph& g);

/// Smallest boundary-closed superset of seed. Throws NotAChainGraph.
VertexSet ancestral_set(const MixedGraph& g, const VertexSet& seed);

/// All adjacencies of g with every edge made undirected.
MixedGraph skeleton(const MixedGraph& g);

struct InducedSubgraph {
    MixedGraph graph;
    /// original_ids[new_id] = id in the parent graph.
    std::vector<VertexId> original_ids;
};

/// Subgraph on vertices (sorted ascending), ids remapped densely.
InducedSubgraph induced_subgraph(const MixedGraph& g, const VertexSet& vertices);

namespace detail {
// Non-validating versions for query hot paths; preconditions documented at
// the public wrappers.
MixedGraph moral_graph_unchecked(const MixedGraph& g);
VertexSet ancestral_set_unchecked(const MixedGraph& g, const VertexSet& seed);
}  // namespace detail

}  // namespace cglearn
