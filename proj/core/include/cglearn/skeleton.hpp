#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "cglearn/ci.hpp"
#include "cglearn/graph.hpp"

namespace cglearn {

/// A permutation of the vertex ids; the only degree of freedom the
/// order-dependence experiments vary.
class VariableOrdering {
public:
    explicit VariableOrdering(std::vector<VertexId> sequence);
    static VariableOrdering natural(std::size_t p);

    std::size_t size() const { return sequence_.size(); }
    VertexId at(std::size_t pos) const { return sequence_[pos]; }
    std::size_t position(VertexId v) const { return position_[v]; }
    const std::vector<VertexId>& sequence() const { return sequence_; }

    bool operator==(const VariableOrdering& other) const { return sequence_ == other.sequence_; }

private:
    std::vector<VertexId> sequence_;
    std::vector<std::size_t> position_;
};

/// Symmetric separating-set store; one entry per unordered pair, recorded
/// only for removed edges.
class SeparationSets {
public:
    bool contains(VertexId u, VertexId v) const;
    const VertexSet& get(VertexId u, VertexId v) const;  // throws MissingSepset
    void set(VertexId u, VertexId v, VertexSet s);
    std::size_t size() const { return map_.size(); }

    /// (pair, set) entries sorted by pair; for deterministic export.
    std::vector<std::pair<EdgePair, VertexSet>> items() const;

private:
    std::unordered_map<std::uint64_t, VertexSet> map_;
};

/// Dense mutable symmetric adjacency used by the search loops.
class SymmetricAdjacency {
public:
    explicit SymmetricAdjacency(std::size_t p, bool complete = false);
    static SymmetricAdjacency complete_graph(std::size_t p);
    static SymmetricAdjacency from_graph(const MixedGraph& g);

    std::size_t vertex_count() const { return p_; }
    bool at(VertexId u, VertexId v) const { return cells_[u * p_ + v] != 0; }
    void set(VertexId u, VertexId v);
    void clear(VertexId u, VertexId v);
    std::size_t degree(VertexId v) const { return degree_[v]; }

    /// Neighbors of u ascending by id.
    VertexSet neighbors(VertexId u) const;
    /// Neighbors of u, minus `excluded`, ascending by order position.
    std::vector<VertexId> neighbors_by_position(VertexId u, const VariableOrdering& order,
                                                VertexId excluded) const;

    MixedGraph to_graph() const;

private:
    std::size_t p_;
    std::vector<char> cells_;
    std::vector<std::size_t> degree_;
};

enum class SkeletonMode { original, stable };

struct SkeletonOptions {
    SkeletonMode mode = SkeletonMode::stable;
    /// Record per-pair trace rows (forces single-threaded execution).
    bool capture_trace = false;
    /// Worker threads for level-parallel evaluation; > 1 needs stable mode.
    unsigned threads = 1;
};

/// One visited adjacent ordered pair during the level sweep. `adjacency_u` is
/// ad_H(u) as the sweep saw it (the level snapshot in stable mode), including
/// v itself; `sepset` is filled only when the edge was removed.
struct TraceRow {
    int level = 0;
    VertexId u = 0, v = 0;
    VertexSet adjacency_u;
    VertexSet sepset;
    bool eligible = false;
    bool removed = false;
};

struct SkeletonResult {
    MixedGraph graph;
    SeparationSets sepsets;
    std::vector<TraceRow> trace;
    std::uint64_t ci_queries = 0;
    /// Highest conditioning-set size any pair was eligible for (-1: none).
    int max_level_reached = -1;
};

/// Skeleton recovery from the complete graph by level-wise conditional
/// independence search.
///
/// At level i, ordered pairs (u, v) with u adjacent to v and
/// |ad(u) \ {v}| >= i are swept in the lexicographic order of their order(V)
/// positions; the i-subsets of ad(u) \ {v} are enumerated in combinatorial
/// order of positions, and the first independence found removes the edge and
/// records the separating set. In stable mode the adjacency sets are
/// snapshotted at the start of every level and used for eligibility and
/// subset enumeration, while removals still hit the working graph
/// immediately (a pair whose edge is already gone is skipped at selection).
SkeletonResult learn_skeleton(const CIOracle& oracle, const VariableOrdering& order,
                              const SkeletonOptions& options = {});

/// The level-i eligible ordered pairs of `adj` in sweep order (the selection
/// policy learn_skeleton uses, exposed for contract tests).
std::vector<std::pair<VertexId, VertexId>> eligible_pairs(const SymmetricAdjacency& adj,
                                                          const VariableOrdering& order,
                                                          int level);

/// All k-subsets of `base` (given ascending by order position) in
/// combinatorial order; the callback returns false to stop early.
void for_each_subset(const std::vector<VertexId>& base, std::size_t k,
                     const std::function<bool(const VertexSet&)>& visit);

/// Materialized subset stream, order positions ascending inside each subset.
std::vector<VertexSet> enumerate_subsets(const std::vector<VertexId>& base, std::size_t k);

/// Trace export, one row per visited pair: level,u,v,adj_u,sepset,removed.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace,
                     const std::vector<std::string>* labels = nullptr);

}  // namespace cglearn
