#include "cglearn/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace cglearn {

VertexSet& normalize_set(VertexSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

MixedGraph::MixedGraph(std::size_t vertex_count)
    : p_(vertex_count),
      parents_(vertex_count),
      children_(vertex_count),
      neighbors_(vertex_count),
      boundary_(vertex_count),
      adjacency_(vertex_count) {}

MixedGraph MixedGraph::from_edges(std::size_t vertex_count,
                                  std::vector<EdgePair> directed,
                                  std::vector<EdgePair> undirected) {
    MixedGraphBuilder builder(vertex_count);
    for (const auto& [u, v] : directed) builder.add_directed(u, v);
    for (const auto& [u, v] : undirected) builder.add_undirected(u, v);
    return builder.build();
}

bool MixedGraph::has_directed(VertexId u, VertexId v) const {
    return directed_keys_.count(detail::pair_key(u, v)) != 0;
}

bool MixedGraph::has_undirected(VertexId u, VertexId v) const {
    return undirected_keys_.count(detail::unordered_key(u, v)) != 0;
}

bool MixedGraph::adjacent(VertexId u, VertexId v) const {
    return has_undirected(u, v) || has_directed(u, v) || has_directed(v, u);
}

std::size_t MixedGraph::max_degree() const {
    std::size_t best = 0;
    for (const auto& a : adjacency_) best = std::max(best, a.size());
    return best;
}

MixedGraphBuilder::MixedGraphBuilder(std::size_t vertex_count) : p_(vertex_count) {}

void MixedGraphBuilder::check(VertexId u, VertexId v) const {
    if (u >= p_ || v >= p_) {
        throw GraphError("edge endpoint out of range [0, " + std::to_string(p_) + ")");
    }
    if (u == v) throw GraphError("self loop on vertex " + std::to_string(u));
    if (pair_keys_.count(detail::unordered_key(u, v)) != 0) {
        throw GraphError("pair {" + std::to_string(u) + ", " + std::to_string(v) +
                         "} already carries an edge");
    }
}

bool MixedGraphBuilder::has_pair(VertexId u, VertexId v) const {
    return pair_keys_.count(detail::unordered_key(u, v)) != 0;
}

void MixedGraphBuilder::add_directed(VertexId u, VertexId v) {
    check(u, v);
    directed_.emplace_back(u, v);
    directed_keys_.insert(detail::pair_key(u, v));
    pair_keys_.insert(detail::unordered_key(u, v));
}

void MixedGraphBuilder::add_undirected(VertexId u, VertexId v) {
    check(u, v);
    undirected_.emplace_back(std::min(u, v), std::max(u, v));
    pair_keys_.insert(detail::unordered_key(u, v));
}

MixedGraph MixedGraphBuilder::build() {
    MixedGraph g(p_);
    std::sort(directed_.begin(), directed_.end());
    std::sort(undirected_.begin(), undirected_.end());
    g.directed_ = directed_;
    g.undirected_ = undirected_;
    for (const auto& [u, v] : directed_) {
        g.directed_keys_.insert(detail::pair_key(u, v));
        g.children_[u].push_back(v);
        g.parents_[v].push_back(u);
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (const auto& [u, v] : undirected_) {
        g.undirected_keys_.insert(detail::unordered_key(u, v));
        g.neighbors_[u].push_back(v);
        g.neighbors_[v].push_back(u);
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (VertexId v = 0; v < p_; ++v) {
        normalize_set(g.parents_[v]);
        normalize_set(g.children_[v]);
        normalize_set(g.neighbors_[v]);
        normalize_set(g.adjacency_[v]);
        g.boundary_[v] = g.parents_[v];
        g.boundary_[v].insert(g.boundary_[v].end(), g.neighbors_[v].begin(),
                              g.neighbors_[v].end());
        normalize_set(g.boundary_[v]);
    }
    return g;
}

namespace {

// Connected components of the undirected subgraph, no chain-graph check.
ChainComponentPartition undirected_components(const MixedGraph& g) {
    const std::size_t p = g.vertex_count();
    ChainComponentPartition part;
    part.component_of.assign(p, static_cast<std::size_t>(-1));
    for (VertexId v = 0; v < p; ++v) {
        if (part.component_of[v] != static_cast<std::size_t>(-1)) continue;
        const std::size_t index = part.components.size();
        VertexSet members;
        std::queue<VertexId> frontier;
        frontier.push(v);
        part.component_of[v] = index;
        while (!frontier.empty()) {
            const VertexId x = frontier.front();
            frontier.pop();
            members.push_back(x);
            for (VertexId y : g.undirected_neighbors(x)) {
                if (part.component_of[y] == static_cast<std::size_t>(-1)) {
                    part.component_of[y] = index;
                    frontier.push(y);
                }
            }
        }
        normalize_set(members);
        part.components.push_back(std::move(members));
    }
    // BFS from ascending v already yields components ordered by smallest member.
    return part;
}

// Kahn's algorithm on the component digraph; returns empty on a cycle.
std::vector<std::size_t> component_toposort(const std::vector<std::vector<std::size_t>>& succ) {
    const std::size_t k = succ.size();
    std::vector<std::size_t> indegree(k, 0);
    for (const auto& outs : succ)
        for (std::size_t t : outs) ++indegree[t];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t c = 0; c < k; ++c)
        if (indegree[c] == 0) ready.push(c);
    std::vector<std::size_t> order;
    order.reserve(k);
    while (!ready.empty()) {
        const std::size_t c = ready.top();
        ready.pop();
        order.push_back(c);
        for (std::size_t t : succ[c])
            if (--indegree[t] == 0) ready.push(t);
    }
    if (order.size() != k) order.clear();
    return order;
}

std::vector<std::vector<std::size_t>> component_digraph(const MixedGraph& g,
                                                        const ChainComponentPartition& part) {
    std::vector<std::vector<std::size_t>> succ(part.components.size());
    for (const auto& [u, v] : g.directed_edges()) {
        const std::size_t cu = part.component_of[u];
        const std::size_t cv = part.component_of[v];
        if (cu != cv) succ[cu].push_back(cv);
    }
    for (auto& outs : succ) {
        std::sort(outs.begin(), outs.end());
        outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    }
    return succ;
}

}  // namespace

bool is_chain_graph(const MixedGraph& g) {
    const ChainComponentPartition part = undirected_components(g);
    // An arrow inside a component closes a semi-directed cycle through the
    // undirected path back to its tail.
    for (const auto& [u, v] : g.directed_edges()) {
        if (part.component_of[u] == part.component_of[v]) return false;
    }
    return !component_toposort(component_digraph(g, part)).empty() ||
           part.components.empty();
}

ChainComponentPartition chain_components(const MixedGraph& g) {
    if (!is_chain_graph(g)) throw NotAChainGraph("chain_components: graph has a semi-directed cycle");
    return undirected_components(g);
}

std::vector<std::size_t> topological_component_order(const MixedGraph& g,
                                                     const ChainComponentPartition& partition) {
    auto order = component_toposort(component_digraph(g, partition));
    if (order.empty() && !partition.components.empty()) {
        throw NotAChainGraph("topological_component_order: component digraph has a cycle");
    }
    return order;
}

namespace detail {

MixedGraph moral_graph_unchecked(const MixedGraph& g) {
    const ChainComponentPartition part = undirected_components(g);
    MixedGraphBuilder builder(g.vertex_count());
    for (const auto& [u, v] : g.directed_edges()) builder.add_undirected(u, v);
    for (const auto& [u, v] : g.undirected_edges()) builder.add_undirected(u, v);
    for (const auto& component : part.components) {
        VertexSet parents;
        for (VertexId t : component) {
            const VertexSet& pa = g.parents(t);
            parents.insert(parents.end(), pa.begin(), pa.end());
        }
        normalize_set(parents);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            for (std::size_t j = i + 1; j < parents.size(); ++j) {
                if (!builder.has_pair(parents[i], parents[j])) {
                    builder.add_undirected(parents[i], parents[j]);
                }
            }
        }
    }
    return builder.build();
}

VertexSet ancestral_set_unchecked(const MixedGraph& g, const VertexSet& seed) {
    std::vector<char> member(g.vertex_count(), 0);
    std::vector<VertexId> worklist;
    for (VertexId v : seed) {
        if (!member[v]) {
            member[v] = 1;
            worklist.push_back(v);
        }
    }
    while (!worklist.empty()) {
        const VertexId v = worklist.back();
        worklist.pop_back();
        for (VertexId b : g.boundary(v)) {
            if (!member[b]) {
                member[b] = 1;
                worklist.push_back(b);
            }
        }
    }
    VertexSet result;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (member[v]) result.push_back(v);
    return result;
}

}  // namespace detail

MixedGraph moral_graph(const MixedGraph& g) {
    if (!is_chain_graph(g)) throw NotAChainGraph("moral_graph: graph has a semi-directed cycle");
    return detail::moral_graph_unchecked(g);
}

VertexSet ancestral_set(const MixedGraph& g, const VertexSet& seed) {
    if (!is_chain_graph(g)) throw NotAChainGraph("ancestral_set: graph has a semi-directed cycle");
    for (VertexId v : seed) {
        if (v >= g.vertex_count()) throw GraphError("ancestral_set: vertex out of range");
    }
    return detail::ancestral_set_unchecked(g, seed);
}

MixedGraph skeleton(const MixedGraph& g) {
    MixedGraphBuilder builder(g.vertex_count());
    for (const auto& [u, v] : g.directed_edges()) builder.add_undirected(u, v);
    for (const auto& [u, v] : g.undirected_edges()) builder.add_undirected(u, v);
    return builder.build();
}

InducedSubgraph induced_subgraph(const MixedGraph& g, const VertexSet& vertices) {
    VertexSet keep = vertices;
    normalize_set(keep);
    for (VertexId v : keep) {
        if (v >= g.vertex_count()) throw GraphError("induced_subgraph: vertex out of range");
    }
    std::vector<VertexId> new_id(g.vertex_count(), static_cast<VertexId>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<VertexId>(i);

    MixedGraphBuilder builder(keep.size());
    for (const auto& [u, v] : g.directed_edges()) {
        if (new_id[u] != static_cast<VertexId>(-1) && new_id[v] != static_cast<VertexId>(-1)) {
            builder.add_directed(new_id[u], new_id[v]);
        }
    }
    for (const auto& [u, v] : g.undirected_edges()) {
        if (new_id[u] != static_cast<VertexId>(-1) && new_id[v] != static_cast<VertexId>(-1)) {
            builder.add_undirected(new_id[u], new_id[v]);
        }
    }
    return InducedSubgraph{builder.build(), std::move(keep)};
}

}  // namespace cglearn
