#include "cglearn/separation.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace cglearn {

namespace {

void check_in_range(const MixedGraph& g, const VertexSet& s, const char* role) {
    for (VertexId v : s) {
        if (v >= g.vertex_count()) {
            throw InvalidQuery(std::string(role) + " vertex " + std::to_string(v) +
                               " out of range");
        }
    }
}

bool sorted_intersects(const VertexSet& x, const VertexSet& y) {
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i == *j) return true;
        (*i < *j) ? ++i : ++j;
    }
    return false;
}

std::vector<VertexId> dense_ids(const VertexSet& original_ids, std::size_t p) {
    std::vector<VertexId> new_id(p, static_cast<VertexId>(-1));
    for (std::size_t i = 0; i < original_ids.size(); ++i) {
        new_id[original_ids[i]] = static_cast<VertexId>(i);
    }
    return new_id;
}

/// BFS that stops at blocker vertices, marking the ones it touches first.
VertexSet bfs_first_hit(const MixedGraph& moral, VertexId start,
                        const std::vector<char>& blocker) {
    std::vector<char> visited(moral.vertex_count(), 0);
    std::vector<char> marked(moral.vertex_count(), 0);
    std::queue<VertexId> frontier;
    visited[start] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
        const VertexId x = frontier.front();
        frontier.pop();
        for (VertexId y : moral.undirected_neighbors(x)) {
            if (visited[y]) continue;
            visited[y] = 1;
            if (blocker[y]) {
                marked[y] = 1;  // do not continue along this path
            } else {
                frontier.push(y);
            }
        }
    }
    VertexSet result;
    for (VertexId v = 0; v < moral.vertex_count(); ++v)
        if (marked[v]) result.push_back(v);
    return result;
}

}  // namespace

bool c_separated(const MixedGraph& g, const SeparationQuery& query) {
    VertexSet a = query.a, b = query.b, s = query.s;
    normalize_set(a);
    normalize_set(b);
    normalize_set(s);
    if (a.empty() || b.empty()) throw InvalidQuery("c_separated: A and B must be nonempty");
    check_in_range(g, a, "A");
    check_in_range(g, b, "B");
    check_in_range(g, s, "S");
    if (sorted_intersects(a, b) || sorted_intersects(a, s) || sorted_intersects(b, s)) {
        throw InvalidQuery("c_separated: A, B, S must be pairwise disjoint");
    }

    // This sits on the oracle hot path, so the ancestral induced subgraph and
    // its moralization are walked in place with scratch arrays instead of
    // materialized graphs.
    const std::size_t p = g.vertex_count();
    std::vector<char> in_anc(p, 0);
    std::vector<VertexId> stack;
    auto close_over = [&](const VertexSet& set) {
        for (VertexId v : set) {
            if (!in_anc[v]) {
                in_anc[v] = 1;
                stack.push_back(v);
            }
        }
    };
    close_over(a);
    close_over(b);
    close_over(s);
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : g.boundary(v)) {
            if (!in_anc[w]) {
                in_anc[w] = 1;
                stack.push_back(w);
            }
        }
    }

    // chain components of the induced subgraph (undirected edges inside anc)
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(p, kNone);
    std::size_t component_count = 0;
    std::vector<VertexId> bfs;
    for (VertexId v = 0; v < p; ++v) {
        if (!in_anc[v] || comp[v] != kNone) continue;
        const std::size_t index = component_count++;
        comp[v] = index;
        bfs.assign(1, v);
        while (!bfs.empty()) {
            const VertexId x = bfs.back();
            bfs.pop_back();
            for (VertexId y : g.undirected_neighbors(x)) {
                if (in_anc[y] && comp[y] == kNone) {
                    comp[y] = index;
                    bfs.push_back(y);
                }
            }
        }
    }
    // parents of each induced component (for the marriage edges)
    std::vector<std::vector<VertexId>> component_parents(component_count);
    for (VertexId v = 0; v < p; ++v) {
        if (!in_anc[v]) continue;
        for (VertexId child : g.children(v)) {
            if (in_anc[child]) component_parents[comp[child]].push_back(v);
        }
    }

    std::vector<char> blocked(p, 0), target(p, 0), visited(p, 0);
    for (VertexId v : s) blocked[v] = 1;
    for (VertexId v : b) target[v] = 1;

    bool reached = false;
    auto visit = [&](VertexId y) {
        if (visited[y]) return;
        visited[y] = 1;
        if (target[y]) {
            reached = true;
            return;
        }
        if (!blocked[y]) bfs.push_back(y);
    };
    bfs.clear();
    for (VertexId v : a) {
        visited[v] = 1;
        bfs.push_back(v);
    }
    while (!bfs.empty() && !reached) {
        const VertexId x = bfs.back();
        bfs.pop_back();
        for (VertexId y : g.adjacency(x)) {
            if (in_anc[y]) visit(y);
        }
        for (VertexId child : g.children(x)) {
            if (!in_anc[child]) continue;
            for (VertexId co_parent : component_parents[comp[child]]) visit(co_parent);
        }
    }
    return !reached;
}

bool c_separated(const MixedGraph& g, VertexId u, VertexId v, const VertexSet& s) {
    return c_separated(g, SeparationQuery{{u}, {v}, s});
}

VertexSet minimal_separator(const MixedGraph& g, VertexId a, VertexId b) {
    if (a >= g.vertex_count() || b >= g.vertex_count()) {
        throw InvalidQuery("minimal_separator: vertex out of range");
    }
    if (a == b) throw InvalidQuery("minimal_separator: endpoints must differ");
    if (g.adjacent(a, b)) {
        throw AdjacentPair("minimal_separator: " + std::to_string(a) + " and " +
                           std::to_string(b) + " are adjacent");
    }

    const VertexSet anc = detail::ancestral_set_unchecked(g, VertexSet{a, b});
    const InducedSubgraph sub = induced_subgraph(g, anc);
    const MixedGraph moral = detail::moral_graph_unchecked(sub.graph);
    const auto new_id = dense_ids(sub.original_ids, g.vertex_count());
    const VertexId sa = new_id[a];
    const VertexId sb = new_id[b];

    // Z' = ne(a) in the moral graph separates a from everything else.
    std::vector<char> blocker(moral.vertex_count(), 0);
    for (VertexId v : moral.undirected_neighbors(sa)) blocker[v] = 1;

    const VertexSet z2 = bfs_first_hit(moral, sa, blocker);
    std::fill(blocker.begin(), blocker.end(), 0);
    for (VertexId v : z2) blocker[v] = 1;

    const VertexSet z = bfs_first_hit(moral, sb, blocker);

    VertexSet result;
    result.reserve(z.size());
    for (VertexId v : z) result.push_back(sub.original_ids[v]);
    return result;  // original_ids ascending keeps the set sorted
}

}  // namespace cglearn
