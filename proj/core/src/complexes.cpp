#include "cglearn/complexes.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace cglearn {

namespace {

VertexSet union_with(const VertexSet& s, VertexId w) {
    VertexSet out = s;
    out.push_back(w);
    normalize_set(out);
    return out;
}

/// Undirected adjacency + direction bookkeeping for the orientation sweeps.
struct WorkingGraph {
    explicit WorkingGraph(const MixedGraph& skeleton_graph)
        : undirected(SymmetricAdjacency::from_graph(skeleton_graph)) {}

    SymmetricAdjacency undirected;
    std::vector<EdgePair> arrows;

    void orient(VertexId u, VertexId w) {
        undirected.clear(u, w);
        arrows.emplace_back(u, w);
    }

    MixedGraph to_graph(std::size_t p) const {
        MixedGraphBuilder builder(p);
        for (const auto& [u, w] : arrows) builder.add_directed(u, w);
        for (VertexId u = 0; u < p; ++u) {
            for (VertexId v = u + 1; v < p; ++v) {
                if (undirected.at(u, v)) builder.add_undirected(u, v);
            }
        }
        return builder.build();
    }
};

std::vector<std::pair<VertexId, VertexId>> nonadjacent_ordered_pairs(
    const MixedGraph& skeleton_graph, const VariableOrdering& order) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    const std::size_t p = order.size();
    for (std::size_t pu = 0; pu < p; ++pu) {
        for (std::size_t pv = 0; pv < p; ++pv) {
            if (pu == pv) continue;
            const VertexId u = order.at(pu);
            const VertexId v = order.at(pv);
            if (!skeleton_graph.adjacent(u, v)) pairs.emplace_back(u, v);
        }
    }
    return pairs;
}

}  // namespace

MixedGraph recover_complex_arrows(const MixedGraph& skeleton_graph, const SeparationSets& sepsets,
                                  const CIOracle& oracle, const VariableOrdering& order) {
    const std::size_t p = skeleton_graph.vertex_count();
    if (order.size() != p || oracle.variable_count() != p) {
        throw Error("recover_complex_arrows: vertex count mismatch");
    }
    WorkingGraph work(skeleton_graph);
    for (const auto& [u, v] : nonadjacent_ordered_pairs(skeleton_graph, order)) {
        const VertexSet& sep = sepsets.get(u, v);  // throws MissingSepset
        for (VertexId w : work.undirected.neighbors_by_position(u, order, v)) {
            if (!work.undirected.at(u, w)) continue;  // oriented meanwhile
            if (!oracle.query(u, v, union_with(sep, w)).independent) {
                work.orient(u, w);
            }
        }
    }
    return work.to_graph(p);
}

namespace {

/// Path predicate of the extraction step: an undirected path w1 .. w2 whose
/// vertices other than w1 avoid ad(u1) and whose vertices other than w2
/// avoid ad(u2) (and which never passes through u1, u2).
bool complex_pair_linked(const MixedGraph& g, VertexId u1, VertexId w1, VertexId u2,
                         VertexId w2) {
    if (w1 == w2) return true;
    if (w1 == u2 || w2 == u1) return false;
    if (g.adjacent(w1, u2) || g.adjacent(w2, u1)) return false;
    // BFS over undirected edges; interior vertices must avoid both tails'
    // adjacencies entirely.
    std::vector<char> visited(g.vertex_count(), 0);
    std::queue<VertexId> frontier;
    visited[w1] = 1;
    frontier.push(w1);
    while (!frontier.empty()) {
        const VertexId x = frontier.front();
        frontier.pop();
        for (VertexId y : g.undirected_neighbors(x)) {
            if (visited[y]) continue;
            visited[y] = 1;
            if (y == w2) return true;
            if (y == u1 || y == u2) continue;
            if (g.adjacent(y, u1) || g.adjacent(y, u2)) continue;
            frontier.push(y);
        }
    }
    return false;
}

}  // namespace

std::vector<EdgePair> labeled_complex_arrows(const MixedGraph& g) {
    const auto& arrows = g.directed_edges();
    std::vector<char> labeled(arrows.size(), 0);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        for (std::size_t j = i + 1; j < arrows.size(); ++j) {
            const auto& [u1, w1] = arrows[i];
            const auto& [u2, w2] = arrows[j];
            if (u1 == u2) continue;
            if (g.adjacent(u1, u2)) continue;
            if (complex_pair_linked(g, u1, w1, u2, w2)) {
                labeled[i] = 1;
                labeled[j] = 1;
            }
        }
    }
    std::vector<EdgePair> out;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (labeled[i]) out.push_back(arrows[i]);
    }
    return out;  // arrows are sorted, so the filtered list is too
}

Pattern extract_pattern(const MixedGraph& h_star) {
    const auto labeled = labeled_complex_arrows(h_star);
    MixedGraphBuilder builder(h_star.vertex_count());
    for (const auto& [u, v] : labeled) builder.add_directed(u, v);
    for (const auto& [u, v] : h_star.directed_edges()) {
        if (!std::binary_search(labeled.begin(), labeled.end(), EdgePair{u, v})) {
            builder.add_undirected(u, v);
        }
    }
    for (const auto& [u, v] : h_star.undirected_edges()) builder.add_undirected(u, v);
    Pattern pattern;
    pattern.graph = builder.build();
    pattern.complex_arrows = labeled;
    return pattern;
}

Pattern pattern_of(const MixedGraph& g) {
    if (!is_chain_graph(g)) throw NotAChainGraph("pattern_of: graph has a semi-directed cycle");
    return extract_pattern(g);
}

AmbiguityPolicy AmbiguityPolicy::majority(double alpha_pct, double beta_pct) {
    if (!(alpha_pct >= 0.0 && alpha_pct <= beta_pct && beta_pct <= 100.0)) {
        throw Error("AmbiguityPolicy: need 0 <= alpha <= beta <= 100");
    }
    return AmbiguityPolicy{Kind::majority, alpha_pct, beta_pct};
}

namespace {

enum class EdgeVote { orient, keep, ambiguous };

EdgeVote vote(const AmbiguityPolicy& policy, std::size_t dependent, std::size_t total) {
    if (policy.kind == AmbiguityPolicy::Kind::conservative) {
        if (dependent == total) return EdgeVote::orient;
        if (dependent == 0) return EdgeVote::keep;
        return EdgeVote::ambiguous;
    }
    // f = dependent/total compared with inclusive boundaries, kept exact by
    // cross-multiplying the rational against the percentage.
    const double scaled = 100.0 * static_cast<double>(dependent);
    if (scaled >= policy.beta_pct * static_cast<double>(total)) return EdgeVote::orient;
    if (scaled <= policy.alpha_pct * static_cast<double>(total)) return EdgeVote::keep;
    return EdgeVote::ambiguous;
}

/// Separating family for role (u, v): all subsets of ad_H(u) \ {v} up to
/// max_size that the oracle reports independent.
std::vector<VertexSet> separating_family(const CIOracle& oracle, const MixedGraph& h,
                                         VertexId u, VertexId v, int max_size) {
    std::vector<VertexSet> family;
    const VertexSet& adj = h.adjacency(u);
    std::vector<VertexId> base;
    base.reserve(adj.size());
    for (VertexId x : adj) {
        if (x != v) base.push_back(x);
    }
    const std::size_t cap = std::min<std::size_t>(
        base.size(), static_cast<std::size_t>(std::max(0, max_size)));
    for (std::size_t k = 0; k <= cap; ++k) {
        for_each_subset(base, k, [&](const VertexSet& s) {
            if (oracle.query(u, v, s).independent) family.push_back(s);
            return true;
        });
    }
    return family;
}

}  // namespace

Pattern label_ambiguity(const SkeletonResult& skel, const CIOracle& oracle,
                        const AmbiguityPolicy& policy, bool skip_unsupported_pairs) {
    if (policy.kind == AmbiguityPolicy::Kind::majority &&
        !(policy.alpha_pct >= 0.0 && policy.alpha_pct <= policy.beta_pct &&
          policy.beta_pct <= 100.0)) {
        throw Error("label_ambiguity: need 0 <= alpha <= beta <= 100");
    }
    const MixedGraph& h = skel.graph;
    const std::size_t p = h.vertex_count();
    if (oracle.variable_count() != p) throw Error("label_ambiguity: vertex count mismatch");
    const int max_size = skel.max_level_reached;

    // decisions[key]: demanded orientations and ambiguity marks per edge
    std::set<EdgePair> demanded;   // u -> w
    std::set<EdgePair> ambiguous;  // normalized u < w

    for (VertexId u = 0; u < p; ++u) {
        for (VertexId v = u + 1; v < p; ++v) {
            if (h.adjacent(u, v)) continue;
            const auto family_u = separating_family(oracle, h, u, v, max_size);
            const auto family_v = separating_family(oracle, h, v, u, max_size);
            if (family_u.empty() && family_v.empty()) {
                if (skip_unsupported_pairs) continue;
                throw EmptyFamily("label_ambiguity: no separating set for pair {" +
                                  std::to_string(u) + ", " + std::to_string(v) + "}");
            }
            const std::pair<VertexId, VertexId> roles[2] = {{u, v}, {v, u}};
            for (const auto& [x, partner] : roles) {
                const auto& family = (x == u) ? family_u : family_v;
                if (family.empty()) continue;
                for (VertexId w : h.undirected_neighbors(x)) {
                    std::size_t dependent = 0;
                    for (const VertexSet& s : family) {
                        if (!oracle.query(x, partner, union_with(s, w)).independent) {
                            ++dependent;
                        }
                    }
                    switch (vote(policy, dependent, family.size())) {
                        case EdgeVote::orient:
                            demanded.insert({x, w});
                            break;
                        case EdgeVote::keep:
                            break;
                        case EdgeVote::ambiguous:
                            ambiguous.insert({std::min(x, w), std::max(x, w)});
                            break;
                    }
                }
            }
        }
    }

    // Simultaneous commit: ambiguity (including contradictory orientation
    // demands) wins and the edge stays undirected.
    WorkingGraph work(h);
    for (const auto& [x, w] : demanded) {
        const EdgePair key{std::min(x, w), std::max(x, w)};
        if (ambiguous.count(key) != 0) continue;
        if (demanded.count({w, x}) != 0) {
            ambiguous.insert(key);
            continue;
        }
        if (work.undirected.at(x, w)) work.orient(x, w);
    }
    Pattern pattern = extract_pattern(work.to_graph(p));
    pattern.ambiguous_edges.assign(ambiguous.begin(), ambiguous.end());
    return pattern;
}

LearnResult learn_pattern(const CIOracle& oracle, const VariableOrdering& order,
                          const LearnOptions& options) {
    SkeletonOptions skel_options;
    skel_options.mode = options.mode;
    skel_options.capture_trace = options.capture_trace;
    skel_options.threads = options.threads;
    LearnResult result;
    result.skeleton = learn_skeleton(oracle, order, skel_options);
    switch (options.rule) {
        case OrientationRule::plain: {
            const MixedGraph h_star =
                recover_complex_arrows(result.skeleton.graph, result.skeleton.sepsets, oracle, order);
            result.pattern = extract_pattern(h_star);
            break;
        }
        case OrientationRule::conservative:
            result.pattern = label_ambiguity(result.skeleton, oracle, AmbiguityPolicy::conservative(),
                                             options.skip_unsupported_pairs);
            break;
        case OrientationRule::majority:
            result.pattern = label_ambiguity(result.skeleton, oracle,
                                             AmbiguityPolicy::majority(options.alpha_pct,
                                                                       options.beta_pct),
                                             options.skip_unsupported_pairs);
            break;
    }
    return result;
}

}  // namespace cglearn
