#include "support/brute.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>

#include "cglearn/rng.hpp"

namespace cglearn::brute {

namespace {

bool step_ok(const MixedGraph& g, VertexId x, VertexId y) {
    return g.has_undirected(x, y) || g.has_directed(x, y);
}

bool step_directed(const MixedGraph& g, VertexId x, VertexId y) {
    return g.has_directed(x, y);
}

// Extends sequences of distinct vertices; closes a cycle when the last hop
// back to the first vertex is legal and some hop was directed.
bool find_semi_directed_cycle(const MixedGraph& g, std::vector<VertexId>& seq,
                              std::vector<char>& used) {
    const std::size_t k = seq.size();
    if (k >= 3 && step_ok(g, seq[k - 1], seq[0])) {
        bool any_arrow = step_directed(g, seq[k - 1], seq[0]);
        for (std::size_t i = 0; !any_arrow && i + 1 < k; ++i) {
            any_arrow = step_directed(g, seq[i], seq[i + 1]);
        }
        if (any_arrow) return true;
    }
    for (VertexId next = 0; next < g.vertex_count(); ++next) {
        if (used[next] || !step_ok(g, seq[k - 1], next)) continue;
        used[next] = 1;
        seq.push_back(next);
        if (find_semi_directed_cycle(g, seq, used)) return true;
        seq.pop_back();
        used[next] = 0;
    }
    return false;
}

}  // namespace

bool is_chain_graph(const MixedGraph& g) {
    const std::size_t p = g.vertex_count();
    std::vector<char> used(p, 0);
    std::vector<VertexId> seq;
    for (VertexId start = 0; start < p; ++start) {
        used.assign(p, 0);
        used[start] = 1;
        seq.assign(1, start);
        if (find_semi_directed_cycle(g, seq, used)) return false;
    }
    return true;
}

VertexSet ancestral_set(const MixedGraph& g, const VertexSet& seed) {
    const std::size_t p = g.vertex_count();
    if (p > 20) throw Error("brute::ancestral_set: subset enumeration needs p <= 20");
    std::uint32_t seed_mask = 0;
    for (VertexId v : seed) seed_mask |= 1u << v;
    std::uint32_t best = (p >= 32) ? 0xffffffffu : ((1u << p) - 1);
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        if ((mask & seed_mask) != seed_mask) continue;
        bool closed = true;
        for (VertexId v = 0; v < p && closed; ++v) {
            if (!(mask & (1u << v))) continue;
            for (VertexId b : g.boundary(v)) {
                if (!(mask & (1u << b))) {
                    closed = false;
                    break;
                }
            }
        }
        if (closed && std::popcount(mask) < std::popcount(best)) best = mask;
    }
    VertexSet out;
    for (VertexId v = 0; v < p; ++v) {
        if (best & (1u << v)) out.push_back(v);
    }
    return out;
}

MixedGraph moral_graph(const MixedGraph& g) {
    const std::size_t p = g.vertex_count();
    // components of the undirected subgraph by label propagation
    std::vector<std::size_t> comp(p);
    for (std::size_t v = 0; v < p; ++v) comp[v] = v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [u, v] : g.undirected_edges()) {
            const std::size_t lo = std::min(comp[u], comp[v]);
            if (comp[u] != lo || comp[v] != lo) {
                comp[u] = comp[v] = lo;
                changed = true;
            }
        }
    }
    MixedGraphBuilder builder(p);
    for (VertexId a = 0; a < p; ++a) {
        for (VertexId b = a + 1; b < p; ++b) {
            bool joined = g.adjacent(a, b);
            for (VertexId g1 = 0; g1 < p && !joined; ++g1) {
                for (VertexId g2 = 0; g2 < p && !joined; ++g2) {
                    joined = comp[g1] == comp[g2] && g.has_directed(a, g1) &&
                             g.has_directed(b, g2);
                }
            }
            if (joined) builder.add_undirected(a, b);
        }
    }
    return builder.build();
}

namespace {

bool any_open_path(const MixedGraph& moral, VertexId from, const std::vector<char>& target,
                   const std::vector<char>& blocked, std::vector<char>& visited) {
    if (target[from]) return true;
    visited[from] = 1;
    for (VertexId next : moral.undirected_neighbors(from)) {
        if (visited[next] || blocked[next]) continue;
        if (any_open_path(moral, next, target, blocked, visited)) return true;
        // leave visited set: we enumerate simple paths, so backtrack
        visited[next] = 0;
    }
    return false;
}

}  // namespace

bool c_separated(const MixedGraph& g, const VertexSet& a, const VertexSet& b,
                 const VertexSet& s) {
    VertexSet seed;
    seed.insert(seed.end(), a.begin(), a.end());
    seed.insert(seed.end(), b.begin(), b.end());
    seed.insert(seed.end(), s.begin(), s.end());
    normalize_set(seed);
    const VertexSet anc = brute::ancestral_set(g, seed);
    const InducedSubgraph sub = induced_subgraph(g, anc);
    const MixedGraph moral = brute::moral_graph(sub.graph);

    std::vector<VertexId> new_id(g.vertex_count(), static_cast<VertexId>(-1));
    for (std::size_t i = 0; i < sub.original_ids.size(); ++i) {
        new_id[sub.original_ids[i]] = static_cast<VertexId>(i);
    }
    std::vector<char> blocked(moral.vertex_count(), 0), target(moral.vertex_count(), 0);
    for (VertexId v : s) blocked[new_id[v]] = 1;
    for (VertexId v : b) target[new_id[v]] = 1;
    for (VertexId v : a) {
        std::vector<char> visited(moral.vertex_count(), 0);
        if (any_open_path(moral, new_id[v], target, blocked, visited)) return false;
    }
    return true;
}

namespace {

// Does the induced subgraph on {a, b, path...} equal the complex form
// a -> path.front() - ... - path.back() <- b exactly?
bool induced_complex(const MixedGraph& g, VertexId a, VertexId b,
                     const std::vector<VertexId>& path) {
    for (VertexId x : path) {
        if (x == a || x == b) return false;
    }
    std::vector<VertexId> all{a, b};
    all.insert(all.end(), path.begin(), path.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const VertexId x = all[i];
            const VertexId y = all[j];
            bool expect_directed_xy = x == a && y == path.front();
            bool expect_directed_yx = false;
            if (x == b && y == path.back()) expect_directed_xy = true;
            // path.front()/back() always follow a,b in `all`, so x is a or b
            // whenever a directed edge is expected; undirected expectations:
            bool expect_undirected = false;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                if ((path[k] == x && path[k + 1] == y) || (path[k] == y && path[k + 1] == x)) {
                    expect_undirected = true;
                }
            }
            if (g.has_directed(x, y) != expect_directed_xy) return false;
            if (g.has_directed(y, x) != expect_directed_yx) return false;
            if (g.has_undirected(x, y) != expect_undirected) return false;
        }
    }
    return true;
}

void all_simple_paths(const MixedGraph& g, VertexId from, VertexId to,
                      std::vector<VertexId>& path, std::vector<char>& used,
                      const std::function<void(const std::vector<VertexId>&)>& emit) {
    if (from == to) {
        emit(path);
        return;
    }
    for (VertexId next : g.undirected_neighbors(from)) {
        if (used[next]) continue;
        used[next] = 1;
        path.push_back(next);
        all_simple_paths(g, next, to, path, used, emit);
        path.pop_back();
        used[next] = 0;
    }
}

}  // namespace

std::vector<EdgePair> complex_arrows(const MixedGraph& g) {
    std::set<EdgePair> arrows;
    for (const auto& [a, v1] : g.directed_edges()) {
        for (const auto& [b, vr] : g.directed_edges()) {
            if (a == b) continue;
            bool found = false;
            std::vector<VertexId> path{v1};
            std::vector<char> used(g.vertex_count(), 0);
            used[v1] = 1;
            all_simple_paths(g, v1, vr, path, used, [&](const std::vector<VertexId>& p) {
                if (!found && induced_complex(g, a, b, p)) found = true;
            });
            if (found) {
                arrows.insert({a, v1});
                arrows.insert({b, vr});
            }
        }
    }
    return {arrows.begin(), arrows.end()};
}

Pattern pattern_of(const MixedGraph& g) {
    const auto arrows = complex_arrows(g);
    MixedGraphBuilder builder(g.vertex_count());
    for (const auto& [u, v] : arrows) builder.add_directed(u, v);
    auto keeps = [&arrows](VertexId u, VertexId v) {
        return std::binary_search(arrows.begin(), arrows.end(), EdgePair{u, v});
    };
    for (const auto& [u, v] : g.directed_edges()) {
        if (!keeps(u, v)) builder.add_undirected(u, v);
    }
    for (const auto& [u, v] : g.undirected_edges()) builder.add_undirected(u, v);
    Pattern pattern;
    pattern.graph = builder.build();
    pattern.complex_arrows = arrows;
    return pattern;
}

namespace {

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double partial_correlation(const std::vector<std::vector<double>>& columns, std::size_t u,
                           std::size_t v, std::vector<std::size_t> s) {
    if (s.empty()) return correlation(columns[u], columns[v]);
    const std::size_t w = s.back();
    s.pop_back();
    const double r_uv = partial_correlation(columns, u, v, s);
    const double r_uw = partial_correlation(columns, u, w, s);
    const double r_vw = partial_correlation(columns, v, w, s);
    return (r_uv - r_uw * r_vw) / std::sqrt((1.0 - r_uw * r_uw) * (1.0 - r_vw * r_vw));
}

}  // namespace

double fisher_z_p_value(const std::vector<std::vector<double>>& columns, std::size_t u,
                        std::size_t v, std::vector<std::size_t> s) {
    const double cond_size = static_cast<double>(s.size());
    const double r = partial_correlation(columns, u, v, std::move(s));
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    const double n = static_cast<double>(columns[u].size());
    const double statistic = std::sqrt(n - cond_size - 3.0) * std::abs(z);
    return 2.0 * (0.5 * std::erfc(statistic / std::sqrt(2.0)));
}

MixedGraph random_mixed_graph(std::size_t p, double edge_prob, std::uint64_t seed) {
    Rng rng(seed_mix(seed, 0x6d69786564ULL));
    MixedGraphBuilder builder(p);
    for (VertexId u = 0; u < p; ++u) {
        for (VertexId v = u + 1; v < p; ++v) {
            if (!rng.bernoulli(edge_prob)) continue;
            switch (rng.uniform_int(0, 2)) {
                case 0:
                    builder.add_undirected(u, v);
                    break;
                case 1:
                    builder.add_directed(u, v);
                    break;
                default:
                    builder.add_directed(v, u);
                    break;
            }
        }
    }
    return builder.build();
}

}  // namespace cglearn::brute
