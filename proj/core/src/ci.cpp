#include "cglearn/ci.hpp"

#include <algorithm>
#include <string>

#include "cglearn/separation.hpp"

namespace cglearn {

CIResult CIOracle::query(VertexId u, VertexId v, const VertexSet& s) const {
    if (u >= p_ || v >= p_) throw InvalidQuery("ci query: vertex out of range");
    if (u == v) throw InvalidQuery("ci query: u and v must differ");
    VertexSet cond = s;
    normalize_set(cond);
    for (VertexId x : cond) {
        if (x >= p_) throw InvalidQuery("ci query: conditioning vertex out of range");
        if (x == u || x == v) throw InvalidQuery("ci query: S must exclude u and v");
    }
    count_.fetch_add(1, std::memory_order_relaxed);
    if (u > v) std::swap(u, v);
    return evaluate(u, v, cond);
}

ExactOracle::ExactOracle(MixedGraph graph) : CIOracle(graph.vertex_count()), graph_(std::move(graph)) {
    if (!is_chain_graph(graph_)) throw NotAChainGraph("ExactOracle: base graph is not a chain graph");
}

CIResult ExactOracle::evaluate(VertexId u, VertexId v, const VertexSet& s) const {
    return CIResult{c_separated(graph_, u, v, s), std::nullopt};
}

ScriptedOracle::ScriptedOracle(MixedGraph base, std::vector<Override> overrides)
    : CIOracle(base.vertex_count()), base_(std::move(base)) {
    if (!is_chain_graph(base_)) throw NotAChainGraph("ScriptedOracle: base graph is not a chain graph");
    for (auto& o : overrides) {
        if (o.u >= base_.vertex_count() || o.v >= base_.vertex_count() || o.u == o.v) {
            throw InvalidQuery("ScriptedOracle: bad override pair");
        }
        normalize_set(o.s);
        overrides_[{detail::unordered_key(o.u, o.v), o.s}] = o.independent;
    }
}

CIResult ScriptedOracle::evaluate(VertexId u, VertexId v, const VertexSet& s) const {
    const auto hit = overrides_.find({detail::unordered_key(u, v), s});
    if (hit != overrides_.end()) return CIResult{hit->second, std::nullopt};
    return CIResult{c_separated(base_, u, v, s), std::nullopt};
}

}  // namespace cglearn
