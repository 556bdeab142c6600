#include "cglearn/metrics.hpp"

namespace cglearn {

SkeletonScore score_skeleton(const MixedGraph& learned, const MixedGraph& truth) {
    if (learned.vertex_count() != truth.vertex_count()) {
        throw VertexMismatch("score_skeleton: vertex counts differ");
    }
    const std::size_t p = truth.vertex_count();
    SkeletonScore score;
    for (VertexId u = 0; u < p; ++u) {
        for (VertexId v = u + 1; v < p; ++v) {
            const bool in_truth = truth.adjacent(u, v);
            const bool in_learned = learned.adjacent(u, v);
            if (in_truth && in_learned) ++score.counts.tp;
            if (!in_truth && in_learned) ++score.counts.fp;
            if (!in_truth && !in_learned) ++score.counts.tn;
            if (in_truth && !in_learned) ++score.counts.fn;
        }
    }
    const auto& c = score.counts;
    const std::size_t positives = c.tp + c.fn;
    const std::size_t negatives = c.fp + c.tn;
    score.tpr = positives == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(positives);
    score.fpr = negatives == 0 ? 0.0 : static_cast<double>(c.fp) / static_cast<double>(negatives);
    if (c.tp + c.fp == 0) {
        score.tdr = positives == 0 ? 1.0 : 0.0;
    } else {
        score.tdr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    }
    const std::size_t pairs = positives + negatives;
    score.acc = pairs == 0 ? 1.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(pairs);
    return score;
}

std::size_t shd(const MixedGraph& learned, const MixedGraph& truth) {
    if (learned.vertex_count() != truth.vertex_count()) {
        throw VertexMismatch("shd: vertex counts differ");
    }
    const std::size_t p = truth.vertex_count();
    std::size_t cost = 0;
    for (VertexId u = 0; u < p; ++u) {
        for (VertexId v = u + 1; v < p; ++v) {
            const bool in_truth = truth.adjacent(u, v);
            const bool in_learned = learned.adjacent(u, v);
            if (in_truth != in_learned) {
                ++cost;  // insert or delete an edge
                continue;
            }
            if (!in_truth) continue;
            // same adjacency: charge one operation when the marks differ
            const bool same = (learned.has_undirected(u, v) && truth.has_undirected(u, v)) ||
                              (learned.has_directed(u, v) && truth.has_directed(u, v)) ||
                              (learned.has_directed(v, u) && truth.has_directed(v, u));
            if (!same) ++cost;
        }
    }
    return cost;
}

std::size_t shd(const Pattern& learned, const Pattern& truth) {
    return shd(learned.graph, truth.graph);
}

}  // namespace cglearn
