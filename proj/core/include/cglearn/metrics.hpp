#pragma once

#include "cglearn/complexes.hpp"
#include "cglearn/graph.hpp"

namespace cglearn {

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Skeleton error measures over all C(p,2) vertex pairs.
struct SkeletonScore {
    ConfusionCounts counts;
    double tpr = 0.0;  // TP / (TP + FN)
    double fpr = 0.0;  // FP / (FP + TN)
    double tdr = 0.0;  // TP / (TP + FP); see below for the empty case
    double acc = 0.0;  // (TP + TN) / C(p, 2)
};

/// Compares adjacencies of `learned` against skeleton(truth).
///
/// Degenerate denominators: with no true edges TPR is 1 (nothing to miss),
/// with no true gaps FPR is 0. When the learned graph has no edges TDR is 1
/// on an edgeless truth and 0 otherwise. Throws VertexMismatch.
SkeletonScore score_skeleton(const MixedGraph& learned, const MixedGraph& truth);

/// Structural Hamming distance between two mixed graphs over the same vertex
/// set: per pair, an edge-vs-gap mismatch costs 1, and a shared edge with a
/// differing mark (undirected vs directed, or opposite arrowheads) costs 1.
/// Throws VertexMismatch.
std::size_t shd(const MixedGraph& learned, const MixedGraph& truth);
std::size_t shd(const Pattern& learned, const Pattern& truth);

}  // namespace cglearn
