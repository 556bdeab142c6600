#pragma once

#include <vector>

#include "cglearn/skeleton.hpp"

namespace cglearn {

/// Markov-equivalence-class representative: the skeleton with exactly the
/// confirmed complex arrows directed. CPC/MPC additionally mark undirected
/// edges whose orientation evidence was contradictory.
struct Pattern {
    MixedGraph graph;
    /// Directed edges of `graph`, i.e. the labeled complex arrows, sorted.
    std::vector<EdgePair> complex_arrows;
    /// Ambiguity marks (u < v, sorted); subset of the undirected edges.
    std::vector<EdgePair> ambiguous_edges;

    bool operator==(const Pattern& other) const {
        return graph == other.graph && complex_arrows == other.complex_arrows &&
               ambiguous_edges == other.ambiguous_edges;
    }
};

/// Orientation phase of the plain pipeline: for every nonadjacent ordered
/// pair (u, v) and every still-undirected edge u - w, orient u -> w when the
/// oracle reports u, v dependent given S_uv ∪ {w}. Pairs are swept in
/// order-position lexicographic order, w ascending by position; removals
/// mutate the working graph immediately, which is what makes this phase
/// order dependent under imperfect oracles.
MixedGraph recover_complex_arrows(const MixedGraph& skeleton_graph, const SeparationSets& sepsets,
                                  const CIOracle& oracle, const VariableOrdering& order);

/// The arrows of g participating in some candidate complex pair: arrows
/// u1 -> w1, u2 -> w2 with distinct, nonadjacent tails joined by an
/// undirected path from w1 to w2 (trivial when w1 = w2) whose vertices other
/// than w1 avoid ad(u1) and whose vertices other than w2 avoid ad(u2).
std::vector<EdgePair> labeled_complex_arrows(const MixedGraph& g);

/// Undirects every arrow of h_star that labeled_complex_arrows does not keep.
/// Idempotent.
Pattern extract_pattern(const MixedGraph& h_star);

/// The pattern of a chain graph, computed directly from the definition
/// (skeleton plus the arrows of its minimal complexes). Scoring target for
/// the benchmark harness. Throws NotAChainGraph.
Pattern pattern_of(const MixedGraph& g);

struct AmbiguityPolicy {
    enum class Kind { conservative, majority };

    Kind kind = Kind::conservative;
    double alpha_pct = 0.0;
    double beta_pct = 100.0;

    static AmbiguityPolicy conservative() { return {}; }
    static AmbiguityPolicy majority(double alpha_pct, double beta_pct);
};

/// Conservative / majority-rule orientation with ambiguity marking.
///
/// For each nonadjacent pair and each role (u, v): enumerate the separating
/// family F = all S ⊆ ad_H(u) \ {v} with |S| <= the skeleton's max level
/// reached and u ⊥ v | S. For every undirected u - w, let f be the fraction
/// of S in F with u, v dependent given S ∪ {w} (exact rational):
///   conservative:  orient u -> w iff f = 1; keep iff f = 0; else ambiguous.
///   majority:      orient iff f >= beta%; keep iff f <= alpha%; else ambiguous
///                  (boundaries inclusive).
/// A role with an empty family contributes no decisions; a pair with both
/// roles empty raises EmptyFamily, or is skipped (contributing no decisions)
/// when `skip_unsupported_pairs` is set — scripted verdicts can remove an
/// edge with a conditioning set the final adjacencies no longer contain, and
/// the order-independence harness runs such fixtures to completion.
/// Decisions are computed against the fixed skeleton and committed
/// simultaneously (an edge any role marks ambiguous, or that receives both
/// orientations, stays undirected and marked), so the result does not depend
/// on order(V). Unambiguous orientations then pass through extract_pattern.
Pattern label_ambiguity(const SkeletonResult& skel, const CIOracle& oracle,
                        const AmbiguityPolicy& policy, bool skip_unsupported_pairs = false);

enum class OrientationRule { plain, conservative, majority };

struct LearnOptions {
    SkeletonMode mode = SkeletonMode::stable;
    OrientationRule rule = OrientationRule::plain;
    double alpha_pct = 0.0;   // majority rule only
    double beta_pct = 100.0;  // majority rule only
    bool capture_trace = false;
    unsigned threads = 1;
    /// CPC/MPC: skip nonadjacent pairs with no separating set instead of
    /// raising EmptyFamily.
    bool skip_unsupported_pairs = false;
};

struct LearnResult {
    Pattern pattern;
    SkeletonResult skeleton;
};

/// End-to-end pattern recovery: skeleton phase, then plain complex recovery
/// or CPC/MPC ambiguity labeling, then pattern extraction.
LearnResult learn_pattern(const CIOracle& oracle, const VariableOrdering& order,
                          const LearnOptions& options = {});

}  // namespace cglearn
