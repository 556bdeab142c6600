#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "cglearn/gaussian.hpp"
#include "cglearn/graph.hpp"

namespace cglearn {

struct GenSpec {
    std::size_t p = 1;
    /// Expected number of adjacent vertices per vertex, in [0, p-1].
    double expected_degree = 0.0;
    std::uint64_t seed = 0;
};

/// Random chain graph: Bernoulli(N/(p-1)) lower-triangle adjacency,
/// symmetrized; a uniform component count k in {1..p}; the index range split
/// into k near-equal intervals as chain components (sizes differ by at most
/// one); cross-component edges keep only the earlier-to-later direction.
/// Undirected edges live inside components, directed edges run forward
/// across them, so the result is always a chain graph.
MixedGraph random_chain_graph(const GenSpec& spec);

/// Parameters of the block-recursive linear Gaussian model on a chain graph:
/// one weight per directed edge and one positive-definite precision matrix
/// per chain component whose off-diagonal support is exactly the component's
/// undirected edges.
struct GaussianParams {
    std::map<EdgePair, double> edge_weights;
    /// Indexed like chain_components(g); rows/cols follow the component's
    /// vertex set ascending.
    std::vector<Eigen::MatrixXd> component_precisions;
};

/// Magnitude ranges for the randomly drawn parameters; the defaults keep
/// weights away from zero so near-unfaithful draws stay rare.
struct ParamRanges {
    double weight_lo = 0.5, weight_hi = 1.0;        // directed edge weights
    double precision_lo = 0.1, precision_hi = 0.3;  // undirected couplings
};

/// Weights uniform on ±[weight_lo, weight_hi]; precision off-diagonals on
/// undirected edges uniform on ±[precision_lo, precision_hi] with diagonal
/// 1 + row-wise absolute sum (diagonal dominance makes every block positive
/// definite).
GaussianParams random_params(const MixedGraph& g, std::uint64_t seed,
                             const ParamRanges& ranges = {});

/// Validates sparsity support and positive definiteness; throws
/// NonPositiveDefinite (as Error) or GraphError on mismatch.
void validate_params(const MixedGraph& g, const GaussianParams& params);

/// Draws n i.i.d. rows by sampling chain components in topological order:
/// component T given its sampled parents x_pa is N(Λ⁻¹ B x_pa, Λ⁻¹) with Λ
/// the component precision and B the directed edge weights into T.
GaussianData sample_gaussian(const MixedGraph& g, const GaussianParams& params, std::size_t n,
                             std::uint64_t seed);

/// FNV-1a over the parameter bytes in deterministic order; recorded in
/// simulation manifests so runs can be matched to their inputs.
std::uint64_t params_hash(const GaussianParams& params);

}  // namespace cglearn
