#include "cglearn/synthetic.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cstring>
#include <string>

#include "cglearn/rng.hpp"

namespace cglearn {

MixedGraph random_chain_graph(const GenSpec& spec) {
    const std::size_t p = spec.p;
    if (p < 1) throw Error("random_chain_graph: need p >= 1");
    if (spec.expected_degree < 0.0 ||
        (p > 1 && spec.expected_degree > static_cast<double>(p - 1))) {
        throw Error("random_chain_graph: expected degree must lie in [0, p-1]");
    }
    Rng rng(seed_mix(spec.seed, 0x67656e67726168ULL));  // "gengrah"
    const double s = p > 1 ? spec.expected_degree / static_cast<double>(p - 1) : 0.0;

    // lower-triangle Bernoulli draw, then symmetrize
    std::vector<char> adj(p * p, 0);
    for (std::size_t i = 1; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (rng.bernoulli(s)) adj[i * p + j] = adj[j * p + i] = 1;
        }
    }

    // split [0, p) into k near-equal intervals as chain components
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, p));
    std::vector<std::size_t> component_of(p);
    const std::size_t base = p / k;
    const std::size_t remainder = p % k;
    std::size_t cursor = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t len = base + (c < remainder ? 1 : 0);
        for (std::size_t i = 0; i < len; ++i) component_of[cursor++] = c;
    }

    MixedGraphBuilder builder(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            if (!adj[i * p + j]) continue;
            if (component_of[i] == component_of[j]) {
                builder.add_undirected(static_cast<VertexId>(i), static_cast<VertexId>(j));
            } else {
                // j is in the later component; keep only the forward direction
                builder.add_directed(static_cast<VertexId>(i), static_cast<VertexId>(j));
            }
        }
    }
    return builder.build();
}

GaussianParams random_params(const MixedGraph& g, std::uint64_t seed,
                             const ParamRanges& ranges) {
    if (!(ranges.weight_lo >= 0.0 && ranges.weight_lo <= ranges.weight_hi) ||
        !(ranges.precision_lo >= 0.0 && ranges.precision_lo <= ranges.precision_hi)) {
        throw Error("random_params: magnitude ranges must satisfy 0 <= lo <= hi");
    }
    Rng rng(seed_mix(seed, 0x706172616d73ULL));  // "params"
    GaussianParams params;
    for (const auto& edge : g.directed_edges()) {
        params.edge_weights[edge] = rng.signed_uniform(ranges.weight_lo, ranges.weight_hi);
    }
    const ChainComponentPartition part = chain_components(g);
    params.component_precisions.reserve(part.components.size());
    for (const auto& component : part.components) {
        const std::size_t m = component.size();
        Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (g.has_undirected(component[i], component[j])) {
                    const double value =
                        rng.signed_uniform(ranges.precision_lo, ranges.precision_hi);
                    precision(i, j) = precision(j, i) = value;
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            precision(i, i) = 1.0 + precision.row(i).cwiseAbs().sum();
        }
        params.component_precisions.push_back(std::move(precision));
    }
    return params;
}

void validate_params(const MixedGraph& g, const GaussianParams& params) {
    for (const auto& [edge, weight] : params.edge_weights) {
        (void)weight;
        if (!g.has_directed(edge.first, edge.second)) {
            throw GraphError("params: weight on a non-edge");
        }
    }
    for (const auto& edge : g.directed_edges()) {
        if (params.edge_weights.count(edge) == 0) {
            throw GraphError("params: missing weight for a directed edge");
        }
    }
    const ChainComponentPartition part = chain_components(g);
    if (params.component_precisions.size() != part.components.size()) {
        throw GraphError("params: component count mismatch");
    }
    for (std::size_t c = 0; c < part.components.size(); ++c) {
        const auto& component = part.components[c];
        const auto& precision = params.component_precisions[c];
        const std::size_t m = component.size();
        if (precision.rows() != static_cast<Eigen::Index>(m) ||
            precision.cols() != static_cast<Eigen::Index>(m)) {
            throw GraphError("params: precision size mismatch");
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const bool edge = g.has_undirected(component[i], component[j]);
                const bool nonzero = precision(i, j) != 0.0;
                if (nonzero && !edge) throw GraphError("params: precision support off the edges");
                if (precision(i, j) != precision(j, i)) {
                    throw GraphError("params: precision not symmetric");
                }
            }
        }
        const Eigen::LLT<Eigen::MatrixXd> llt(precision);
        if (llt.info() != Eigen::Success) {
            throw Error("NonPositiveDefinite: component precision " + std::to_string(c));
        }
    }
}

GaussianData sample_gaussian(const MixedGraph& g, const GaussianParams& params, std::size_t n,
                             std::uint64_t seed) {
    if (n < 1) throw InsufficientSamples("sample_gaussian: need n >= 1");
    validate_params(g, params);
    const std::size_t p = g.vertex_count();
    const ChainComponentPartition part = chain_components(g);
    const auto topo = topological_component_order(g, part);

    // Per-component Cholesky of the precision: noise = L^{-T} z gives
    // covariance Λ^{-1}; the mean solves Λ μ = B x_pa.
    std::vector<Eigen::LLT<Eigen::MatrixXd>> chol;
    chol.reserve(params.component_precisions.size());
    for (const auto& precision : params.component_precisions) {
        chol.emplace_back(precision);
    }

    Rng rng(seed_mix(seed, 0x73616d706c65ULL));  // "sample"
    Eigen::MatrixXd samples(n, p);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(p);
    for (std::size_t draw = 0; draw < n; ++draw) {
        for (const std::size_t c : topo) {
            const auto& component = part.components[c];
            const std::size_t m = component.size();
            Eigen::VectorXd drive = Eigen::VectorXd::Zero(m);
            for (std::size_t i = 0; i < m; ++i) {
                for (VertexId parent : g.parents(component[i])) {
                    drive(i) += params.edge_weights.at({parent, component[i]}) * row(parent);
                }
            }
            const Eigen::VectorXd mean = chol[c].solve(drive);
            Eigen::VectorXd z(m);
            for (std::size_t i = 0; i < m; ++i) z(i) = rng.normal();
            const Eigen::VectorXd noise =
                chol[c].matrixU().solve(z);  // U^{-1} z, covariance Λ^{-1}
            for (std::size_t i = 0; i < m; ++i) row(component[i]) = mean(i) + noise(i);
        }
        samples.row(draw) = row.transpose();
    }
    return GaussianData(std::move(samples));
}

std::uint64_t params_hash(const GaussianParams& params) {
    std::uint64_t hash = 1469598103934665603ULL;
    auto feed = [&hash](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            hash ^= bytes[i];
            hash *= 1099511628211ULL;
        }
    };
    for (const auto& [edge, weight] : params.edge_weights) {
        feed(&edge.first, sizeof edge.first);
        feed(&edge.second, sizeof edge.second);
        feed(&weight, sizeof weight);
    }
    for (const auto& precision : params.component_precisions) {
        for (Eigen::Index i = 0; i < precision.rows(); ++i) {
            for (Eigen::Index j = 0; j < precision.cols(); ++j) {
                const double value = precision(i, j);
                feed(&value, sizeof value);
            }
        }
    }
    return hash;
}

}  // namespace cglearn
