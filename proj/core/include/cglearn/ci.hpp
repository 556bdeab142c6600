#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cglearn/graph.hpp"

namespace cglearn {

struct CIResult {
    bool independent = false;
    /// Present only for data-driven backends.
    std::optional<double> p_value;
};

/// Conditional-independence query contract.
///
/// Queries are symmetric in (u, v) (canonicalized before dispatch),
/// deterministic for a fixed backend, and counted: test_count() increments
/// exactly once per query and may be read concurrently.
class CIOracle {
public:
    virtual ~CIOracle() = default;

    CIResult query(VertexId u, VertexId v, const VertexSet& s) const;

    std::uint64_t test_count() const { return count_.load(std::memory_order_relaxed); }
    std::size_t variable_count() const { return p_; }

protected:
    explicit CIOracle(std::size_t variable_count) : p_(variable_count) {}

private:
    virtual CIResult evaluate(VertexId u, VertexId v, const VertexSet& s) const = 0;

    std::size_t p_;
    mutable std::atomic<std::uint64_t> count_{0};
};

/// Perfect-information oracle: answers by c-separation in a known chain graph.
class ExactOracle final : public CIOracle {
public:
    explicit ExactOracle(MixedGraph graph);

    const MixedGraph& graph() const { return graph_; }

private:
    CIResult evaluate(VertexId u, VertexId v, const VertexSet& s) const override;

    MixedGraph graph_;
};

/// Exact oracle with injected verdicts for selected queries; the fixture
/// mechanism for reproducing unfaithful test decisions.
class ScriptedOracle final : public CIOracle {
public:
    struct Override {
        VertexId u, v;
        VertexSet s;
        bool independent;
    };

    ScriptedOracle(MixedGraph base, std::vector<Override> overrides);

    const MixedGraph& base() const { return base_; }
    std::size_t override_count() const { return overrides_.size(); }

private:
    CIResult evaluate(VertexId u, VertexId v, const VertexSet& s) const override;

    using Key = std::pair<std::uint64_t, VertexSet>;

    MixedGraph base_;
    std::map<Key, bool> overrides_;
};

}  // namespace cglearn
