#pragma once

#include <string>
#include <vector>

#include "cglearn/ci.hpp"
#include "cglearn/skeleton.hpp"

namespace cglearn::demo {

/// A scripted-oracle fixture: a ground-truth graph plus injected verdicts
/// emulating test errors, and the variable orderings that showcase it.
struct ScriptedFixture {
    MixedGraph truth;
    std::vector<std::string> labels;
    std::vector<ScriptedOracle::Override> overrides;
    std::vector<VariableOrdering> featured_orders;

    ScriptedOracle make_oracle() const { return ScriptedOracle(truth, overrides); }
};

/// Five-variable DAG whose scripted verdicts make the recovered skeleton
/// depend on the variable ordering (featured orders 0 and 1 yield different
/// skeletons in original mode; stable mode yields the same one for both).
ScriptedFixture order_dependent_skeleton_fixture();

/// Five-variable DAG whose scripted verdicts make the recorded separating
/// set for one pair ({c,d}: {b} vs {e}) and hence the recovered complex
/// arrows depend on the variable ordering.
ScriptedFixture order_dependent_complex_fixture();

/// Four-vertex chain graph on which plain complex recovery orients one
/// spurious arrow that pattern extraction must undo.
MixedGraph spurious_arrow_graph();
std::vector<std::string> spurious_arrow_labels();

/// Random chain graph plus `flips` random scripted verdict inversions on
/// conditioning sets of size <= 2. Deterministic in seed.
ScriptedFixture random_noisy_fixture(std::size_t p, double expected_degree, std::size_t flips,
                                     std::uint64_t seed);

}  // namespace cglearn::demo
