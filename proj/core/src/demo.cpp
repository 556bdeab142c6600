#include "cglearn/demo.hpp"

#include <algorithm>

#include "cglearn/rng.hpp"
#include "cglearn/separation.hpp"
#include "cglearn/synthetic.hpp"

namespace cglearn::demo {

namespace {
constexpr VertexId A = 0, B = 1, C = 2, D = 3, E = 4;
const std::vector<std::string> kAbc{"a", "b", "c", "d", "e"};
}  // namespace

ScriptedFixture order_dependent_skeleton_fixture() {
    ScriptedFixture fixture;
    fixture.truth = MixedGraph::from_edges(
        5,
        {{A, B}, {A, C}, {B, C}, {B, D}, {B, E}, {C, D}, {C, E}, {D, E}},
        {});
    fixture.labels = kAbc;
    // Judged independencies: a⊥d|{b,c} and a⊥e|{b,c,d} (both true in the
    // DAG, no override needed), c⊥e|{a,b,d} (false, forced independent);
    // a⊥e|{b,c} holds in the DAG but is judged dependent.
    fixture.overrides = {
        {A, E, {B, C}, false},
        {C, E, {A, B, D}, true},
    };
    fixture.featured_orders = {
        VariableOrdering({D, E, A, C, B}),  // (d,e,a,c,b)
        VariableOrdering({D, C, E, A, B}),  // (d,c,e,a,b)
    };
    return fixture;
}

ScriptedFixture order_dependent_complex_fixture() {
    ScriptedFixture fixture;
    fixture.truth = MixedGraph::from_edges(5, {{B, A}, {C, A}, {B, D}, {C, E}, {D, E}}, {});
    fixture.labels = kAbc;
    // c⊥d (true) is judged dependent; c⊥d|{e} (false) is judged independent;
    // c⊥d|{b} stays at its true verdict (independent).
    fixture.overrides = {
        {C, D, {}, false},
        {C, D, {E}, true},
    };
    fixture.featured_orders = {
        VariableOrdering({D, C, B, A, E}),  // (d,c,b,a,e)
        VariableOrdering({C, D, E, A, B}),  // (c,d,e,a,b)
    };
    return fixture;
}

MixedGraph spurious_arrow_graph() {
    // A -> D, B -> C, B -> D, C - D
    return MixedGraph::from_edges(4, {{0, 3}, {1, 2}, {1, 3}}, {{2, 3}});
}

std::vector<std::string> spurious_arrow_labels() { return {"A", "B", "C", "D"}; }

ScriptedFixture random_noisy_fixture(std::size_t p, double expected_degree, std::size_t flips,
                                     std::uint64_t seed) {
    ScriptedFixture fixture;
    fixture.truth = random_chain_graph({p, expected_degree, seed_mix(seed, 0x6669787475ULL)});
    fixture.labels.clear();
    Rng rng(seed_mix(seed, 0x666c697073ULL));
    std::vector<std::pair<std::uint64_t, VertexSet>> used;
    std::size_t attempts = 0;
    while (fixture.overrides.size() < flips && attempts < flips * 50 + 100) {
        ++attempts;
        const VertexId u = static_cast<VertexId>(rng.uniform_int(0, p - 1));
        VertexId v = static_cast<VertexId>(rng.uniform_int(0, p - 2));
        if (v >= u) ++v;
        const std::size_t size = static_cast<std::size_t>(rng.uniform_int(0, 2));
        VertexSet s;
        while (s.size() < size) {
            const VertexId x = static_cast<VertexId>(rng.uniform_int(0, p - 1));
            if (x == u || x == v) continue;
            if (std::find(s.begin(), s.end(), x) != s.end()) continue;
            s.push_back(x);
        }
        normalize_set(s);
        const auto key = std::make_pair(detail::unordered_key(std::min(u, v), std::max(u, v)), s);
        if (std::find(used.begin(), used.end(), key) != used.end()) continue;
        used.push_back(key);
        const bool truth_verdict = c_separated(fixture.truth, u, v, s);
        fixture.overrides.push_back({u, v, s, !truth_verdict});
    }
    fixture.featured_orders = {VariableOrdering::natural(p)};
    return fixture;
}

}  // namespace cglearn::demo
