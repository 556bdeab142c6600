#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cglearn/demo.hpp"
#include "cglearn/metrics.hpp"
#include "cglearn/rng.hpp"
#include "cglearn/synthetic.hpp"

using namespace cglearn;

namespace {
constexpr VertexId A = 0, B = 1, C = 2, D = 3, E = 4;

MixedGraph demo_true_skeleton() {
    return skeleton(demo::order_dependent_skeleton_fixture().truth);
}

MixedGraph demo_learned_skeleton() {
    return MixedGraph::from_edges(
        5, {}, {{A, B}, {A, C}, {A, E}, {B, C}, {B, D}, {B, E}, {C, D}, {D, E}});
}
}  // namespace

TEST_CASE("perfect recovery scores perfectly") {
    const MixedGraph truth = random_chain_graph({8, 2.5, 3});
    const SkeletonScore score = score_skeleton(skeleton(truth), truth);
    CHECK(score.tpr == 1.0);
    CHECK(score.fpr == 0.0);
    CHECK(score.tdr == 1.0);
    CHECK(score.acc == 1.0);
}

TEST_CASE("edgeless learned graph against a nonempty truth") {
    const MixedGraph truth = MixedGraph::from_edges(5, {{0, 1}, {2, 3}}, {});
    const SkeletonScore score = score_skeleton(MixedGraph(5), truth);
    CHECK(score.tpr == 0.0);
    CHECK(score.fpr == 0.0);
    CHECK(score.tdr == 0.0);  // nonempty truth, nothing discovered
    CHECK(score.counts.tn == 8);
    CHECK(score.acc == doctest::Approx(8.0 / 10.0));
}

TEST_CASE("edgeless truth") {
    const SkeletonScore score = score_skeleton(MixedGraph(4), MixedGraph(4));
    CHECK(score.tpr == 1.0);  // nothing to miss
    CHECK(score.fpr == 0.0);
    CHECK(score.tdr == 1.0);
    CHECK(score.acc == 1.0);
}

TEST_CASE("the extra-edge/missing-edge example from the order-dependence study") {
    // truth: the 8-edge skeleton; learned: misses c-e, adds a-e
    const SkeletonScore score = score_skeleton(demo_learned_skeleton(), demo_true_skeleton());
    CHECK(score.counts.tp == 7);
    CHECK(score.counts.fn == 1);
    CHECK(score.counts.fp == 1);
    CHECK(score.counts.tn == 1);
    CHECK(score.tpr == doctest::Approx(7.0 / 8.0));
    CHECK(score.fpr == doctest::Approx(1.0 / 2.0));
    CHECK(score.tdr == doctest::Approx(7.0 / 8.0));
    // ACC = (TP + TN) / C(5,2) = 8/10
    CHECK(score.acc == doctest::Approx(8.0 / 10.0));
}

TEST_CASE("accuracy identity holds on random pairs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const MixedGraph truth = random_chain_graph({9, 2.5, seed});
        const MixedGraph learned = random_chain_graph({9, 2.5, seed + 1000});
        const SkeletonScore score = score_skeleton(learned, truth);
        const auto& c = score.counts;
        CHECK(c.tp + c.fp + c.tn + c.fn == 36);  // C(9,2)
        CHECK(score.acc == doctest::Approx(static_cast<double>(c.tp + c.tn) / 36.0));
    }
}

TEST_CASE("vertex mismatch is rejected") {
    CHECK_THROWS_AS(score_skeleton(MixedGraph(3), MixedGraph(4)), VertexMismatch);
    CHECK_THROWS_AS(shd(MixedGraph(3), MixedGraph(4)), VertexMismatch);
}

TEST_CASE("shd examples") {
    SUBCASE("identical patterns cost nothing") {
        const Pattern p = pattern_of(random_chain_graph({7, 2.0, 5}));
        CHECK(shd(p, p) == 0);
    }
    SUBCASE("orientation change costs one") {
        // the pre/post-extraction pair from the spurious-arrow walkthrough
        const MixedGraph before =
            MixedGraph::from_edges(4, {{0, 3}, {1, 2}, {1, 3}}, {{2, 3}});
        const MixedGraph after =
            MixedGraph::from_edges(4, {{0, 3}, {1, 3}}, {{1, 2}, {2, 3}});
        CHECK(shd(before, after) == 1);
        CHECK(shd(after, before) == 1);
    }
    SUBCASE("all-delete distance equals the edge count") {
        const Pattern truth = pattern_of(demo::order_dependent_skeleton_fixture().truth);
        CHECK(shd(MixedGraph(5), truth.graph) == truth.graph.edge_count());
    }
    SUBCASE("opposite arrowheads cost one") {
        const MixedGraph one = MixedGraph::from_edges(2, {{0, 1}}, {});
        const MixedGraph other = MixedGraph::from_edges(2, {{1, 0}}, {});
        CHECK(shd(one, other) == 1);
    }
}

TEST_CASE("shd is a metric on graphs over a fixed vertex set") {
    std::vector<MixedGraph> graphs;
    for (std::uint64_t seed = 0; seed < 9; ++seed) {
        graphs.push_back(pattern_of(random_chain_graph({6, 2.5, seed})).graph);
    }
    for (const auto& x : graphs) {
        for (const auto& y : graphs) {
            const std::size_t dxy = shd(x, y);
            CHECK((dxy == 0) == (x == y));
            CHECK(dxy == shd(y, x));
            for (const auto& z : graphs) {
                CHECK(dxy <= shd(x, z) + shd(z, y));
            }
        }
    }
}
