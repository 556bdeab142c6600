// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values come from the scripted fixtures and from
// independent brute-force oracles (tests/support/brute.*).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "cglearn/demo.hpp"
#include "cglearn/experiment.hpp"
#include "cglearn/graph_io.hpp"
#include "cglearn/rng.hpp"
#include "cglearn/separation.hpp"
#include "cglearn/synthetic.hpp"
#include "support/brute.hpp"

using namespace cglearn;

namespace {

constexpr VertexId A = 0, B = 1, C = 2, D = 3, E = 4;

struct Checker {
    bool ok = true;
    std::ostringstream log;

    void require(bool condition, const std::string& message) {
        if (!condition) {
            ok = false;
            log << "    FAILED: " << message << '\n';
        }
    }
};

std::vector<VariableOrdering> all_orderings(std::size_t p) {
    std::vector<VertexId> seq(p);
    for (std::size_t i = 0; i < p; ++i) seq[i] = static_cast<VertexId>(i);
    std::vector<VariableOrdering> all;
    do {
        all.emplace_back(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
    return all;
}

std::vector<LearnOptions> acceptance_variants() {
    return {
        {SkeletonMode::original, OrientationRule::plain},
        {SkeletonMode::stable, OrientationRule::plain},
        {SkeletonMode::stable, OrientationRule::conservative},
        {SkeletonMode::stable, OrientationRule::majority, 30.0, 60.0},
    };
}

std::vector<VariantSpec> all_variant_specs() {
    return {
        {SkeletonMode::original, OrientationRule::plain},
        {SkeletonMode::stable, OrientationRule::plain},
        {SkeletonMode::stable, OrientationRule::conservative},
        {SkeletonMode::stable, OrientationRule::majority, 30.0, 60.0},
    };
}

std::vector<demo::ScriptedFixture> noisy_fixtures(std::size_t count, std::uint64_t seed_base) {
    std::vector<demo::ScriptedFixture> fixtures;
    for (std::size_t i = 0; i < count; ++i) {
        fixtures.push_back(demo::random_noisy_fixture(6, 2.0, 3, seed_base + i));
    }
    return fixtures;
}

LearnOptions cpc_options() {
    LearnOptions options{SkeletonMode::stable, OrientationRule::conservative};
    options.skip_unsupported_pairs = true;
    return options;
}

LearnOptions mpc_options(double alpha_pct, double beta_pct) {
    LearnOptions options{SkeletonMode::stable, OrientationRule::majority, alpha_pct, beta_pct};
    options.skip_unsupported_pairs = true;
    return options;
}

// ---------------------------------------------------------------------------

void criterion_1_oracle_exactness(Checker& chk) {
    std::size_t runs = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t p = 4 + seed % 7;  // 4..10
        const double degree = std::min<double>(1.0 + (seed % 5) * 0.5, p - 1.0);  // <= 3
        const MixedGraph truth = random_chain_graph({p, degree, seed_mix(9000, seed)});
        const Pattern expected = brute::pattern_of(truth);
        const ExactOracle oracle(truth);
        const auto order = VariableOrdering::natural(p);
        for (const auto& options : acceptance_variants()) {
            const LearnResult result = learn_pattern(oracle, order, options);
            ++runs;
            chk.require(shd(result.pattern, expected) == 0,
                        "SHD != 0 (seed " + std::to_string(seed) + ", variant " +
                            std::to_string(static_cast<int>(options.rule)) + ")");
            chk.require(result.pattern.ambiguous_edges.empty(),
                        "ambiguous edges with the exact oracle (seed " + std::to_string(seed) +
                            ")");
        }
    }
    chk.log << "    " << runs << " variant runs over 200 random chain graphs\n";
}

void criterion_2_fixtures(Checker& chk) {
    // --- skeleton fixture: trace tables and skeletons -----------------------
    const auto fixture1 = demo::order_dependent_skeleton_fixture();
    const ScriptedOracle oracle1 = fixture1.make_oracle();
    const VariableOrdering order1({D, E, A, C, B});
    const VariableOrdering order2({D, C, E, A, B});
    const MixedGraph skeleton_true_minus_ce = MixedGraph::from_edges(
        5, {}, {{A, B}, {A, C}, {B, C}, {B, D}, {B, E}, {C, D}, {D, E}});
    const MixedGraph skeleton_with_extra_ae = MixedGraph::from_edges(
        5, {}, {{A, B}, {A, C}, {A, E}, {B, C}, {B, D}, {B, E}, {C, D}, {D, E}});

    struct ExpectedRow {
        VertexId u, v;
        VertexSet adjacency;
        VertexSet judged_sepset;
        bool subset;  // Is S_uv ⊆ ad_H(u) \ {v}?
        bool removed;
    };
    const auto check_table = [&](const VariableOrdering& order,
                                 const std::vector<ExpectedRow>& table, const char* name) {
        SkeletonOptions options;
        options.mode = SkeletonMode::original;
        options.capture_trace = true;
        const SkeletonResult result = learn_skeleton(oracle1, order, options);
        std::vector<TraceRow> rows;
        for (const auto& row : result.trace) {
            if (row.level != 3) continue;
            const auto key = detail::unordered_key(row.u, row.v);
            if (key == detail::unordered_key(A, E) || key == detail::unordered_key(C, E)) {
                rows.push_back(row);
            }
        }
        chk.require(rows.size() == table.size(),
                    std::string(name) + ": row count " + std::to_string(rows.size()));
        for (std::size_t i = 0; i < std::min(rows.size(), table.size()); ++i) {
            const auto& got = rows[i];
            const auto& want = table[i];
            const std::string tag = std::string(name) + " row " + std::to_string(i + 1);
            chk.require(got.u == want.u && got.v == want.v, tag + ": pair");
            chk.require(got.adjacency_u == want.adjacency, tag + ": ad_H(u)");
            VertexSet base;
            for (VertexId x : got.adjacency_u) {
                if (x != want.v) base.push_back(x);
            }
            const bool subset = std::includes(base.begin(), base.end(),
                                              want.judged_sepset.begin(),
                                              want.judged_sepset.end());
            chk.require(subset == want.subset, tag + ": subset column");
            chk.require(got.removed == want.removed, tag + ": removed column");
            if (want.removed) {
                chk.require(got.sepset == want.judged_sepset, tag + ": recorded S_uv");
            }
        }
        return result.graph;
    };

    const MixedGraph skel1 = check_table(
        order1,
        {{E, A, {A, B, C, D}, {B, C, D}, true, true},
         {E, C, {B, C, D}, {A, B, D}, false, false},
         {C, E, {A, B, D, E}, {A, B, D}, true, true}},
        "order-1 trace");
    chk.require(skel1 == skeleton_true_minus_ce, "order 1 skeleton mismatch");

    const MixedGraph skel2 = check_table(
        order2,
        {{C, E, {A, B, D, E}, {A, B, D}, true, true},
         {E, A, {A, B, D}, {B, C, D}, false, false},
         {A, E, {B, C, E}, {B, C, D}, false, false}},
        "order-2 trace");
    chk.require(skel2 == skeleton_with_extra_ae, "order 2 skeleton mismatch");

    for (const auto* order : {&order1, &order2}) {
        const SkeletonResult stable = learn_skeleton(oracle1, *order, {SkeletonMode::stable});
        chk.require(stable.graph == skeleton_true_minus_ce, "stable skeleton mismatch");
    }

    // --- complex fixture: separating sets and orientations ------------------
    const auto fixture2 = demo::order_dependent_complex_fixture();
    const ScriptedOracle oracle2 = fixture2.make_oracle();
    const VariableOrdering corder1({D, C, B, A, E});
    const VariableOrdering corder3({C, D, E, A, B});

    const SkeletonResult skel_o1 = learn_skeleton(oracle2, corder1, {SkeletonMode::original});
    chk.require(skel_o1.sepsets.get(C, D) == VertexSet{B}, "S_cd with order 1 is not {b}");
    const MixedGraph h1 = recover_complex_arrows(skel_o1.graph, skel_o1.sepsets, oracle2, corder1);
    chk.require(h1.directed_edges() == std::vector<EdgePair>{{B, A}, {C, A}, {C, E}, {D, E}},
                "order 1 arrows are not the featured set");
    chk.require(h1.undirected_edges() == std::vector<EdgePair>{{B, D}},
                "order 1 leaves exactly b-d undirected");

    const SkeletonResult skel_o3 = learn_skeleton(oracle2, corder3, {SkeletonMode::original});
    chk.require(skel_o3.sepsets.get(C, D) == VertexSet{E}, "S_cd with order 3 is not {e}");
    const MixedGraph h3 = recover_complex_arrows(skel_o3.graph, skel_o3.sepsets, oracle2, corder3);
    chk.require(
        h3.directed_edges() == std::vector<EdgePair>{{B, A}, {C, A}, {C, E}, {D, B}, {D, E}},
        "order 3 arrows are not the derived set");
    chk.require(!(h1.directed_edges() == h3.directed_edges()),
                "orientations do not depend on the order");

    // --- spurious-arrow pipeline ---------------------------------------------
    const MixedGraph spurious = demo::spurious_arrow_graph();
    const ExactOracle oracle4(spurious);
    const auto order4 = VariableOrdering::natural(4);
    const SkeletonResult skel4 = learn_skeleton(oracle4, order4, {SkeletonMode::original});
    chk.require(skel4.graph == skeleton(spurious), "spurious-arrow graph: skeleton");
    const MixedGraph h4 = recover_complex_arrows(skel4.graph, skel4.sepsets, oracle4, order4);
    chk.require(h4.directed_edges() == std::vector<EdgePair>{{0, 3}, {1, 2}, {1, 3}} &&
                    h4.undirected_edges() == std::vector<EdgePair>{{2, 3}},
                "spurious-arrow graph: pre-extraction orientation");
    const Pattern p4 = extract_pattern(h4);
    chk.require(p4.graph.directed_edges() == std::vector<EdgePair>{{0, 3}, {1, 3}} &&
                    p4.graph.undirected_edges() == std::vector<EdgePair>{{1, 2}, {2, 3}},
                "spurious-arrow graph: extracted pattern");
}

void criterion_3_order_independence(Checker& chk) {
    std::size_t compared = 0;
    const auto run_all_orders = [&](const demo::ScriptedFixture& fixture, const char* name) {
        const ScriptedOracle oracle = fixture.make_oracle();
        const std::size_t p = fixture.truth.vertex_count();
        bool first = true;
        MixedGraph skeleton_ref(0);
        Pattern cpc_ref, mpc_ref;
        for (const auto& order : all_orderings(p)) {
            const LearnResult cpc = learn_pattern(oracle, order, cpc_options());
            const LearnResult mpc = learn_pattern(oracle, order, mpc_options(30.0, 60.0));
            ++compared;
            if (first) {
                skeleton_ref = cpc.skeleton.graph;
                cpc_ref = cpc.pattern;
                mpc_ref = mpc.pattern;
                first = false;
                continue;
            }
            if (!(cpc.skeleton.graph == skeleton_ref)) {
                chk.require(false, std::string(name) + ": stable skeleton depends on the order");
                return;
            }
            if (!(cpc.pattern == cpc_ref) || !(mpc.pattern == mpc_ref)) {
                chk.require(false, std::string(name) + ": stable CPC/MPC depends on the order");
                return;
            }
        }
    };

    run_all_orders(demo::order_dependent_skeleton_fixture(), "skeleton fixture");
    run_all_orders(demo::order_dependent_complex_fixture(), "complex fixture");
    const auto noisy = noisy_fixtures(20, 31000);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        run_all_orders(noisy[i], ("noisy fixture " + std::to_string(i)).c_str());
        if (!chk.ok) break;
    }
    chk.log << "    " << compared << " ordering runs compared (2 fixtures x 120 + 20 x 720)\n";
}

void criterion_4_test_count_bound(Checker& chk) {
    std::size_t runs = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::size_t p = 10 + (seed % 5) * 5;  // 10..30
        const MixedGraph truth = random_chain_graph({p, 3.0, seed_mix(7100, seed)});
        const ExactOracle oracle(truth);
        const std::size_t n = truth.vertex_count();
        const std::size_t k = truth.max_degree();
        long double bound = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            long double binom = 1;
            for (std::size_t j = 0; j < i; ++j) {
                binom *= static_cast<long double>(n - 2 - j) / static_cast<long double>(j + 1);
            }
            bound += binom;
        }
        bound *= static_cast<long double>(n) * static_cast<long double>(n - 1);
        for (const auto mode : {SkeletonMode::original, SkeletonMode::stable}) {
            const SkeletonResult result =
                learn_skeleton(oracle, VariableOrdering::natural(p), {mode});
            ++runs;
            chk.require(static_cast<long double>(result.ci_queries) <= bound,
                        "test count " + std::to_string(result.ci_queries) +
                            " exceeds the bound (seed " + std::to_string(seed) + ")");
        }
    }
    chk.log << "    " << runs << " oracle-backed skeleton runs, p in {10,15,20,25,30}\n";
}

void criterion_5_minimal_separator(Checker& chk) {
    std::size_t pairs = 0;
    std::size_t cross_checked = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t p = 4 + seed % 7;  // 4..10
        const MixedGraph g = random_chain_graph({p, 2.5, seed_mix(5200, seed)});
        for (VertexId a = 0; a < p; ++a) {
            for (VertexId b = a + 1; b < p; ++b) {
                if (g.adjacent(a, b)) continue;
                ++pairs;
                const VertexSet z = minimal_separator(g, a, b);
                if (!c_separated(g, a, b, z)) {
                    chk.require(false, "separator unsound (seed " + std::to_string(seed) + ")");
                    continue;
                }
                for (VertexId drop : z) {
                    VertexSet smaller;
                    for (VertexId x : z) {
                        if (x != drop) smaller.push_back(x);
                    }
                    chk.require(!c_separated(g, a, b, smaller),
                                "separator not minimal (seed " + std::to_string(seed) + ")");
                }
                if (seed % 10 == 0) {
                    ++cross_checked;
                    chk.require(brute::c_separated(g, {a}, {b}, z),
                                "path-enumeration oracle disagrees (seed " +
                                    std::to_string(seed) + ")");
                }
            }
        }
    }
    chk.log << "    " << pairs << " nonadjacent pairs over 100 graphs, " << cross_checked
            << " cross-checked against exhaustive path enumeration\n";
}

void criterion_6_statistical_trend(Checker& chk) {
    ExperimentConfig config;
    config.vertex_counts = {50};
    config.sample_sizes = {2000};
    config.expected_degrees = {3.0};
    config.alphas = {0.005};
    config.variants = {
        {SkeletonMode::original, OrientationRule::plain},
        {SkeletonMode::stable, OrientationRule::plain},
    };
    config.repetitions = 30;
    config.seed = 4242;
    config.threads = 4;
    const auto records = run_experiment(config);

    double tdr_original = 0, tdr_stable = 0, fpr_original = 0, fpr_stable = 0;
    double acc_original = 0, acc_stable = 0;
    std::size_t count_original = 0, count_stable = 0;
    for (const auto& record : records) {
        chk.require(record.error.empty(), "run failed: " + record.error);
        if (!record.error.empty()) continue;
        if (record.variant.mode == SkeletonMode::original) {
            tdr_original += record.skeleton_score.tdr;
            fpr_original += record.skeleton_score.fpr;
            acc_original += record.skeleton_score.acc;
            ++count_original;
        } else {
            tdr_stable += record.skeleton_score.tdr;
            fpr_stable += record.skeleton_score.fpr;
            acc_stable += record.skeleton_score.acc;
            ++count_stable;
        }
    }
    chk.require(count_original == 30 && count_stable == 30, "expected 30 repetitions per variant");
    if (count_original == 0 || count_stable == 0) return;
    tdr_original /= count_original;
    fpr_original /= count_original;
    acc_original /= count_original;
    tdr_stable /= count_stable;
    fpr_stable /= count_stable;
    acc_stable /= count_stable;

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "    mean TDR %.4f (stable) vs %.4f; mean FPR %.5f vs %.5f; mean ACC %.4f vs %.4f\n",
                  tdr_stable, tdr_original, fpr_stable, fpr_original, acc_stable, acc_original);
    chk.log << detail;
    chk.require(tdr_stable >= tdr_original - 0.02, "stable TDR fell more than 0.02 below original");
    chk.require(fpr_stable <= fpr_original + 0.005, "stable FPR exceeds original by more than 0.005");
    chk.require(acc_original >= 0.9, "original mean ACC below 0.9");
    chk.require(acc_stable >= 0.9, "stable mean ACC below 0.9");
}

void criterion_7_parallel_determinism(Checker& chk) {
    ExperimentConfig config;
    config.vertex_counts = {12};
    config.sample_sizes = {300};
    config.expected_degrees = {2.0};
    config.alphas = {0.05, 0.01};
    config.variants = all_variant_specs();
    config.repetitions = 3;
    config.seed = 777;

    const auto strip_runtime = [](const std::vector<MetricRecord>& records) {
        std::ostringstream out;
        write_bench_csv(out, records);
        std::istringstream in(out.str());
        std::ostringstream stripped;
        std::string line;
        while (std::getline(in, line)) {
            const auto last = line.rfind(',');
            const auto prev = last == std::string::npos ? std::string::npos
                                                        : line.rfind(',', last - 1);
            if (prev == std::string::npos) {
                stripped << line << '\n';
            } else {
                stripped << line.substr(0, prev) << line.substr(last) << '\n';
            }
        }
        return stripped.str();
    };

    config.threads = 1;
    const std::string single = strip_runtime(run_experiment(config));
    config.threads = 4;
    const std::string quad = strip_runtime(run_experiment(config));
    chk.require(single == quad, "bench CSV differs between 1 and 4 threads");
    chk.log << "    " << std::count(single.begin(), single.end(), '\n') - 2
            << " records byte-identical across thread counts\n";
}

void criterion_8_cpc_mpc_equivalence(Checker& chk) {
    std::size_t compared = 0;
    const auto compare = [&](const demo::ScriptedFixture& fixture, const char* name) {
        const ScriptedOracle oracle = fixture.make_oracle();
        const std::size_t p = fixture.truth.vertex_count();
        std::vector<VariableOrdering> orders{VariableOrdering::natural(p)};
        orders.insert(orders.end(), fixture.featured_orders.begin(),
                      fixture.featured_orders.end());
        for (const auto& order : orders) {
            const Pattern cpc = learn_pattern(oracle, order, cpc_options()).pattern;
            const Pattern mpc = learn_pattern(oracle, order, mpc_options(0.0, 100.0)).pattern;
            ++compared;
            chk.require(cpc == mpc, std::string(name) + ": CPC != MPC(0,100)");
        }
    };

    compare(demo::order_dependent_skeleton_fixture(), "skeleton fixture");
    compare(demo::order_dependent_complex_fixture(), "complex fixture");
    const auto noisy = noisy_fixtures(50, 87000);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        compare(noisy[i], ("noisy fixture " + std::to_string(i)).c_str());
    }
    chk.log << "    " << compared << " pattern comparisons\n";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Checker&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle-exactness: every variant recovers the true pattern (SHD = 0)",
         criterion_1_oracle_exactness},
        {2, "fixtures reproduce bit-exactly (traces, skeletons, orientations)",
         criterion_2_fixtures},
        {3, "stable skeleton and stable CPC/MPC are order independent",
         criterion_3_order_independence},
        {4, "ci-test count obeys the degree bound", criterion_4_test_count_bound},
        {5, "minimal separators are sound and minimal", criterion_5_minimal_separator},
        {6, "desk-scale statistical trend (p=50, N=3, n=2000, alpha=0.005)",
         criterion_6_statistical_trend},
        {7, "bench output is byte-identical across thread counts",
         criterion_7_parallel_determinism},
        {8, "MPC(0,100) coincides with CPC", criterion_8_cpc_mpc_equivalence},
    };

    bool all_ok = true;
    for (const auto& criterion : criteria) {
        Checker chk;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(chk);
        } catch (const std::exception& e) {
            chk.require(false, std::string("unhandled exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%d] %-70s %s (%.1fs)\n", criterion.id, criterion.name,
                    chk.ok ? "PASS" : "FAIL", seconds);
        const std::string detail = chk.log.str();
        if (!detail.empty()) std::fputs(detail.c_str(), stdout);
        all_ok = all_ok && chk.ok;
    }
    std::printf("acceptance: %s\n", all_ok ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return all_ok ? 0 : 1;
}
