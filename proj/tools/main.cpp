#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cglearn/rng.hpp"

#include "cglearn/complexes.hpp"
#include "cglearn/demo.hpp"
#include "cglearn/experiment.hpp"
#include "cglearn/gaussian.hpp"
#include "cglearn/graph_io.hpp"
#include "cglearn/metrics.hpp"
#include "cglearn/synthetic.hpp"

namespace {

using namespace cglearn;
using nlohmann::json;

std::vector<std::string> default_labels(std::size_t p) {
    std::vector<std::string> labels(p);
    for (std::size_t i = 0; i < p; ++i) labels[i] = "v" + std::to_string(i);
    return labels;
}

VertexId resolve_vertex(const std::string& token, std::size_t p,
                        const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == token) return static_cast<VertexId>(i);
    }
    try {
        const unsigned long value = std::stoul(token);
        if (value < p) return static_cast<VertexId>(value);
    } catch (...) {
    }
    throw Error("unknown vertex '" + token + "'");
}

VariableOrdering parse_order(const std::string& spec, std::size_t p,
                             const std::vector<std::string>& labels) {
    if (spec.empty() || spec == "natural") return VariableOrdering::natural(p);
    std::vector<VertexId> sequence;
    std::istringstream stream(spec);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) sequence.push_back(resolve_vertex(token, p, labels));
    }
    return VariableOrdering(sequence);
}

SkeletonMode parse_mode(const std::string& name) {
    if (name == "original") return SkeletonMode::original;
    if (name == "stable") return SkeletonMode::stable;
    throw Error("unknown mode '" + name + "' (expected original|stable)");
}

OrientationRule parse_rule(const std::string& name) {
    if (name == "plain") return OrientationRule::plain;
    if (name == "conservative" || name == "cpc") return OrientationRule::conservative;
    if (name == "majority" || name == "mpc") return OrientationRule::majority;
    throw Error("unknown rule '" + name + "' (expected plain|conservative|majority)");
}

std::vector<ScriptedOracle::Override> parse_overrides(const std::string& path, std::size_t p,
                                                      const std::vector<std::string>& labels) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open overrides file: " + path);
    json doc;
    in >> doc;
    std::vector<ScriptedOracle::Override> overrides;
    for (const auto& entry : doc.at("overrides")) {
        ScriptedOracle::Override o;
        o.u = resolve_vertex(entry.at("u").get<std::string>(), p, labels);
        o.v = resolve_vertex(entry.at("v").get<std::string>(), p, labels);
        for (const auto& token : entry.at("s")) {
            o.s.push_back(resolve_vertex(token.get<std::string>(), p, labels));
        }
        o.independent = entry.at("independent").get<bool>();
        overrides.push_back(std::move(o));
    }
    return overrides;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

int run_learn(const std::string& data_path, const std::string& labels_path, double alpha,
              const std::string& mode_name, const std::string& rule_name, double alpha_pct,
              double beta_pct, const std::string& order_spec, unsigned threads,
              bool skip_unsupported, const std::string& out_prefix) {
    std::optional<std::vector<std::string>> labels;
    if (!labels_path.empty()) labels = load_labels(labels_path);
    const Dataset dataset = load_dataset_csv(data_path, labels ? &*labels : nullptr);
    const std::size_t p = dataset.data.variable_count();
    std::vector<std::string> names =
        !dataset.column_names.empty() ? dataset.column_names : default_labels(p);

    const GaussianOracle oracle(dataset.data, alpha);
    LearnOptions options;
    options.mode = parse_mode(mode_name);
    options.rule = parse_rule(rule_name);
    options.alpha_pct = alpha_pct;
    options.beta_pct = beta_pct;
    options.threads = threads;
    options.skip_unsupported_pairs = skip_unsupported;
    const VariableOrdering order = parse_order(order_spec, p, names);
    const LearnResult result = learn_pattern(oracle, order, options);

    save_graph(out_prefix + ".graph", result.pattern.graph, &names);
    PatternSidecar sidecar;
    sidecar.arrows = result.pattern.complex_arrows;
    sidecar.ambiguous = result.pattern.ambiguous_edges;
    write_file(out_prefix + ".sidecar", format_pattern_sidecar(sidecar, &names));

    std::cout << "variables:       " << p << '\n'
              << "edges:           " << result.pattern.graph.edge_count() << '\n'
              << "complex arrows:  " << result.pattern.complex_arrows.size() << '\n'
              << "ambiguous edges: " << result.pattern.ambiguous_edges.size() << '\n'
              << "ci tests:        " << result.skeleton.ci_queries << '\n'
              << "pattern:         " << out_prefix << ".graph\n"
              << "sidecar:         " << out_prefix << ".sidecar\n";
    return 0;
}

int run_simulate(std::size_t p, double degree, std::size_t n, std::uint64_t seed,
                 const ParamRanges& ranges, const std::string& out_prefix) {
    const MixedGraph graph = random_chain_graph({p, degree, seed});
    const GaussianParams params = random_params(graph, seed_mix(seed, 1), ranges);
    const GaussianData data = sample_gaussian(graph, params, n, seed_mix(seed, 2));
    const auto labels = default_labels(p);

    const std::string graph_file = out_prefix + ".graph";
    const std::string data_file = out_prefix + ".csv";
    save_graph(graph_file, graph, &labels);
    save_dataset_csv(data_file, data.samples(), labels);
    std::ostringstream labels_text;
    for (const auto& label : labels) labels_text << label << '\n';
    write_file(out_prefix + ".labels", labels_text.str());

    char hash_text[32];
    std::snprintf(hash_text, sizeof hash_text, "%016llx",
                  static_cast<unsigned long long>(params_hash(params)));
    json manifest{{"schema", "cglearn.sim.v1"},
                  {"p", p},
                  {"expected_degree", degree},
                  {"n", n},
                  {"seed", seed},
                  {"params_hash", hash_text},
                  {"graph_file", graph_file},
                  {"data_file", data_file}};
    write_file(out_prefix + ".manifest.json", manifest.dump(2) + "\n");
    std::cout << "graph:    " << graph_file << '\n'
              << "dataset:  " << data_file << '\n'
              << "labels:   " << out_prefix << ".labels\n"
              << "manifest: " << out_prefix << ".manifest.json\n";
    return 0;
}

int run_bench(const std::string& config_path, const std::string& out_path, unsigned threads) {
    ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (threads > 0) config.threads = threads;
    const auto records = run_experiment(config);
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    write_bench_csv(out, records);
    std::size_t failed = 0;
    for (const auto& record : records) failed += record.error.empty() ? 0 : 1;
    std::cout << records.size() << " records written to " << out_path;
    if (failed > 0) std::cout << " (" << failed << " runs failed; see the error column)";
    std::cout << '\n';
    return 0;
}

int run_score(const std::string& learned_path, const std::string& truth_path,
              const std::string& labels_path, const std::string& out_path) {
    std::optional<std::vector<std::string>> labels;
    if (!labels_path.empty()) labels = load_labels(labels_path);
    const auto* label_ptr = labels ? &*labels : nullptr;
    const MixedGraph learned = load_graph(learned_path, label_ptr);
    const MixedGraph truth = load_graph(truth_path, label_ptr);

    const SkeletonScore score = score_skeleton(learned, skeleton(truth));
    const std::size_t distance = shd(learned, pattern_of(truth).graph);
    json doc{{"schema", "cglearn.score.v1"},
             {"tp", score.counts.tp},
             {"fp", score.counts.fp},
             {"tn", score.counts.tn},
             {"fn", score.counts.fn},
             {"tpr", score.tpr},
             {"fpr", score.fpr},
             {"tdr", score.tdr},
             {"acc", score.acc},
             {"shd", distance}};
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
    return 0;
}

int run_trace(const std::string& fixture_name, const std::string& graph_path,
              const std::string& overrides_path, const std::string& labels_path,
              const std::string& order_spec, const std::string& mode_name,
              const std::string& out_path) {
    MixedGraph truth(0);
    std::vector<std::string> labels;
    std::vector<ScriptedOracle::Override> overrides;
    if (!fixture_name.empty()) {
        demo::ScriptedFixture fixture;
        if (fixture_name == "order-dependent-skeleton") {
            fixture = demo::order_dependent_skeleton_fixture();
        } else if (fixture_name == "order-dependent-complexes") {
            fixture = demo::order_dependent_complex_fixture();
        } else {
            throw Error("unknown fixture '" + fixture_name +
                        "' (expected order-dependent-skeleton|order-dependent-complexes)");
        }
        truth = fixture.truth;
        labels = fixture.labels;
        overrides = fixture.overrides;
    } else {
        if (graph_path.empty()) throw Error("trace needs --fixture or --graph");
        if (!labels_path.empty()) labels = load_labels(labels_path);
        truth = load_graph(graph_path, labels.empty() ? nullptr : &labels);
        if (labels.empty()) labels = default_labels(truth.vertex_count());
        if (!overrides_path.empty()) {
            overrides = parse_overrides(overrides_path, truth.vertex_count(), labels);
        }
    }

    const ScriptedOracle oracle(truth, overrides);
    SkeletonOptions options;
    options.mode = parse_mode(mode_name);
    options.capture_trace = true;
    const VariableOrdering order = parse_order(order_spec, truth.vertex_count(), labels);
    const SkeletonResult result = learn_skeleton(oracle, order, options);

    std::ostringstream csv;
    write_trace_csv(csv, result.trace, &labels);
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_file(out_path, csv.str());
        std::cout << result.trace.size() << " trace rows written to " << out_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chain-graph structure learning from conditional independence"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    // learn
    std::string data_path, labels_path, order_spec, out_prefix = "pattern";
    std::string mode_name = "stable", rule_name = "plain";
    double alpha = 0.01, alpha_pct = 0.0, beta_pct = 100.0;
    unsigned threads = 1;
    auto* learn = app.add_subcommand("learn", "Learn a pattern from a CSV dataset");
    learn->add_option("--data", data_path, "CSV dataset (n rows x p columns)")->required();
    learn->add_option("--labels", labels_path, "labels file (one per line)");
    learn->add_option("--alpha", alpha, "significance level for the Fisher-z tests")
        ->check(CLI::Range(1e-12, 1.0));
    learn->add_option("--mode", mode_name, "skeleton mode: original|stable");
    learn->add_option("--rule", rule_name, "orientation rule: plain|conservative|majority");
    learn->add_option("--alpha-pct", alpha_pct, "majority-rule lower threshold (percent)");
    learn->add_option("--beta-pct", beta_pct, "majority-rule upper threshold (percent)");
    learn->add_option("--order", order_spec, "variable ordering (comma separated, or 'natural')");
    learn->add_option("--threads", threads, "worker threads for the stable skeleton phase");
    bool skip_unsupported = false;
    learn->add_flag("--skip-unsupported-pairs", skip_unsupported,
                    "CPC/MPC: skip nonadjacent pairs with no separating set");
    learn->add_option("--out", out_prefix, "output prefix (.graph and .sidecar)");

    // simulate
    std::size_t sim_p = 10, sim_n = 1000;
    double sim_degree = 2.0;
    std::uint64_t sim_seed = 0;
    std::string sim_prefix = "sim";
    auto* simulate = app.add_subcommand("simulate", "Generate a random chain graph and dataset");
    simulate->add_option("--p", sim_p, "vertex count")->required();
    simulate->add_option("--expected-degree", sim_degree, "expected adjacent vertices per vertex")
        ->required();
    simulate->add_option("--n", sim_n, "sample size")->required();
    simulate->add_option("--seed", sim_seed, "rng seed");
    ParamRanges sim_ranges;
    simulate->add_option("--weight-range", [&sim_ranges](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], sim_ranges.weight_lo) &&
               CLI::detail::lexical_cast(res[1], sim_ranges.weight_hi);
    }, "edge weight magnitude range (lo hi)")->expected(2);
    simulate->add_option("--precision-range", [&sim_ranges](const CLI::results_t& res) {
        return CLI::detail::lexical_cast(res[0], sim_ranges.precision_lo) &&
               CLI::detail::lexical_cast(res[1], sim_ranges.precision_hi);
    }, "precision coupling magnitude range (lo hi)")->expected(2);
    simulate->add_option("--out", sim_prefix, "output prefix (.graph, .csv, .manifest.json)");

    // bench
    std::string bench_config, bench_out = "results.csv";
    unsigned bench_threads = 0;
    auto* bench = app.add_subcommand("bench", "Run an experiment grid from a config file");
    bench->add_option("--config", bench_config, "experiment config (json)")->required();
    bench->add_option("--out", bench_out, "results CSV path");
    bench->add_option("--threads", bench_threads, "worker threads (overrides the config)");

    // score
    std::string score_learned, score_truth, score_labels, score_out;
    auto* score = app.add_subcommand("score", "Score a learned graph against a true chain graph");
    score->add_option("--learned", score_learned, "learned pattern graph file")->required();
    score->add_option("--truth", score_truth, "true chain graph file")->required();
    score->add_option("--labels", score_labels, "labels file shared by both graphs");
    score->add_option("--out", score_out, "metrics JSON path (default: stdout)");

    // trace
    std::string trace_fixture, trace_graph, trace_overrides, trace_labels, trace_order;
    std::string trace_mode = "original", trace_out;
    auto* trace = app.add_subcommand("trace", "Export the skeleton-phase trace as CSV");
    trace->add_option("--fixture", trace_fixture,
                      "built-in fixture: order-dependent-skeleton|order-dependent-complexes");
    trace->add_option("--graph", trace_graph, "chain graph file (scripted-oracle base)");
    trace->add_option("--overrides", trace_overrides, "scripted verdicts (json)");
    trace->add_option("--labels", trace_labels, "labels file for --graph");
    trace->add_option("--order", trace_order, "variable ordering (comma separated)");
    trace->add_option("--mode", trace_mode, "skeleton mode: original|stable");
    trace->add_option("--out", trace_out, "trace CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (learn->parsed()) {
            return run_learn(data_path, labels_path, alpha, mode_name, rule_name, alpha_pct,
                             beta_pct, order_spec, threads, skip_unsupported, out_prefix);
        }
        if (simulate->parsed()) {
            return run_simulate(sim_p, sim_degree, sim_n, sim_seed, sim_ranges, sim_prefix);
        }
        if (bench->parsed()) {
            return run_bench(bench_config, bench_out, bench_threads);
        }
        if (score->parsed()) {
            return run_score(score_learned, score_truth, score_labels, score_out);
        }
        if (trace->parsed()) {
            return run_trace(trace_fixture, trace_graph, trace_overrides, trace_labels,
                             trace_order, trace_mode, trace_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
