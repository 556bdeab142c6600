#include "cglearn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "cglearn/rng.hpp"
#include "cglearn/synthetic.hpp"

namespace cglearn {

std::string VariantSpec::name() const {
    std::string out = mode == SkeletonMode::stable ? "stable" : "original";
    switch (rule) {
        case OrientationRule::plain:
            out += "-plain";
            break;
        case OrientationRule::conservative:
            out += "-cpc";
            break;
        case OrientationRule::majority: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "-mpc(%g,%g)", alpha_pct, beta_pct);
            out += buf;
            break;
        }
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (vertex_counts.empty() || expected_degrees.empty() || variants.empty()) {
        throw Error("experiment config: p, N and variants must be nonempty");
    }
    if (!use_exact_oracle && (sample_sizes.empty() || alphas.empty())) {
        throw Error("experiment config: n and alpha must be nonempty");
    }
    if (repetitions < 1) throw Error("experiment config: repetitions must be >= 1");
    for (double alpha : alphas) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw Error("experiment config: alpha outside (0,1)");
    }
    for (std::size_t p : vertex_counts) {
        if (p < 1) throw Error("experiment config: p must be >= 1");
        for (double deg : expected_degrees) {
            if (deg < 0.0 || (p > 1 && deg > static_cast<double>(p - 1))) {
                throw Error("experiment config: expected degree outside [0, p-1]");
            }
        }
        if (!variable_order.empty() && variable_order.size() != p) {
            throw Error("experiment config: variable_order must match every configured p");
        }
    }
}

namespace {

using nlohmann::json;

SkeletonMode parse_mode(const std::string& name) {
    if (name == "original") return SkeletonMode::original;
    if (name == "stable") return SkeletonMode::stable;
    throw Error("experiment config: unknown mode '" + name + "'");
}

OrientationRule parse_rule(const std::string& name) {
    if (name == "plain") return OrientationRule::plain;
    if (name == "conservative" || name == "cpc") return OrientationRule::conservative;
    if (name == "majority" || name == "mpc") return OrientationRule::majority;
    throw Error("experiment config: unknown rule '" + name + "'");
}

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig config;
    config.vertex_counts = doc.at("p").get<std::vector<std::size_t>>();
    if (doc.contains("n")) config.sample_sizes = doc.at("n").get<std::vector<std::size_t>>();
    config.expected_degrees = doc.at("expected_degree").get<std::vector<double>>();
    if (doc.contains("alpha")) config.alphas = doc.at("alpha").get<std::vector<double>>();
    for (const auto& entry : doc.at("variants")) {
        VariantSpec variant;
        variant.mode = parse_mode(entry.at("mode").get<std::string>());
        variant.rule = parse_rule(entry.at("rule").get<std::string>());
        if (variant.rule == OrientationRule::majority) {
            variant.alpha_pct = entry.at("alpha_pct").get<double>();
            variant.beta_pct = entry.at("beta_pct").get<double>();
        }
        config.variants.push_back(variant);
    }
    config.repetitions = doc.value("repetitions", std::size_t{1});
    config.seed = doc.value("seed", std::uint64_t{0});
    config.threads = doc.value("threads", 1u);
    config.use_exact_oracle = doc.value("use_exact_oracle", false);
    if (doc.contains("variable_order")) {
        config.variable_order = doc.at("variable_order").get<std::vector<VertexId>>();
    }
    if (doc.contains("weight_range")) {
        const auto range = doc.at("weight_range").get<std::vector<double>>();
        if (range.size() != 2) throw Error("experiment config: weight_range needs [lo, hi]");
        config.param_ranges.weight_lo = range[0];
        config.param_ranges.weight_hi = range[1];
    }
    if (doc.contains("precision_range")) {
        const auto range = doc.at("precision_range").get<std::vector<double>>();
        if (range.size() != 2) throw Error("experiment config: precision_range needs [lo, hi]");
        config.param_ranges.precision_lo = range[0];
        config.param_ranges.precision_hi = range[1];
    }
    config.validate();
    return config;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    try {
        return parse_config(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(std::string("experiment config: ") + e.what());
    }
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

namespace {

struct CellTask {
    std::size_t p;
    double expected_degree;
    std::size_t repetition;
};

std::vector<MetricRecord> run_cell(const ExperimentConfig& config, const CellTask& task) {
    std::vector<MetricRecord> records;
    const std::uint64_t degree_bits = [&] {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &task.expected_degree, sizeof bits);
        return bits;
    }();
    const std::uint64_t graph_seed =
        seed_mix(config.seed, task.p, degree_bits, task.repetition, 0x677261706853ULL);

    MetricRecord prototype;
    prototype.p = task.p;
    prototype.expected_degree = task.expected_degree;
    prototype.repetition = task.repetition;
    prototype.graph_seed = graph_seed;

    MixedGraph truth(0);
    Pattern truth_pattern;
    GaussianParams params;
    try {
        truth = random_chain_graph({task.p, task.expected_degree, graph_seed});
        truth_pattern = pattern_of(truth);
        params = random_params(truth, seed_mix(graph_seed, 1), config.param_ranges);
    } catch (const std::exception& e) {
        prototype.error = e.what();
        records.push_back(prototype);
        return records;
    }
    const MixedGraph truth_skeleton = skeleton(truth);

    const VariableOrdering order = config.variable_order.empty()
                                       ? VariableOrdering::natural(task.p)
                                       : VariableOrdering(config.variable_order);

    auto run_variants = [&](const CIOracle& oracle, std::size_t n, double alpha) {
        for (const VariantSpec& variant : config.variants) {
            MetricRecord record = prototype;
            record.n = n;
            record.alpha = alpha;
            record.variant = variant;
            try {
                LearnOptions options;
                options.mode = variant.mode;
                options.rule = variant.rule;
                options.alpha_pct = variant.alpha_pct;
                options.beta_pct = variant.beta_pct;
                // data-driven CPC/MPC runs tolerate pairs whose separating
                // set fell outside the final adjacencies
                options.skip_unsupported_pairs = true;
                const auto start = std::chrono::steady_clock::now();
                const LearnResult learned = learn_pattern(oracle, order, options);
                const auto stop = std::chrono::steady_clock::now();
                record.runtime_ms =
                    std::chrono::duration<double, std::milli>(stop - start).count();
                record.skeleton_score = score_skeleton(learned.pattern.graph, truth_skeleton);
                record.shd_value = shd(learned.pattern, truth_pattern);
            } catch (const std::exception& e) {
                record.error = e.what();
            }
            records.push_back(std::move(record));
        }
    };

    if (config.use_exact_oracle) {
        const ExactOracle oracle(truth);
        run_variants(oracle, 0, 0.0);
        return records;
    }

    for (std::size_t n : config.sample_sizes) {
        GaussianData data(Eigen::MatrixXd::Zero(1, 1));
        try {
            data = sample_gaussian(truth, params, n, seed_mix(graph_seed, n, 0x64617461ULL));
        } catch (const std::exception& e) {
            for (double alpha : config.alphas) {
                for (const VariantSpec& variant : config.variants) {
                    MetricRecord record = prototype;
                    record.n = n;
                    record.alpha = alpha;
                    record.variant = variant;
                    record.error = e.what();
                    records.push_back(std::move(record));
                }
            }
            continue;
        }
        for (double alpha : config.alphas) {
            const GaussianOracle oracle(data, alpha);
            run_variants(oracle, n, alpha);
        }
    }
    return records;
}

}  // namespace

std::vector<MetricRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<CellTask> tasks;
    for (std::size_t p : config.vertex_counts) {
        for (double degree : config.expected_degrees) {
            for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                tasks.push_back(CellTask{p, degree, rep});
            }
        }
    }

    std::vector<std::vector<MetricRecord>> partials(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= tasks.size()) return;
            try {
                partials[i] = run_cell(config, tasks[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const unsigned threads =
        std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<MetricRecord> records;
    for (auto& chunk : partials) {
        records.insert(records.end(), std::make_move_iterator(chunk.begin()),
                       std::make_move_iterator(chunk.end()));
    }
    std::sort(records.begin(), records.end(), [](const MetricRecord& a, const MetricRecord& b) {
        return std::tuple(a.p, a.expected_degree, a.n, a.alpha, a.variant.name(), a.repetition) <
               std::tuple(b.p, b.expected_degree, b.n, b.alpha, b.variant.name(), b.repetition);
    });
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
    out << "# schema: " << kBenchCsvSchema << '\n';
    out << "p,n,expected_degree,alpha,variant,repetition,graph_seed,"
           "tp,fp,tn,fn,tpr,fpr,tdr,tdr_degenerate,acc,shd,runtime_ms,error\n";
    char buf[64];
    auto num = [&](double value) {
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return std::string(buf);
    };
    for (const auto& r : records) {
        const auto& c = r.skeleton_score.counts;
        out << r.p << ',' << r.n << ',' << num(r.expected_degree) << ',' << num(r.alpha) << ','
            << r.variant.name() << ',' << r.repetition << ',' << r.graph_seed << ',' << c.tp
            << ',' << c.fp << ',' << c.tn << ',' << c.fn << ',' << num(r.skeleton_score.tpr)
            << ',' << num(r.skeleton_score.fpr) << ',' << num(r.skeleton_score.tdr) << ','
            << (c.tp + c.fp == 0 ? 1 : 0) << ',' << num(r.skeleton_score.acc) << ','
            << r.shd_value << ',' << num(r.runtime_ms) << ',' << r.error << '\n';
    }
}

}  // namespace cglearn
