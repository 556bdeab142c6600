#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cglearn/complexes.hpp"
#include "cglearn/metrics.hpp"
#include "cglearn/synthetic.hpp"

namespace cglearn {

struct VariantSpec {
    SkeletonMode mode = SkeletonMode::stable;
    OrientationRule rule = OrientationRule::plain;
    double alpha_pct = 0.0;
    double beta_pct = 100.0;

    std::string name() const;
};

struct ExperimentConfig {
    std::vector<std::size_t> vertex_counts;     // p
    std::vector<std::size_t> sample_sizes;      // n
    std::vector<double> expected_degrees;       // N
    std::vector<double> alphas;                 // significance levels
    std::vector<VariantSpec> variants;
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Score the variants against the exact c-separation oracle of the truth
    /// instead of Fisher-z tests on sampled data (alphas are then ignored).
    bool use_exact_oracle = false;
    /// Variable ordering fed to every run; empty means natural order. Must be
    /// a permutation of 0..p-1 for every configured p (so only usable with a
    /// single p).
    std::vector<VertexId> variable_order;
    /// Magnitude ranges for the drawn weights and precision couplings.
    ParamRanges param_ranges;

    void validate() const;

    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
};

/// One (grid cell, repetition, variant) outcome. `error` is empty on
/// success; failed runs keep their coordinates and carry the message.
struct MetricRecord {
    std::size_t p = 0;
    std::size_t n = 0;
    double expected_degree = 0.0;
    double alpha = 0.0;
    VariantSpec variant;
    std::size_t repetition = 0;
    std::uint64_t graph_seed = 0;
    SkeletonScore skeleton_score;
    std::size_t shd_value = 0;
    double runtime_ms = 0.0;
    std::string error;
};

/// Runs the full grid: per (p, N, repetition) generate graph, parameters and
/// one dataset per n; per (alpha, variant) learn a pattern and score it
/// against the truth's pattern. Deterministic for a fixed seed regardless of
/// thread count; records come back canonically sorted.
std::vector<MetricRecord> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kBenchCsvSchema = "cglearn.bench.v1";

/// Schema-versioned CSV: a `# schema` line, a header row, one row per record.
void write_bench_csv(std::ostream& out, const std::vector<MetricRecord>& records);

}  // namespace cglearn
