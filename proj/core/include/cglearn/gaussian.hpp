#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "cglearn/ci.hpp"

namespace cglearn {

/// An i.i.d. sample of p continuous variables with its correlation matrix
/// cached once (the test inner loop reads only the correlation).
class GaussianData {
public:
    /// samples is n x p, one row per observation.
    explicit GaussianData(Eigen::MatrixXd samples);

    std::size_t sample_count() const { return static_cast<std::size_t>(samples_.rows()); }
    std::size_t variable_count() const { return static_cast<std::size_t>(samples_.cols()); }
    const Eigen::MatrixXd& samples() const { return samples_; }
    const Eigen::MatrixXd& correlation() const { return correlation_; }

private:
    Eigen::MatrixXd samples_;
    Eigen::MatrixXd correlation_;
};

/// Standard normal CDF (via erfc; |error| well below 1e-9).
double normal_cdf(double x);

/// Fisher-z test for zero partial correlation of u, v given S.
///
/// The partial correlation r comes from a pseudo-inverse of the correlation
/// submatrix over {u, v} ∪ S; z = atanh(r) = log((1+r)/(1-r))/2; the statistic
/// sqrt(n - |S| - 3) * |z| is referred to the standard normal, two sided.
/// independent ⇔ p_value > alpha. r is clamped to 1 - 1e-12 in magnitude so a
/// degenerate sample cannot produce an infinite z.
///
/// Throws InsufficientSamples when n < |S| + 4, SingularSubmatrix when the
/// submatrix is rank deficient beyond tolerance 1e-10, InvalidQuery on a bad
/// alpha or query shape.
CIResult gauss_ci(const GaussianData& data, VertexId u, VertexId v, const VertexSet& s,
                  double alpha);

/// CIOracle backend over gauss_ci at a fixed significance level.
class GaussianOracle final : public CIOracle {
public:
    GaussianOracle(const GaussianData& data, double alpha);

    double alpha() const { return alpha_; }

private:
    CIResult evaluate(VertexId u, VertexId v, const VertexSet& s) const override;

    const GaussianData* data_;
    double alpha_;
};

/// CSV dataset ingestion: n rows x p numeric columns, comma separated. A
/// first row that fails numeric parsing is taken as a header naming the
/// columns. Column order defines VertexId order unless `labels` is given, in
/// which case a headered file is reordered to match it.
struct Dataset {
    GaussianData data;
    std::vector<std::string> column_names;  // empty when headerless
};

Dataset parse_dataset_csv(std::istream& in, const std::vector<std::string>* labels = nullptr);
Dataset load_dataset_csv(const std::string& path, const std::vector<std::string>* labels = nullptr);

/// Writes at full precision (17 significant digits) so reloads are lossless.
void write_dataset_csv(std::ostream& out, const Eigen::MatrixXd& samples,
                       const std::vector<std::string>& column_names);
void save_dataset_csv(const std::string& path, const Eigen::MatrixXd& samples,
                      const std::vector<std::string>& column_names);

}  // namespace cglearn
