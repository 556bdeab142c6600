#include "cglearn/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cglearn {

GaussianData::GaussianData(Eigen::MatrixXd samples) : samples_(std::move(samples)) {
    const auto n = samples_.rows();
    const auto p = samples_.cols();
    if (n < 1) throw InsufficientSamples("GaussianData: need at least one sample row");
    correlation_ = Eigen::MatrixXd::Identity(p, p);
    if (n < 2) return;

    Eigen::MatrixXd centered = samples_.rowwise() - samples_.colwise().mean();
    Eigen::VectorXd norm(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double ss = centered.col(j).squaredNorm();
        norm(j) = std::sqrt(ss);
        if (norm(j) > 0.0) {
            centered.col(j) /= norm(j);
        } else {
            centered.col(j).setZero();  // constant column: carries no information
        }
    }
    correlation_ = centered.transpose() * centered;
    correlation_.diagonal().setOnes();
    // Exact symmetry, independent of the summation order above.
    correlation_ = ((correlation_ + correlation_.transpose()) / 2.0).eval();
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

CIResult gauss_ci(const GaussianData& data, VertexId u, VertexId v, const VertexSet& s,
                  double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidQuery("gauss_ci: alpha must lie in (0,1)");
    const std::size_t p = data.variable_count();
    if (u >= p || v >= p || u == v) throw InvalidQuery("gauss_ci: bad variable pair");
    VertexSet cond = s;
    normalize_set(cond);
    for (VertexId x : cond) {
        if (x >= p) throw InvalidQuery("gauss_ci: conditioning variable out of range");
        if (x == u || x == v) throw InvalidQuery("gauss_ci: S must exclude u and v");
    }
    const std::size_t n = data.sample_count();
    if (n < cond.size() + 4) {
        throw InsufficientSamples("gauss_ci: need n >= |S| + 4 samples");
    }

    const std::size_t m = cond.size() + 2;
    std::vector<VertexId> idx;
    idx.reserve(m);
    idx.push_back(u);
    idx.push_back(v);
    idx.insert(idx.end(), cond.begin(), cond.end());

    Eigen::MatrixXd sub(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) sub(i, j) = data.correlation()(idx[i], idx[j]);
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
    cod.setThreshold(1e-10);
    if (static_cast<std::size_t>(cod.rank()) < m) {
        throw SingularSubmatrix("gauss_ci: correlation submatrix is rank deficient");
    }
    const Eigen::MatrixXd precision = cod.pseudoInverse();

    double r = -precision(0, 1) / std::sqrt(precision(0, 0) * precision(1, 1));
    r = std::clamp(r, -1.0 + 1e-12, 1.0 - 1e-12);

    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    const double statistic =
        std::sqrt(static_cast<double>(n - cond.size() - 3)) * std::abs(z);
    const double p_value = 2.0 * (1.0 - normal_cdf(statistic));
    return CIResult{p_value > alpha, p_value};
}

GaussianOracle::GaussianOracle(const GaussianData& data, double alpha)
    : CIOracle(data.variable_count()), data_(&data), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidQuery("GaussianOracle: alpha must lie in (0,1)");
}

CIResult GaussianOracle::evaluate(VertexId u, VertexId v, const VertexSet& s) const {
    return gauss_ci(*data_, u, v, s, alpha_);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        // trim surrounding whitespace
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string()
                                                    : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& token, double& out) {
    if (token.empty()) return false;
    char* end = nullptr;
    out = std::strtod(token.c_str(), &end);
    return end == token.c_str() + token.size();
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in, const std::vector<std::string>* labels) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], row[j])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (line_no == 1) {
                names = fields;
                continue;
            }
            throw Error("csv line " + std::to_string(line_no) + ": non-numeric field");
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw Error("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " fields, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("csv: no data rows");
    if (!names.empty() && names.size() != width) {
        throw Error("csv: header width does not match data width");
    }

    Eigen::MatrixXd samples(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) samples(i, j) = rows[i][j];
    }

    if (labels != nullptr && !labels->empty()) {
        if (names.empty()) {
            if (labels->size() != width) {
                throw Error("csv: labels file width does not match data width");
            }
            names = *labels;
        } else {
            // reorder headered columns to the label order
            if (labels->size() != width) {
                throw Error("csv: labels file width does not match data width");
            }
            Eigen::MatrixXd reordered(samples.rows(), samples.cols());
            for (std::size_t k = 0; k < labels->size(); ++k) {
                const auto it = std::find(names.begin(), names.end(), (*labels)[k]);
                if (it == names.end()) {
                    throw Error("csv: label '" + (*labels)[k] + "' not found in header");
                }
                reordered.col(k) = samples.col(it - names.begin());
            }
            samples = std::move(reordered);
            names = *labels;
        }
    }
    return Dataset{GaussianData(std::move(samples)), std::move(names)};
}

Dataset load_dataset_csv(const std::string& path, const std::vector<std::string>* labels) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset: " + path);
    return parse_dataset_csv(in, labels);
}

void write_dataset_csv(std::ostream& out, const Eigen::MatrixXd& samples,
                       const std::vector<std::string>& column_names) {
    if (!column_names.empty()) {
        for (std::size_t j = 0; j < column_names.size(); ++j) {
            out << (j ? "," : "") << column_names[j];
        }
        out << '\n';
    }
    char buf[64];
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
        for (Eigen::Index j = 0; j < samples.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", samples(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

void save_dataset_csv(const std::string& path, const Eigen::MatrixXd& samples,
                      const std::vector<std::string>& column_names) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write dataset: " + path);
    write_dataset_csv(out, samples, column_names);
}

}  // namespace cglearn
