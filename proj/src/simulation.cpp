#include "eda/simulation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "eda/error.hpp"
#include "eda/gaussian.hpp"

namespace eda {

namespace {

Matrix cholesky_or_throw(const Matrix& sigma) {
    try {
        return CovModel::from_sigma(sigma).chol();
    } catch (const Error& e) {
        throw Error(ErrorKind::NotPositiveDefinite, std::string("sampler: ") + e.what());
    }
}

void config_error(const std::string& field, const std::string& why) {
    throw Error(ErrorKind::ConfigError, "field '" + field + "': " + why);
}

double mvt1_log_density(const CovModel& cov, const Vector& centered) {
    const auto d = static_cast<double>(cov.dim());
    const double delta = cov.quadratic_form(centered);
    return std::lgamma(0.5 * (1.0 + d)) - std::lgamma(0.5) - 0.5 * d * std::log(std::numbers::pi) -
           0.5 * cov.log_det() - 0.5 * (1.0 + d) * std::log1p(delta);
}

double normal_pdf(double x, double mean, double sd) {
    const double u = (x - mean) / sd;
    return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double cauchy_pdf(double x, double location, double scale) {
    const double u = (x - location) / scale;
    return 1.0 / (std::numbers::pi * scale * (1.0 + u * u));
}

std::size_t correct_count(const Matrix& case_test, const Matrix& control_test, auto&& score) {
    std::size_t correct = 0;
    for (Eigen::Index i = 0; i < case_test.rows(); ++i) {
        if (predicts_case(score(Vector(case_test.row(i).transpose())))) ++correct;
    }
    for (Eigen::Index i = 0; i < control_test.rows(); ++i) {
        if (!predicts_case(score(Vector(control_test.row(i).transpose())))) ++correct;
    }
    return correct;
}

} // namespace

std::string_view to_string(Family family) noexcept {
    return family == Family::Normal ? "normal" : "t1";
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::E: return "E";
    case Method::J: return "J";
    case Method::Q: return "Q";
    case Method::T: return "T";
    case Method::H: return "H";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view text) noexcept {
    if (text == "normal") return Family::Normal;
    if (text == "t1") return Family::T1;
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view text) noexcept {
    for (Method m : {Method::E, Method::J, Method::Q, Method::T, Method::H}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    if (dim < 1) config_error("dim", "must be at least 1");
    if (!std::isfinite(case_mean_shift)) config_error("case_mean_shift", "must be finite");
    if (!(std::abs(rho_case) < 1.0)) config_error("rho_case", "must satisfy |rho| < 1");
    if (!(std::abs(rho_control) < 1.0)) config_error("rho_control", "must satisfy |rho| < 1");
    if (!(case_variance_scale > 0.0)) config_error("case_variance_scale", "must be positive");
    if (!(control_variance_scale > 0.0)) {
        config_error("control_variance_scale", "must be positive");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    if (case_cov && (case_cov->rows() != d || case_cov->cols() != d)) {
        config_error("case_cov", "must be a dim x dim matrix");
    }
    if (control_cov && (control_cov->rows() != d || control_cov->cols() != d)) {
        config_error("control_cov", "must be a dim x dim matrix");
    }
    if (size < 12) config_error("size", "must be at least 12");
    if (train_parts < 1 || test_parts < 1) {
        config_error("train_test_ratio", "both parts must be positive");
    }
    const std::size_t per_class = size / 2;
    const std::size_t test = per_class * test_parts / (train_parts + test_parts);
    if (test < 1 || per_class - test < 2) {
        config_error("train_test_ratio", "split leaves too few rows in a class");
    }
    if (replicates < 1) config_error("replicates", "must be at least 1");
    if (!(k_fraction > 0.0 && k_fraction <= 1.0)) config_error("k_fraction", "must lie in (0, 1]");
}

Vector ScenarioConfig::case_mean() const {
    Vector mean = Vector::Zero(static_cast<Eigen::Index>(dim));
    mean[0] = case_mean_shift;
    return mean;
}

Vector ScenarioConfig::control_mean() const {
    return Vector::Zero(static_cast<Eigen::Index>(dim));
}

Matrix ScenarioConfig::case_covariance() const {
    return case_cov ? *case_cov : build_covariance(dim, rho_case, case_variance_scale);
}

Matrix ScenarioConfig::control_covariance() const {
    return control_cov ? *control_cov : build_covariance(dim, rho_control, control_variance_scale);
}

const MethodAccuracy& AccuracyReport::at(Method method) const {
    for (const auto& m : methods) {
        if (m.method == method) return m;
    }
    throw std::out_of_range("method " + std::string(to_string(method)) + " not in report");
}

Matrix build_covariance(std::size_t dim, double rho, double variance_scale) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix sigma(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double vi = variance_scale * static_cast<double>(i + 1);
            const double vj = variance_scale * static_cast<double>(j + 1);
            sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j))) * std::sqrt(vi * vj);
        }
    }
    cholesky_or_throw(sigma);
    return sigma;
}

Matrix sample_mvn(const Vector& mean, const Matrix& sigma, std::size_t count,
                  std::uint64_t seed) {
    if (sigma.rows() != mean.size() || sigma.cols() != mean.size()) {
        throw Error(ErrorKind::DimensionMismatch, "sample_mvn: mean and sigma disagree");
    }
    const Matrix lower = cholesky_or_throw(sigma);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix out(static_cast<Eigen::Index>(count), mean.size());
    Vector u(mean.size());
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = normal(rng);
        out.row(r) = (mean + lower * u).transpose();
    }
    return out;
}

Matrix sample_mvt1(const Vector& mean, const Matrix& sigma, std::size_t count,
                   std::uint64_t seed) {
    if (sigma.rows() != mean.size() || sigma.cols() != mean.size()) {
        throw Error(ErrorKind::DimensionMismatch, "sample_mvt1: mean and sigma disagree");
    }
    const Matrix lower = cholesky_or_throw(sigma);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix out(static_cast<Eigen::Index>(count), mean.size());
    Vector u(mean.size());
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = normal(rng);
        // Chi-square with one degree of freedom is the square of a standard normal.
        double w = 0.0;
        while (w == 0.0) {
            const double v = normal(rng);
            w = v * v;
        }
        out.row(r) = (mean + lower * u / std::sqrt(w)).transpose();
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

OracleDensities oracle_densities(const ScenarioConfig& scenario) {
    const CovModel case_cov = CovModel::from_sigma(scenario.case_covariance());
    const CovModel control_cov = CovModel::from_sigma(scenario.control_covariance());
    const Vector case_mean = scenario.case_mean();
    const Vector control_mean = scenario.control_mean();
    if (scenario.family == Family::Normal) {
        return OracleDensities{
            [=](const Vector& x) { return log_gauss_density(case_cov, x - case_mean); },
            [=](const Vector& x) { return log_gauss_density(control_cov, x - control_mean); },
        };
    }
    return OracleDensities{
        [=](const Vector& x) { return mvt1_log_density(case_cov, x - case_mean); },
        [=](const Vector& x) { return mvt1_log_density(control_cov, x - control_mean); },
    };
}

std::vector<MarginalDensityPair> marginal_density_pairs(const ScenarioConfig& scenario) {
    const Matrix case_sigma = scenario.case_covariance();
    const Matrix control_sigma = scenario.control_covariance();
    const Vector case_mean = scenario.case_mean();
    std::vector<MarginalDensityPair> pairs;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(scenario.dim); ++j) {
        const double mc = case_mean[j];
        const double sc = std::sqrt(case_sigma(j, j));
        const double s0 = std::sqrt(control_sigma(j, j));
        if (scenario.family == Family::Normal) {
            pairs.push_back({[=](double x) { return normal_pdf(x, mc, sc); },
                             [=](double x) { return normal_pdf(x, 0.0, s0); }});
        } else {
            pairs.push_back({[=](double x) { return cauchy_pdf(x, mc, sc); },
                             [=](double x) { return cauchy_pdf(x, 0.0, s0); }});
        }
    }
    return pairs;
}

ReplicateData draw_replicate(const ScenarioConfig& scenario, std::size_t replicate) {
    const std::uint64_t seed = derive_seed(scenario.seed, replicate);
    const std::size_t per_class = scenario.size / 2;
    const std::size_t test =
        per_class * scenario.test_parts / (scenario.train_parts + scenario.test_parts);
    const auto train = static_cast<Eigen::Index>(per_class - test);

    auto sampler = scenario.family == Family::Normal ? &sample_mvn : &sample_mvt1;
    const Matrix cases =
        sampler(scenario.case_mean(), scenario.case_covariance(), per_class, derive_seed(seed, 1));
    const Matrix controls = sampler(scenario.control_mean(), scenario.control_covariance(),
                                    per_class, derive_seed(seed, 2));
    const auto n = static_cast<Eigen::Index>(per_class);
    return ReplicateData{cases.topRows(train), controls.topRows(train),
                         cases.bottomRows(n - train), controls.bottomRows(n - train)};
}

AccuracyReport run_experiment(const ScenarioConfig& scenario, std::span<const Method> methods) {
    scenario.validate();
    if (methods.empty()) throw Error(ErrorKind::ConfigError, "no methods requested");

    const OracleDensities oracle = oracle_densities(scenario);
    const std::vector<MarginalDensityPair> pairs = marginal_density_pairs(scenario);
    const JacobianConfig cfg{scenario.k_fraction};

    std::vector<std::vector<double>> accuracies(methods.size());
    std::vector<std::size_t> failures(methods.size(), 0);

    for (std::size_t rep = 0; rep < scenario.replicates; ++rep) {
        const ReplicateData data = draw_replicate(scenario, rep);
        const auto test_rows =
            static_cast<double>(data.case_test.rows() + data.control_test.rows());

        // The EDA fit is shared by E, J and H.
        std::optional<EdaModel> eda;
        bool eda_failed = false;
        auto eda_model = [&]() -> const EdaModel& {
            if (!eda && !eda_failed) {
                try {
                    eda = fit_eda(data.case_train, data.control_train, cfg);
                } catch (const Error&) {
                    eda_failed = true;
                }
            }
            if (eda_failed) throw Error(ErrorKind::SingularCovariance, "EDA fit failed");
            return *eda;
        };

        for (std::size_t m = 0; m < methods.size(); ++m) {
            try {
                std::size_t correct = 0;
                switch (methods[m]) {
                case Method::E: {
                    const EdaModel& model = eda_model();
                    correct = correct_count(data.case_test, data.control_test,
                                            [&](const Vector& x) { return eda_log_ratio(model, x); });
                    break;
                }
                case Method::J: {
                    const EdaModel& model = eda_model();
                    correct = correct_count(data.case_test, data.control_test, [&](const Vector& x) {
                        return eda_log_ratio_theoretical(model, pairs, x);
                    });
                    break;
                }
                case Method::H: {
                    const EdaModel& model = eda_model();
                    correct = correct_count(data.case_test, data.control_test, [&](const Vector& x) {
                        return rank_only_log_ratio(model, x);
                    });
                    break;
                }
                case Method::Q: {
                    const QdaModel model = fit_qda(data.case_train, data.control_train);
                    correct = correct_count(data.case_test, data.control_test,
                                            [&](const Vector& x) { return qda_log_ratio(model, x); });
                    break;
                }
                case Method::T:
                    correct = correct_count(data.case_test, data.control_test,
                                            [&](const Vector& x) { return bayes_oracle_score(oracle, x); });
                    break;
                }
                accuracies[m].push_back(100.0 * static_cast<double>(correct) / test_rows);
            } catch (const Error&) {
                ++failures[m];
            }
        }
    }

    AccuracyReport report;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        MethodAccuracy row{methods[m]};
        const auto& acc = accuracies[m];
        row.replicates = acc.size();
        row.failures = failures[m];
        if (!acc.empty()) {
            double sum = 0.0;
            for (double a : acc) sum += a;
            row.mean = sum / static_cast<double>(acc.size());
            if (acc.size() > 1) {
                double ss = 0.0;
                for (double a : acc) ss += (a - row.mean) * (a - row.mean);
                row.sd = std::sqrt(ss / static_cast<double>(acc.size() - 1));
            }
        }
        report.methods.push_back(row);
    }
    return report;
}

std::optional<Suite> parse_suite(std::string_view text) noexcept {
    if (text == "table1") return Suite::Table1;
    if (text == "table2") return Suite::Table2;
    return std::nullopt;
}

std::string_view to_string(Suite suite) noexcept {
    return suite == Suite::Table1 ? "table1" : "table2";
}

ScenarioConfig table_scenario(Suite suite, int row, std::size_t dim, std::size_t size) {
    if (row < 1 || row > 4) config_error("row", "must be 1..4");
    // (control, case) correlation decay per row
    static constexpr std::array<std::array<double, 2>, 4> rhos = {
        {{0.1, 0.9}, {0.6, 0.4}, {0.7, 0.3}, {0.8, 0.2}}};

    ScenarioConfig s;
    s.family = suite == Suite::Table1 ? Family::Normal : Family::T1;
    s.dim = dim;
    s.size = size;
    s.case_mean_shift = (suite == Suite::Table2 && row == 1) ? 0.5 : static_cast<double>(row);
    s.rho_control = rhos[static_cast<std::size_t>(row - 1)][0];
    s.rho_case = rhos[static_cast<std::size_t>(row - 1)][1];
    s.control_variance_scale = 1.0;
    s.case_variance_scale = 2.0;
    if (dim == 2) {
        s.control_cov = (Matrix(2, 2) << 2.0, 2.0, 2.0, 5.0).finished();
        s.case_cov = (Matrix(2, 2) << 10.0, 5.0, 5.0, 3.0).finished();
    }
    s.k_fraction = suite == Suite::Table1 ? 0.8 : 0.1;
    return s;
}

} // namespace eda
