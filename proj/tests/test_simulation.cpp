#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "eda/discriminants.hpp"
#include "eda/error.hpp"
#include "eda/simulation.hpp"
#include "support/error_kind.hpp"
#include "support/oracles.hpp"

namespace eda {
namespace {

using testing::kind_of;

double quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    return lo + 1 < v.size() ? v[lo] * (1 - frac) + v[lo + 1] * frac : v[lo];
}

std::vector<double> column(const Matrix& m, Eigen::Index j) {
    return std::vector<double>(m.col(j).begin(), m.col(j).end());
}

TEST(BuildCovariance, Examples) {
    EXPECT_EQ(build_covariance(1, 0.7, 1.0), Matrix::Constant(1, 1, 1.0));
    const Matrix diag = build_covariance(3, 0.0, 1.0);
    EXPECT_TRUE(diag.isApprox(Vector::LinSpaced(3, 1, 3).asDiagonal().toDenseMatrix()));

    Matrix expected(3, 3);
    expected << 1, 0.5 * std::sqrt(2.0), 0.25 * std::sqrt(3.0),
        0.5 * std::sqrt(2.0), 2, 0.5 * std::sqrt(6.0),
        0.25 * std::sqrt(3.0), 0.5 * std::sqrt(6.0), 3;
    EXPECT_LT((build_covariance(3, 0.5, 1.0) - expected).cwiseAbs().maxCoeff(), 1e-15);
    // case scale doubles every variance
    EXPECT_LT((build_covariance(3, 0.5, 2.0) - 2.0 * expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildCovariance, Errors) {
    EXPECT_EQ(kind_of([] { build_covariance(3, 1.0, 1.0); }), ErrorKind::NotPositiveDefinite);
}

TEST(TableScenario, TwoDimensionalMatricesAreExplicit) {
    const ScenarioConfig s = table_scenario(Suite::Table1, 1, 2, 1000);
    Matrix control(2, 2), cases(2, 2);
    control << 2, 2, 2, 5;
    cases << 10, 5, 5, 3;
    EXPECT_EQ(s.control_covariance(), control);
    EXPECT_EQ(s.case_covariance(), cases);
    EXPECT_EQ(s.case_mean()[0], 1.0);
    EXPECT_EQ(s.family, Family::Normal);
    EXPECT_EQ(table_scenario(Suite::Table2, 1, 2, 1000).family, Family::T1);
    EXPECT_EQ(table_scenario(Suite::Table1, 4, 10, 1000).case_mean()[0], 4.0);
}

TEST(SampleMvn, MomentsOfStandardNormal) {
    const Matrix x = sample_mvn(Vector::Zero(2), Matrix::Identity(2, 2), 100000, 17);
    const Vector mean = x.colwise().mean();
    EXPECT_LT(mean.cwiseAbs().maxCoeff(), 0.02);
    const Matrix cov = testing::loop_covariance(x);
    EXPECT_LT((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(SampleMvn, DeterministicAndEmpty) {
    Matrix sigma(2, 2);
    sigma << 2, 2, 2, 5;
    EXPECT_EQ(sample_mvn(Vector::Ones(2), sigma, 50, 3), sample_mvn(Vector::Ones(2), sigma, 50, 3));
    EXPECT_NE(sample_mvn(Vector::Ones(2), sigma, 50, 3), sample_mvn(Vector::Ones(2), sigma, 50, 4));
    const Matrix empty = sample_mvn(Vector::Zero(2), sigma, 0, 3);
    EXPECT_EQ(empty.rows(), 0);
    EXPECT_EQ(empty.cols(), 2);
    Matrix bad(2, 2);
    bad << 1, 2, 2, 1;
    EXPECT_EQ(kind_of([&] { sample_mvn(Vector::Zero(2), bad, 5, 1); }),
              ErrorKind::NotPositiveDefinite);
}

TEST(SampleMvt1, StandardCauchyQuantiles) {
    const Matrix x = sample_mvt1(Vector::Zero(1), Matrix::Identity(1, 1), 100000, 23);
    const auto v = column(x, 0);
    EXPECT_NEAR(quantile(v, 0.5), 0.0, 0.05);
    EXPECT_NEAR(quantile(v, 0.75) - quantile(v, 0.25), 2.0, 0.1);
}

TEST(SampleMvt1, ShiftedMedianAndDeterminism) {
    const Vector mean = Vector::Constant(3, 10.0);
    const Matrix x = sample_mvt1(mean, build_covariance(3, 0.5, 1.0), 100000, 29);
    for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(quantile(column(x, j), 0.5), 10.0, 0.1);
    EXPECT_EQ(sample_mvt1(mean, Matrix::Identity(3, 3), 100, 5),
              sample_mvt1(mean, Matrix::Identity(3, 3), 100, 5));
}

TEST(DeriveSeed, DistinctStreams) {
    EXPECT_EQ(derive_seed(1, 0), derive_seed(1, 0));
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(OracleDensities, MatchClosedForms) {
    ScenarioConfig s = table_scenario(Suite::Table1, 1, 2, 1000);
    const OracleDensities normal = oracle_densities(s);
    // control is N(0, [[2,2],[2,5]]), det 6
    EXPECT_NEAR(normal.control_logpdf(Vector::Zero(2)), -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(6.0),
                1e-14);
    s.family = Family::T1;
    const OracleDensities t1 = oracle_densities(s);
    // bivariate t(1) at its centre: 1 / (2 pi sqrt(det))
    EXPECT_NEAR(t1.control_logpdf(Vector::Zero(2)), -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(6.0),
                1e-14);
    Vector x(2);
    x << 1.0, 0.0;
    // quadratic form 5/6 at (1,0)
    EXPECT_NEAR(t1.control_logpdf(x),
                -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(6.0) - 1.5 * std::log1p(5.0 / 6.0), 1e-14);
}

TEST(MarginalDensityPairs, CauchyAndNormal) {
    ScenarioConfig s = table_scenario(Suite::Table2, 1, 2, 1000);
    const auto pairs = marginal_density_pairs(s);
    ASSERT_EQ(pairs.size(), 2u);
    // case first coordinate: Cauchy(0.5, sqrt 10)
    EXPECT_NEAR(pairs[0].case_density(0.5), 1.0 / (std::numbers::pi * std::sqrt(10.0)), 1e-15);
    EXPECT_NEAR(pairs[1].control_density(0.0), 1.0 / (std::numbers::pi * std::sqrt(5.0)), 1e-15);
    s.family = Family::Normal;
    const auto normal = marginal_density_pairs(s);
    EXPECT_NEAR(normal[0].control_density(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi * 2.0), 1e-15);
}

TEST(ScenarioConfig, Validation) {
    ScenarioConfig s;
    s.validate();
    auto bad = [](auto mutate) {
        ScenarioConfig c;
        mutate(c);
        return kind_of([&] { c.validate(); });
    };
    EXPECT_EQ(bad([](ScenarioConfig& c) { c.rho_case = 1.0; }), ErrorKind::ConfigError);
    EXPECT_EQ(bad([](ScenarioConfig& c) { c.size = 11; }), ErrorKind::ConfigError);
    EXPECT_EQ(bad([](ScenarioConfig& c) { c.replicates = 0; }), ErrorKind::ConfigError);
    EXPECT_EQ(bad([](ScenarioConfig& c) { c.dim = 0; }), ErrorKind::ConfigError);
    EXPECT_EQ(bad([](ScenarioConfig& c) { c.case_cov = Matrix::Identity(3, 3); }),
              ErrorKind::ConfigError);
    try {
        ScenarioConfig c;
        c.rho_control = -2.0;
        c.validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("rho_control"), std::string::npos);
    }
}

TEST(DrawReplicate, BalancedFiveToOneSplit) {
    const ScenarioConfig s = table_scenario(Suite::Table1, 2, 3, 1000);
    const ReplicateData d = draw_replicate(s, 0);
    EXPECT_EQ(d.case_train.rows(), 417);
    EXPECT_EQ(d.control_train.rows(), 417);
    EXPECT_EQ(d.case_test.rows(), 83);
    EXPECT_EQ(d.control_test.rows(), 83);
    const ReplicateData again = draw_replicate(s, 0);
    EXPECT_EQ(d.case_test, again.case_test);
    EXPECT_NE(d.case_test, draw_replicate(s, 1).case_test);
    // odd size: one row dropped, classes stay equal
    const ReplicateData odd = draw_replicate(table_scenario(Suite::Table1, 1, 2, 101), 0);
    EXPECT_EQ(odd.case_train.rows() + odd.case_test.rows(), 50);
    EXPECT_EQ(odd.control_train.rows(), odd.case_train.rows());
}

TEST(RunExperiment, OracleOnNormalScenario) {
    const ScenarioConfig s = table_scenario(Suite::Table1, 1, 2, 1000);
    const std::vector<Method> methods = {Method::T};
    const AccuracyReport r = run_experiment(s, methods);
    EXPECT_NEAR(r.at(Method::T).mean, 75.0, 5.0);
    EXPECT_EQ(r.at(Method::T).replicates, 25u);
    EXPECT_EQ(r.at(Method::T).failures, 0u);
}

TEST(RunExperiment, QdaOnHeavyTails) {
    const ScenarioConfig s = table_scenario(Suite::Table2, 1, 2, 1000);
    const std::vector<Method> methods = {Method::Q};
    EXPECT_NEAR(run_experiment(s, methods).at(Method::Q).mean, 52.0, 5.0);
}

TEST(RunExperiment, TrueParameterQdaMatchesOracle) {
    const ScenarioConfig s = table_scenario(Suite::Table1, 1, 2, 1000);
    const QdaModel truth{s.case_mean(), CovModel::from_sigma(s.case_covariance()),
                         s.control_mean(), CovModel::from_sigma(s.control_covariance())};
    double total = 0.0;
    for (std::size_t r = 0; r < 25; ++r) {
        const ReplicateData d = draw_replicate(s, r);
        std::size_t right = 0;
        for (Eigen::Index i = 0; i < d.case_test.rows(); ++i) {
            right += predicts_case(qda_log_ratio(truth, d.case_test.row(i).transpose()));
        }
        for (Eigen::Index i = 0; i < d.control_test.rows(); ++i) {
            right += !predicts_case(qda_log_ratio(truth, d.control_test.row(i).transpose()));
        }
        total += 100.0 * static_cast<double>(right) /
                 static_cast<double>(d.case_test.rows() + d.control_test.rows());
    }
    EXPECT_NEAR(total / 25.0, 75.0, 5.0);
}

TEST(RunExperiment, IndistinguishableClassesNearChance) {
    ScenarioConfig s;
    s.case_mean_shift = 0.0;
    s.rho_case = s.rho_control = 0.3;
    s.case_variance_scale = s.control_variance_scale = 1.0;
    s.dim = 3;
    const std::vector<Method> methods = {Method::E, Method::J, Method::Q, Method::T, Method::H};
    const AccuracyReport r = run_experiment(s, methods);
    for (const auto& m : r.methods) {
        EXPECT_NEAR(m.mean, 50.0, 5.0) << to_string(m.method);
        EXPECT_GE(m.sd, 0.0);
    }
}

TEST(RunExperiment, DeterministicAndSingleReplicate) {
    ScenarioConfig s = table_scenario(Suite::Table2, 2, 3, 300);
    s.replicates = 5;
    const std::vector<Method> methods = {Method::E, Method::Q, Method::H};
    const AccuracyReport a = run_experiment(s, methods), b = run_experiment(s, methods);
    for (std::size_t i = 0; i < methods.size(); ++i) {
        EXPECT_EQ(a.methods[i].mean, b.methods[i].mean);
        EXPECT_EQ(a.methods[i].sd, b.methods[i].sd);
    }
    s.replicates = 1;
    for (const auto& m : run_experiment(s, methods).methods) EXPECT_EQ(m.sd, 0.0);
    EXPECT_THROW(a.at(Method::T), std::out_of_range);
    EXPECT_EQ(kind_of([&] { run_experiment(s, std::vector<Method>{}); }), ErrorKind::ConfigError);
}

TEST(RunExperiment, LabelSwapSymmetry) {
    const ScenarioConfig s = table_scenario(Suite::Table1, 2, 3, 1000);
    ScenarioConfig swapped = s;
    swapped.case_cov = s.control_covariance();
    swapped.control_cov = s.case_covariance();
    swapped.case_mean_shift = -s.case_mean_shift;
    swapped.seed = 777;
    const std::vector<Method> methods = {Method::E, Method::J, Method::Q, Method::T, Method::H};
    const AccuracyReport a = run_experiment(s, methods), b = run_experiment(swapped, methods);
    for (std::size_t i = 0; i < methods.size(); ++i) {
        EXPECT_NEAR(a.methods[i].mean, b.methods[i].mean, 3.0) << to_string(methods[i]);
    }
}

TEST(RunExperiment, OracleDominatesOnSmallGrid) {
    for (Suite suite : {Suite::Table1, Suite::Table2}) {
        for (int row : {1, 3}) {
            const ScenarioConfig s = table_scenario(suite, row, 3, 600);
            const std::vector<Method> methods = {Method::E, Method::J, Method::Q, Method::T};
            const AccuracyReport r = run_experiment(s, methods);
            for (const auto& m : r.methods) {
                EXPECT_GE(r.at(Method::T).mean, m.mean - 2.0)
                    << to_string(suite) << " row " << row << " " << to_string(m.method);
            }
        }
    }
}

} // namespace
} // namespace eda
