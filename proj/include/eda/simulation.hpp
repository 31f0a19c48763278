#ifndef EDA_SIMULATION_HPP
#define EDA_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eda/discriminants.hpp"
#include "eda/jacobian.hpp"
#include "eda/types.hpp"

namespace eda {

enum class Family { Normal, T1 };

/// E: empirical normalization with estimated Jacobian; J: same with the
/// true marginal densities; Q: Gaussian QDA; T: Bayes oracle; H: rank-only.
enum class Method { E, J, Q, T, H };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(Method method) noexcept;
std::optional<Family> parse_family(std::string_view text) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

/// One simulated two-class problem. The control class is centred at the
/// origin; the case class is shifted by `case_mean_shift` along the first
/// coordinate. Covariances follow rho^|i-j| * sqrt(v_i v_j) with
/// v_i = variance_scale * i unless an explicit matrix is given.
struct ScenarioConfig {
    Family family = Family::Normal;
    std::size_t dim = 2;
    double case_mean_shift = 1.0;
    double rho_case = 0.9;
    double rho_control = 0.1;
    double case_variance_scale = 2.0;
    double control_variance_scale = 1.0;
    std::optional<Matrix> case_cov;
    std::optional<Matrix> control_cov;
    std::size_t size = 1000;
    std::size_t train_parts = 5;
    std::size_t test_parts = 1;
    std::size_t replicates = 25;
    std::uint64_t seed = 1;
    double k_fraction = 0.8;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    Vector case_mean() const;
    Vector control_mean() const;
    Matrix case_covariance() const;
    Matrix control_covariance() const;
};

struct MethodAccuracy {
    Method method;
    double mean = 0.0;  // percent
    double sd = 0.0;    // percent, across successful replicates
    std::size_t replicates = 0;
    std::size_t failures = 0;
};

struct AccuracyReport {
    std::vector<MethodAccuracy> methods;

    /// Throws std::out_of_range if the method was not run.
    const MethodAccuracy& at(Method method) const;
};

/// rho^|i-j| * sqrt(v_i v_j) with v_i = variance_scale * i, i starting at 1.
/// Throws NotPositiveDefinite if the result cannot be factored.
Matrix build_covariance(std::size_t dim, double rho, double variance_scale);

/// Rows are mean + L u with u standard normal and L L' = sigma.
Matrix sample_mvn(const Vector& mean, const Matrix& sigma, std::size_t count,
                  std::uint64_t seed);

/// Rows are mean + (L u) / sqrt(w) with w ~ chi-square(1) drawn per row.
Matrix sample_mvt1(const Vector& mean, const Matrix& sigma, std::size_t count,
                   std::uint64_t seed);

/// Deterministic child seed for (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Exact class log-densities of the scenario.
OracleDensities oracle_densities(const ScenarioConfig& scenario);

/// Exact per-coordinate marginal densities of the scenario.
std::vector<MarginalDensityPair> marginal_density_pairs(const ScenarioConfig& scenario);

/// Train/test data of one replicate, balanced between classes.
struct ReplicateData {
    Matrix case_train, control_train, case_test, control_test;
};

ReplicateData draw_replicate(const ScenarioConfig& scenario, std::size_t replicate);

/// Runs `scenario.replicates` independent replicates and reports test
/// accuracy per method. A method that fails to fit on a replicate is
/// excluded for that replicate and counted under `failures`.
AccuracyReport run_experiment(const ScenarioConfig& scenario, std::span<const Method> methods);

enum class Suite { Table1, Table2 };

std::optional<Suite> parse_suite(std::string_view text) noexcept;
std::string_view to_string(Suite suite) noexcept;

/// Scenario for row 1..4 of the normal (Table1) or t(1) (Table2) benchmark.
ScenarioConfig table_scenario(Suite suite, int row, std::size_t dim, std::size_t size);

} // namespace eda

#endif
