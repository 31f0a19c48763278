#ifndef EDA_JACOBIAN_HPP
#define EDA_JACOBIAN_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "eda/normalization.hpp"
#include "eda/types.hpp"

namespace eda {

/// Window configuration for the rank-spacing density estimate.
///
/// `k_fraction` is the share of a class's sample that the two-sided window
/// covers; the one-sided half width is k = max(1, round(k_fraction * n / 2)),
/// computed separately for each class from its own n. Spans shorter than
/// `spacing_floor_rel` times the feature's range are floored.
struct JacobianConfig {
    double k_fraction = 0.8;
    double spacing_floor_rel = 1e-12;

    /// Throws ConfigError unless 0 < k_fraction <= 1 and spacing_floor_rel > 0.
    void validate() const;
};

/// One-sided window half width for a class of `n` samples.
std::size_t window_half_width(double k_fraction, std::size_t n);

/// Local density estimate at x from rank spacings.
///
/// With i = feature.rank(x), lo = max(1, i - k) and hi = min(n, i + k - 1),
/// returns (hi - lo) / (n * span) where span = max(values[hi], x) -
/// min(values[lo], x) floored at spacing_floor_rel * (max - min), so the
/// estimate decays for queries beyond the sample. When the clamped window
/// collapses to a single index (i = 1, k = 1) it is widened to [1, 2].
/// Throws DegenerateFeature if the span is zero and no floor applies.
double window_density(const SortedFeature& feature, double x, std::size_t k,
                      double spacing_floor_rel = JacobianConfig{}.spacing_floor_rel);

/// Estimated control-over-case marginal density ratio at x.
double jacobian_ratio(const SortedFeature& case_feature, const SortedFeature& control_feature,
                      double x, const JacobianConfig& cfg);

/// Known per-coordinate marginal densities of both classes.
struct MarginalDensityPair {
    std::function<double(double)> case_density;
    std::function<double(double)> control_density;
};

/// control_density(x) / case_density(x); +inf when the case density is zero.
double theoretical_jacobian(const MarginalDensityPair& pair, double x);

/// Chooses the grid value with the best stratified cross-validated accuracy
/// of the full EDA classifier. Ties go to the larger fraction. Folds are
/// assigned from `seed`, so the choice is reproducible.
JacobianConfig select_k(const Matrix& case_data, const Matrix& control_data,
                        std::span<const double> grid, std::size_t folds, std::uint64_t seed);

} // namespace eda

#endif
