#ifndef EDA_NORMALIZATION_HPP
#define EDA_NORMALIZATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "eda/types.hpp"

namespace eda {

/// Ascending-sorted training values of a single feature. This is the
/// empirical distribution function of that coordinate.
class SortedFeature {
public:
    /// Sorts `values`. Throws EmptyClass when fewer than two values are given
    /// and NonFiniteValue on NaN or infinity.
    explicit SortedFeature(std::vector<double> values);

    /// Adopts values that must already be non-decreasing (model loading).
    static SortedFeature from_sorted(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

    /// 1-based index of the smallest value >= x, clamped to [1, n]. Tied
    /// values resolve to the first of the run.
    std::size_t rank(double x) const noexcept;

    /// values[r - 1] for a 1-based rank r.
    double at_rank(std::size_t r) const noexcept { return values_[r - 1]; }

private:
    struct presorted_tag {};
    SortedFeature(std::vector<double> values, presorted_tag);

    std::vector<double> values_;
};

/// Per-coordinate empirical normalizing map for one class.
class MarginalNormalizer {
public:
    explicit MarginalNormalizer(std::vector<SortedFeature> features);

    std::size_t dim() const noexcept { return features_.size(); }
    std::size_t sample_count() const noexcept { return features_.front().size(); }
    const SortedFeature& feature(std::size_t j) const { return features_.at(j); }
    const std::vector<SortedFeature>& features() const noexcept { return features_; }

private:
    std::vector<SortedFeature> features_;
};

/// Fits one SortedFeature per column of `data` (rows are samples).
MarginalNormalizer fit_normalizer(const Matrix& data);

/// Balanced empirical CDF: (R(x) - 1/2) / n, always inside (0, 1).
double uniformize(const SortedFeature& feature, double x);

/// Standard normal quantile. Throws DomainError outside (0, 1).
double invnorm(double p);

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

/// log g(z) for the standard normal density g.
double normal_log_density(double z) noexcept;

/// Componentwise invnorm(uniformize(feature_j, x_j)).
Vector normalize_point(const MarginalNormalizer& normalizer, const Vector& x);

/// normalize_point applied to every row of `data`.
Matrix normalize_rows(const MarginalNormalizer& normalizer, const Matrix& data);

} // namespace eda

#endif
