#include "eda/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eda/error.hpp"

namespace eda {

void JacobianConfig::validate() const {
    if (!(k_fraction > 0.0 && k_fraction <= 1.0)) {
        throw Error(ErrorKind::ConfigError,
                    "k_fraction must lie in (0, 1], got " + std::to_string(k_fraction));
    }
    if (!(spacing_floor_rel > 0.0) || !std::isfinite(spacing_floor_rel)) {
        throw Error(ErrorKind::ConfigError, "spacing_floor_rel must be positive");
    }
}

std::size_t window_half_width(double k_fraction, std::size_t n) {
    const double k = std::round(k_fraction * static_cast<double>(n) / 2.0);
    return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

double window_density(const SortedFeature& feature, double x, std::size_t k,
                      double spacing_floor_rel) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::NonFiniteValue, "window_density: non-finite query");
    }
    if (k == 0) {
        throw Error(ErrorKind::ConfigError, "window_density: k must be at least 1");
    }
    const std::size_t n = feature.size();
    const std::size_t i = feature.rank(x);
    const std::size_t lo = i > k ? i - k : 1;
    std::size_t hi = std::min(n, i + k - 1);
    if (hi == lo) hi = lo + 1;

    const double range = feature.max() - feature.min();
    // A constant feature has no range to scale the floor by; fall back to
    // the magnitude of its value.
    const double floor = range > 0.0
                             ? spacing_floor_rel * range
                             : spacing_floor_rel * std::max(std::abs(feature.min()), 1.0);
    // A query outside the sample range stretches the window out to itself.
    const double right = std::max(feature.at_rank(hi), x);
    const double left = std::min(feature.at_rank(lo), x);
    const double span = std::max(right - left, floor);
    if (!(span > 0.0)) {
        throw Error(ErrorKind::DegenerateFeature,
                    "window_density: zero spacing with the floor disabled");
    }
    return static_cast<double>(hi - lo) / (static_cast<double>(n) * span);
}

double jacobian_ratio(const SortedFeature& case_feature, const SortedFeature& control_feature,
                      double x, const JacobianConfig& cfg) {
    const std::size_t k_case = window_half_width(cfg.k_fraction, case_feature.size());
    const std::size_t k_control = window_half_width(cfg.k_fraction, control_feature.size());
    return window_density(control_feature, x, k_control, cfg.spacing_floor_rel) /
           window_density(case_feature, x, k_case, cfg.spacing_floor_rel);
}

double theoretical_jacobian(const MarginalDensityPair& pair, double x) {
    const double case_density = pair.case_density(x);
    if (!(case_density > 0.0)) return std::numeric_limits<double>::infinity();
    return pair.control_density(x) / case_density;
}

} // namespace eda
