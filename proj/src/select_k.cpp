#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "eda/discriminants.hpp"
#include "eda/error.hpp"
#include "eda/jacobian.hpp"

namespace eda {

namespace {

// Fold index per row: rows are shuffled and dealt round-robin.
std::vector<std::size_t> assign_folds(Eigen::Index rows, std::size_t folds, std::mt19937_64& rng) {
    std::vector<std::size_t> order(static_cast<std::size_t>(rows));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> fold(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) fold[order[pos]] = pos % folds;
    return fold;
}

Matrix select_rows(const Matrix& data, const std::vector<std::size_t>& fold, std::size_t k,
                   bool in_fold) {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < fold.size(); ++i) {
        if ((fold[i] == k) == in_fold) rows.push_back(static_cast<Eigen::Index>(i));
    }
    Matrix out(static_cast<Eigen::Index>(rows.size()), data.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.row(static_cast<Eigen::Index>(r)) = data.row(rows[r]);
    }
    return out;
}

} // namespace

JacobianConfig select_k(const Matrix& case_data, const Matrix& control_data,
                        std::span<const double> grid, std::size_t folds, std::uint64_t seed) {
    if (grid.empty()) throw Error(ErrorKind::ConfigError, "select_k: empty grid");
    if (folds < 2) throw Error(ErrorKind::ConfigError, "select_k: need at least 2 folds");
    for (double f : grid) JacobianConfig{f}.validate();

    // Each training split must keep at least two rows per class.
    const auto min_rows = static_cast<Eigen::Index>(std::max<std::size_t>(folds, 3));
    if (case_data.rows() < min_rows || control_data.rows() < min_rows) {
        throw Error(ErrorKind::TooFewSamples,
                    "select_k: each class needs at least " + std::to_string(min_rows) +
                        " rows for " + std::to_string(folds) + "-fold cross-validation");
    }

    std::mt19937_64 rng(seed);
    const auto case_fold = assign_folds(case_data.rows(), folds, rng);
    const auto control_fold = assign_folds(control_data.rows(), folds, rng);

    // Every grid value is scored on the same held-out rows, so counts compare
    // like mean accuracies.
    std::vector<std::size_t> correct(grid.size(), 0);
    for (std::size_t k = 0; k < folds; ++k) {
        const Matrix case_train = select_rows(case_data, case_fold, k, false);
        const Matrix control_train = select_rows(control_data, control_fold, k, false);
        const Matrix case_test = select_rows(case_data, case_fold, k, true);
        const Matrix control_test = select_rows(control_data, control_fold, k, true);

        // The normalizers and covariances do not depend on k_fraction.
        EdaModel model = fit_eda(case_train, control_train, JacobianConfig{grid.front()});
        for (std::size_t g = 0; g < grid.size(); ++g) {
            model.jacobian.k_fraction = grid[g];
            for (Eigen::Index i = 0; i < case_test.rows(); ++i) {
                if (predicts_case(eda_log_ratio(model, case_test.row(i).transpose()))) ++correct[g];
            }
            for (Eigen::Index i = 0; i < control_test.rows(); ++i) {
                if (!predicts_case(eda_log_ratio(model, control_test.row(i).transpose()))) {
                    ++correct[g];
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
        if (correct[g] > correct[best] ||
            (correct[g] == correct[best] && grid[g] > grid[best])) {
            best = g;
        }
    }
    return JacobianConfig{grid[best]};
}

} // namespace eda
