#ifndef EDA_TYPES_HPP
#define EDA_TYPES_HPP

#include <Eigen/Dense>

namespace eda {

// Rows are samples, columns are features.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace eda

#endif
