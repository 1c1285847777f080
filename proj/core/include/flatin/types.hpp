#pragma once

#include <Eigen/Dense>

namespace flatin {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// True when every coefficient is finite.
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}

}  // namespace flatin
