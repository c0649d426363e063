#pragma once

// Periodic-grid Fourier helpers shared by the one-form refinement and the Arc
// projection.

#include <Eigen/Dense>

namespace norbrack::detail {

/// Divides mode k of u by (1 + sigma_k) / 2, where sigma_k = (8 cos(kh) -
/// 2 cos(2kh)) / 6 is the discrete product-rule factor of the five-point
/// stencil. Modes whose gain falls below `floor` are dropped.
Eigen::VectorXd precondition_product_rule(const Eigen::VectorXd& u, double floor);

/// Mean-zero solution psi of deriv_theta(psi) = rhs, ignoring the parts of
/// rhs the difference operator cannot produce (the mean and the Nyquist mode).
Eigen::VectorXd invert_deriv_theta(const Eigen::VectorXd& rhs);

} // namespace norbrack::detail
