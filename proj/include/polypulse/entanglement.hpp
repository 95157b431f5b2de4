#pragma once

#include <Eigen/Dense>

#include "polypulse/operators.hpp"

namespace polypulse {

/// Two-qubit concurrence C = max(0, mu1 - mu2 - mu3 - mu4) from the decreasing
/// square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const MatrixXcd& rho);

/// Entanglement of formation E = h((1 + sqrt(1 - C^2))/2), h = binary entropy.
double eof(const MatrixXcd& rho);

}  // namespace polypulse
