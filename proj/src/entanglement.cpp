#include "polypulse/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polypulse {

namespace {

void check_density_matrix(const MatrixXcd& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("concurrence: expected a 4x4 two-qubit density matrix");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("concurrence: density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6 || std::abs(rho.trace().imag()) > 1e-8)
        throw std::invalid_argument("concurrence: density matrix trace is not 1");
}

MatrixXcd spin_flip() {
    // sigma_y (x) sigma_y
    MatrixXcd yy = MatrixXcd::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

}  // namespace

double concurrence(const MatrixXcd& rho) {
    check_density_matrix(rho);
    const MatrixXcd yy = spin_flip();
    const MatrixXcd R = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<MatrixXcd> solver(R, /*computeEigenvectors=*/false);
    std::array<double, 4> mu;
    for (int k = 0; k < 4; ++k)
        mu[k] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double eof(const MatrixXcd& rho) {
    const double c = concurrence(rho);
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    const auto h2 = [](double p) {
        if (p <= 0.0 || p >= 1.0) return 0.0;
        return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    };
    return h2(x);
}

}  // namespace polypulse
