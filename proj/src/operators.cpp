#include "polypulse/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace polypulse {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXcd sigma_x_on(int N, int site) {
    if (site < 0 || site >= N) throw std::invalid_argument("sigma_x_on: site out of range");
    const Eigen::Index dim = Eigen::Index{1} << N;
    MatrixXcd op = MatrixXcd::Zero(dim, dim);
    const Eigen::Index bit = Eigen::Index{1} << (N - 1 - site);
    for (Eigen::Index k = 0; k < dim; ++k) op(k ^ bit, k) = 1.0;
    return op;
}

MatrixXcd collective_sx(int N) {
    const Eigen::Index dim = Eigen::Index{1} << N;
    MatrixXcd s = MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < N; ++j) s += sigma_x_on(N, j);
    return s;
}

std::array<MatrixXcd, 5> xi_operators(int N) {
    const Eigen::Index dim = Eigen::Index{1} << N;
    std::array<MatrixXcd, 5> xi;
    for (auto& x : xi) x = MatrixXcd::Zero(dim, dim);
    xi[0] = MatrixXcd::Identity(dim, dim);
    // Enumerate sigma_x strings by the bit mask of flipped qubits.
    std::vector<double> binom(5, 0.0);
    for (int i = 1; i <= 4 && i <= N; ++i) {
        double b = 1.0;
        for (int k = 0; k < i; ++k) b = b * (N - k) / (k + 1);
        binom[i] = b;
    }
    for (Eigen::Index mask = 1; mask < dim; ++mask) {
        const int weight = static_cast<int>(__builtin_popcountll(mask));
        if (weight > 4) continue;
        for (Eigen::Index k = 0; k < dim; ++k) xi[weight](k ^ mask, k) += 1.0;
    }
    for (int i = 1; i <= 4 && i <= N; ++i) xi[i] /= std::sqrt(binom[i]);
    return xi;
}

MatrixXcd destroy(int dim) {
    if (dim < 2) throw std::invalid_argument("destroy: dim must be >= 2");
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

MatrixXcd fock_state(int dim, int n) {
    if (n < 0 || n >= dim) throw std::invalid_argument("fock_state: level out of range");
    MatrixXcd rho = MatrixXcd::Zero(dim, dim);
    rho(n, n) = 1.0;
    return rho;
}

MatrixXcd coherent_state(int dim, complexd alpha) {
    Eigen::VectorXcd psi(dim);
    complexd amp = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        psi(n) = amp;
        amp *= alpha / std::sqrt(n + 1.0);
    }
    psi /= psi.norm();
    return psi * psi.adjoint();
}

MatrixXcd thermal_state(int dim, double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
    MatrixXcd rho = MatrixXcd::Zero(dim, dim);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    const double q = nbar / (nbar + 1.0);
    double p = 1.0 - q, total = 0.0;
    for (int n = 0; n < dim; ++n, p *= q) {
        rho(n, n) = p;
        total += p;
    }
    rho /= total;
    return rho;
}

int thermal_cutoff(double nbar, double tail) {
    if (nbar <= 0.0) return 2;
    const double q = nbar / (nbar + 1.0);
    // tail weight beyond level d-1 is q^d
    const int d = static_cast<int>(std::ceil(std::log(tail) / std::log(q)));
    return std::max(d, 2);
}

BusMoments bus_moments_of(const MatrixXcd& rho) {
    const int dim = static_cast<int>(rho.rows());
    const MatrixXcd a = destroy(dim);
    BusMoments b;
    b.n_mean = (a.adjoint() * a * rho).trace().real();
    b.a_mean = (a * rho).trace();
    b.a2_mean = (a * a * rho).trace();
    return b;
}

}  // namespace polypulse
