#include "polypulse/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace polypulse {

namespace {

// One A (x) B term of an interaction-frame Lindblad operator, with a
// time-dependent scalar u(t) built from the closed-form displacement.
struct FrameTerm {
    const MatrixXcd* qubit_op;
    const MatrixXcd* bus_op;
    std::function<complexd(complexd)> scalar;  // of f(t)
};

// Adds gamma * int_0^T dt tr_B D_{E(t)}[X (x) rho_B] to the superoperator.
void accumulate_dissipator(MatrixXcd& superop, const std::vector<FrameTerm>& terms,
                           double gamma, const PulseSpec& pulse, int points,
                           const MatrixXcd& rho_bus) {
    const size_t n = terms.size();
    const double T = pulse.period();
    const double weight = T / points;

    // Time quadrature of the scalar factors: W(k,l) = int u_k u_l* dt.
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(n, n);
    for (int q = 0; q < points; ++q) {
        const complexd f = displacement(pulse, T * q / points);
        for (size_t k = 0; k < n; ++k) {
            const complexd uk = terms[k].scalar(f);
            for (size_t l = 0; l < n; ++l)
                W(k, l) += weight * uk * std::conj(terms[l].scalar(f));
        }
    }

    // Bus traces tr(B_l^dag B_k rho) for the sandwich part.
    Eigen::MatrixXcd tr_sand(n, n);
    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l)
            tr_sand(k, l) =
                (terms[l].bus_op->adjoint() * (*terms[k].bus_op) * rho_bus).trace();

    const Eigen::Index dim = terms[0].qubit_op->rows();
    const MatrixXcd id = MatrixXcd::Identity(dim, dim);

    // Sandwich: sum_{k,l} W_kl tr(B_l^dag B_k rho) A_k X A_l^dag.
    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
            const complexd c = gamma * W(k, l) * tr_sand(k, l);
            if (c == complexd{0.0, 0.0}) continue;
            superop += c * kron(terms[l].qubit_op->conjugate(), *terms[k].qubit_op);
        }

    // Anticommutator: G = sum_{k,l} (int u_k* u_l) tr(B_k^dag B_l rho) A_k^dag A_l.
    MatrixXcd G = MatrixXcd::Zero(dim, dim);
    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
            const complexd c =
                std::conj(W(k, l)) *
                (terms[k].bus_op->adjoint() * (*terms[l].bus_op) * rho_bus).trace();
            G += c * terms[k].qubit_op->adjoint() * (*terms[l].qubit_op);
        }
    superop -= 0.5 * gamma * (kron(id, G) + kron(G.transpose(), id));
}

}  // namespace

ZetaOracleResult zeta_oracle(const PulseSpec& pulse, int N, const EnvironmentRates& rates,
                             const MatrixXcd& bus_state, int points) {
    if (N < 2 || N > 6)
        throw std::invalid_argument("zeta_oracle: N must be in [2, 6]");
    rates.validate();
    pulse.validate();
    if (bus_state.rows() != bus_state.cols() || bus_state.rows() < 2)
        throw std::invalid_argument("zeta_oracle: bus_state must be a square Fock matrix");
    if (points <= 0) points = 16 * pulse.max_harmonic() + 1;
    if (points < 4 * pulse.max_harmonic() + 1)
        throw std::invalid_argument("zeta_oracle: too few quadrature points");

    const int bus_dim = static_cast<int>(bus_state.rows());
    const Eigen::Index dim = Eigen::Index{1} << N;

    const MatrixXcd id_q = MatrixXcd::Identity(dim, dim);
    const MatrixXcd S = collective_sx(N);
    const MatrixXcd S2 = S * S;
    const MatrixXcd id_b = MatrixXcd::Identity(bus_dim, bus_dim);
    const MatrixXcd a = destroy(bus_dim);
    const MatrixXcd ad = a.adjoint();
    const MatrixXcd nop = ad * a;

    const complexd iu{0.0, 1.0};
    const auto one = [](complexd) { return complexd{1.0, 0.0}; };

    // E~_- = a - i f* S
    const std::vector<FrameTerm> terms_minus = {
        {&id_q, &a, one},
        {&S, &id_b, [iu](complexd f) { return -iu * std::conj(f); }},
    };
    // E~_+ = a^dag + i f S
    const std::vector<FrameTerm> terms_plus = {
        {&id_q, &ad, one},
        {&S, &id_b, [iu](complexd f) { return iu * f; }},
    };
    // E~_d = n + i(a f - a^dag f*) S + |f|^2 S^2
    const std::vector<FrameTerm> terms_dephase = {
        {&id_q, &nop, one},
        {&S, &a, [iu](complexd f) { return iu * f; }},
        {&S, &ad, [iu](complexd f) { return -iu * std::conj(f); }},
        {&S2, &id_b, [](complexd f) { return complexd{std::norm(f), 0.0}; }},
    };

    MatrixXcd superop = MatrixXcd::Zero(dim * dim, dim * dim);
    if (rates.gamma_minus != 0.0)
        accumulate_dissipator(superop, terms_minus, rates.gamma_minus, pulse, points, bus_state);
    if (rates.gamma_plus != 0.0)
        accumulate_dissipator(superop, terms_plus, rates.gamma_plus, pulse, points, bus_state);
    if (rates.gamma_dephase != 0.0)
        accumulate_dissipator(superop, terms_dephase, rates.gamma_dephase, pulse, points,
                              bus_state);

    // Hilbert-Schmidt projection onto xi_i X xi_j; tr(xi_i xi_k) = 2^N delta_ik.
    const auto xi = xi_operators(N);
    const double dsq = std::pow(2.0, 2 * N);
    ZetaOracleResult result;
    result.zeta.provenance = ZetaProvenance::oracle;
    MatrixXcd remainder = superop;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            if (i > N || j > N) continue;
            const MatrixXcd basis = kron(xi[j], xi[i]);
            const complexd z = (basis.adjoint() * superop).trace() / dsq;
            result.zeta.entries(i, j) = z;
            remainder -= z * basis;
        }
    const double total = superop.norm();
    result.residual = total > 0.0 ? remainder.norm() / total : 0.0;
    if (result.residual > 1e-8)
        throw std::runtime_error(
            "zeta_oracle: projection residual above 1e-8; map leaves the five-operator span");
    return result;
}

}  // namespace polypulse
