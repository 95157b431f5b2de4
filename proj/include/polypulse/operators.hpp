#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "polypulse/moments.hpp"

namespace polypulse {

using MatrixXcd = Eigen::MatrixXcd;

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

/// sigma_x acting on qubit `site` of an N-qubit register (dimension 2^N).
MatrixXcd sigma_x_on(int N, int site);

/// Collective S_x = sum_j sigma_x^(j).
MatrixXcd collective_sx(int N);

/// Normalized collective operator basis {xi_0 = 1, xi_1, ..., xi_4} with
/// xi_i = binom(N,i)^{-1/2} * sum over weight-i sigma_x strings; the zero
/// matrix for i > N.
std::array<MatrixXcd, 5> xi_operators(int N);

/// Truncated-Fock annihilation operator (d x d).
MatrixXcd destroy(int dim);

/// Bus density matrices on a truncated Fock space.
MatrixXcd fock_state(int dim, int n);
MatrixXcd coherent_state(int dim, complexd alpha);
/// Truncated, renormalized thermal state; dim must leave tail weight <= tail.
MatrixXcd thermal_state(int dim, double nbar);
/// Smallest cutoff whose discarded thermal tail is <= tail.
int thermal_cutoff(double nbar, double tail = 1e-10);

/// <n>, <a>, <a^2> of a truncated bus density matrix.
BusMoments bus_moments_of(const MatrixXcd& rho);

}  // namespace polypulse
