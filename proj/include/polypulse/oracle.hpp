#pragma once

#include "polypulse/operators.hpp"
#include "polypulse/zeta.hpp"

namespace polypulse {

/// Brute-force construction of the first-order error map
///   Xi(X) = sum_j gamma_j int_0^T dt tr_B D_{E~_j(t)}[X (x) rho_B]
/// from the interaction-frame Lindblad operators, followed by a
/// Hilbert-Schmidt projection onto the basis {xi_i X xi_j}.
///
/// `bus_state` is a truncated-Fock density matrix; its tail population must be
/// negligible at the chosen cutoff. `points` selects the uniform time grid
/// (defaulted from the pulse bandwidth when <= 0; the integrands are
/// trigonometric polynomials of degree <= 4m, so 16m+1 points integrate them
/// exactly).
///
/// Throws std::runtime_error if the projection residual (the part of the map
/// outside the five-operator span) exceeds 1e-8 relative. Requires 2 <= N <= 6.
struct ZetaOracleResult {
    ZetaMatrix zeta;
    double residual = 0.0;
};

ZetaOracleResult zeta_oracle(const PulseSpec& pulse, int N, const EnvironmentRates& rates,
                             const MatrixXcd& bus_state, int points = 0);

}  // namespace polypulse
