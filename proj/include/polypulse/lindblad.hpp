#pragma once

#include <Eigen/Dense>

#include "polypulse/operators.hpp"
#include "polypulse/pulse.hpp"

namespace polypulse {

struct SimConfig {
    int n_qubits = 2;
    int fock_cutoff = 12;
    int steps = 400;
    double leakage_threshold = 1e-8;

    void validate() const;
};

/// Density matrix on (2^N qubits) x (truncated Fock bus).
struct QuantumState {
    int n_qubits = 2;
    int fock_cutoff = 12;
    MatrixXcd rho;

    /// Hermiticity / unit trace / positivity within stated tolerances.
    void validate() const;
};

/// Product state (pure qubit vector) x (bus density matrix).
QuantumState make_initial(const Eigen::VectorXcd& qubit_state, const MatrixXcd& bus_state,
                          int n_qubits);

struct SimResult {
    MatrixXcd final_qubit_state;   // reduced density matrix, 2^N x 2^N
    double gate_fidelity = 0.0;
    double concurrence = 0.0;      // N = 2 only, else 0
    double eof = 0.0;              // N = 2 only, else 0
    double leakage = 0.0;          // max population of the top two Fock levels
    double trace_drift = 0.0;      // max |tr rho - 1| over checkpoints
};

/// Thrown when population reaches the truncation boundary; retry_cutoff is a
/// suggested larger Fock dimension.
struct CutoffTooSmall : std::runtime_error {
    int retry_cutoff;
    explicit CutoffTooSmall(double leakage, int retry);
};

/// Fixed-step RK4 integration of
///   drho/dt = -i[H(t), rho] + sum_j gamma_j D_{E_j}[rho]
/// with H(t) = (Upsilon(t) a + Upsilon*(t) a^dag) S_x over one gate period.
/// Trace drift is monitored, never corrected. Gate fidelity is evaluated
/// against exp(-i pi/8 S_x^2) applied to the initial qubit state, which the
/// propagator realizes exactly for calibrated pulses at zero dissipation.
SimResult propagate(const QuantumState& initial, const PulseSpec& pulse,
                    const EnvironmentRates& rates, const SimConfig& config);

/// Operator-norm distance at time t between the numerically propagated unitary
/// (zero dissipation) and the closed form exp(-i((f a + f* a^dag) S_x + g S_x^2)),
/// both restricted to Fock levels with headroom below the truncation boundary.
double interaction_frame_check(const PulseSpec& pulse, const SimConfig& config, double t);

/// exp(-i (pi/8) S_x^2) |psi>.
Eigen::VectorXcd ideal_state(const Eigen::VectorXcd& initial_qubits, int N);

/// (1 - EoF_mono) / (1 - EoF_poly) for gates of equal duration, qubits |00>,
/// bus ground state, N = 2.
double improvement_RE(int m, const EnvironmentRates& rates, const SimConfig& config);

}  // namespace polypulse
