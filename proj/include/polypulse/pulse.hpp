#pragma once

#include <complex>
#include <vector>

namespace polypulse {

using complexd = std::complex<double>;

/// One Fourier component of a drive pulse: unitless complex amplitude at
/// harmonic j of the fundamental frequency.
struct PulseComponent {
    int harmonic = 1;
    complexd amplitude{0.0, 0.0};
};

/// Fourier-series drive Upsilon(t) = sum_j c_j * omega * exp(i j omega t).
/// Components are kept sorted by strictly increasing harmonic index.
struct PulseSpec {
    double fundamental_frequency = 1.0;
    std::vector<PulseComponent> components;
    /// Set when the gate condition sum_j |c_j|^2 / j = 1/16 holds.
    bool calibrated = false;

    double period() const;
    int max_harmonic() const;
    /// Throws std::invalid_argument on unsorted harmonics, harmonic < 1,
    /// non-positive frequency, or a stale calibration flag.
    void validate() const;
};

/// Root of sum_{j=1..m} (1 - j*lambda)^{-1} = 0 in (1/m, 1/(m-1)), together
/// with the normalization b of the optimal amplitudes c_j = j*b/(1-j*lambda).
struct LambdaSolution {
    int m = 2;
    double lambda = 0.0;
    double b = 0.0;
};

struct TrajectoryPoint {
    double t = 0.0;
    double f_re = 0.0;
    double f_im = 0.0;
    double g = 0.0;
};

/// Smallest root of sum_{j=1..m} 1/(1 - j*lambda) = 0, bracketed between the
/// poles at 1/m and 1/(m-1). Requires m >= 2.
LambdaSolution solve_lambda(int m);

/// Optimal m-frequency pulse: real amplitudes c_j = j*b/(1-j*lambda),
/// satisfying both the gate condition and the zero-mean constraint
/// sum_j c_j/j = 0. Requires m >= 2.
PulseSpec optimal_pulse(int m, double omega);

/// Conventional single-frequency reference: one component at harmonic m with
/// c_m = sqrt(m)/4, i.e. detuning m*omega run for the full duration T.
/// Requires m >= 1.
PulseSpec monochromatic_pulse(int m, double omega);

/// Drive amplitude Upsilon(t).
complexd upsilon(const PulseSpec& pulse, double t);

/// Displacement f(t) = -i sum_j (c_j/j)(exp(i j omega t) - 1), the closed-form
/// time integral of Upsilon.
complexd displacement(const PulseSpec& pulse, double t);

/// Accumulated phase g(t) = Im int_0^t Upsilon(t') f*(t') dt', via exact
/// term-wise antiderivatives. g(T) = 2*pi * sum_j |c_j|^2 / j.
double accumulated_phase(const PulseSpec& pulse, double t);

/// Drive intensity sum_j |c_j * omega|^2.
double intensity(const PulseSpec& pulse);

/// Uniformly sampled phase-space trajectory over [0, T]. Requires samples >= 2.
std::vector<TrajectoryPoint> trajectory(const PulseSpec& pulse, int samples);

}  // namespace polypulse
