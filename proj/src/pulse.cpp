#include "polypulse/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polypulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sum_{j=1..m} 1/(1 - j*lambda)
double pole_sum(int m, double lambda) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) s += 1.0 / (1.0 - j * lambda);
    return s;
}

double pole_sum_deriv(int m, double lambda) {
    double s = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double d = 1.0 - j * lambda;
        s += static_cast<double>(j) / (d * d);
    }
    return s;
}

}  // namespace

double PulseSpec::period() const { return kTwoPi / fundamental_frequency; }

int PulseSpec::max_harmonic() const {
    return components.empty() ? 0 : components.back().harmonic;
}

void PulseSpec::validate() const {
    if (fundamental_frequency <= 0.0)
        throw std::invalid_argument("pulse: fundamental frequency must be positive");
    int prev = 0;
    for (const auto& c : components) {
        if (c.harmonic < 1)
            throw std::invalid_argument("pulse: harmonic indices must be >= 1");
        if (c.harmonic <= prev)
            throw std::invalid_argument("pulse: harmonics must be strictly increasing");
        prev = c.harmonic;
    }
    if (calibrated) {
        double gate = 0.0;
        for (const auto& c : components)
            gate += std::norm(c.amplitude) / c.harmonic;
        if (std::abs(gate - 1.0 / 16.0) > 1e-12)
            throw std::invalid_argument("pulse: calibration flag set but gate condition violated");
    }
}

LambdaSolution solve_lambda(int m) {
    if (m < 2)
        throw std::invalid_argument(
            "solve_lambda: m must be >= 2 (zero-mean constraint is unsatisfiable for m = 1)");

    // The sum diverges to -inf at lambda -> (1/m)+ and to +inf at
    // lambda -> (1/(m-1))-, so the bracket always contains exactly one root.
    const double eps = 1e-9;
    double lo = 1.0 / m + eps;
    double hi = 1.0 / (m - 1) - eps;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pole_sum(m, mid) < 0.0 ? lo : hi) = mid;
    }
    double lambda = 0.5 * (lo + hi);
    // Newton polish; the derivative is strictly positive inside the bracket.
    for (int it = 0; it < 8; ++it) {
        const double step = pole_sum(m, lambda) / pole_sum_deriv(m, lambda);
        const double next = lambda - step;
        if (next <= 1.0 / m || next >= 1.0 / (m - 1)) break;
        lambda = next;
        if (std::abs(step) < 1e-15) break;
    }

    LambdaSolution sol;
    sol.m = m;
    sol.lambda = lambda;
    sol.b = -0.25 / std::sqrt(pole_sum_deriv(m, lambda));
    return sol;
}

PulseSpec optimal_pulse(int m, double omega) {
    if (omega <= 0.0) throw std::invalid_argument("optimal_pulse: omega must be positive");
    const LambdaSolution sol = solve_lambda(m);
    PulseSpec pulse;
    pulse.fundamental_frequency = omega;
    pulse.components.reserve(m);
    for (int j = 1; j <= m; ++j) {
        const double cj = j * sol.b / (1.0 - j * sol.lambda);
        pulse.components.push_back({j, complexd{cj, 0.0}});
    }
    pulse.calibrated = true;
    pulse.validate();
    return pulse;
}

PulseSpec monochromatic_pulse(int m, double omega) {
    if (m < 1) throw std::invalid_argument("monochromatic_pulse: m must be >= 1");
    if (omega <= 0.0) throw std::invalid_argument("monochromatic_pulse: omega must be positive");
    PulseSpec pulse;
    pulse.fundamental_frequency = omega;
    pulse.components.push_back({m, complexd{std::sqrt(static_cast<double>(m)) / 4.0, 0.0}});
    pulse.calibrated = true;
    return pulse;
}

complexd upsilon(const PulseSpec& pulse, double t) {
    const double w = pulse.fundamental_frequency;
    complexd u{0.0, 0.0};
    for (const auto& c : pulse.components)
        u += c.amplitude * w * std::polar(1.0, c.harmonic * w * t);
    return u;
}

complexd displacement(const PulseSpec& pulse, double t) {
    const double w = pulse.fundamental_frequency;
    const complexd mi{0.0, -1.0};
    complexd f{0.0, 0.0};
    for (const auto& c : pulse.components)
        f += mi * (c.amplitude / static_cast<double>(c.harmonic)) *
             (std::polar(1.0, c.harmonic * w * t) - 1.0);
    return f;
}

double accumulated_phase(const PulseSpec& pulse, double t) {
    const double w = pulse.fundamental_frequency;
    // int_0^t exp(i n w t') dt'
    const auto harmonic_integral = [&](int n) -> complexd {
        if (n == 0) return {t, 0.0};
        const complexd inw{0.0, n * w};
        return (std::polar(1.0, n * w * t) - 1.0) / inw;
    };
    const complexd i_unit{0.0, 1.0};
    complexd acc{0.0, 0.0};
    for (const auto& cj : pulse.components) {
        for (const auto& ck : pulse.components) {
            const complexd pref =
                i_unit * w * cj.amplitude * std::conj(ck.amplitude) /
                static_cast<double>(ck.harmonic);
            acc += pref * (harmonic_integral(cj.harmonic - ck.harmonic) -
                           harmonic_integral(cj.harmonic));
        }
    }
    return acc.imag();
}

double intensity(const PulseSpec& pulse) {
    const double w2 = pulse.fundamental_frequency * pulse.fundamental_frequency;
    double s = 0.0;
    for (const auto& c : pulse.components) s += std::norm(c.amplitude) * w2;
    return s;
}

std::vector<TrajectoryPoint> trajectory(const PulseSpec& pulse, int samples) {
    if (samples < 2) throw std::invalid_argument("trajectory: need at least 2 samples");
    std::vector<TrajectoryPoint> pts;
    pts.reserve(samples);
    const double T = pulse.period();
    for (int k = 0; k < samples; ++k) {
        const double t = T * k / (samples - 1);
        const complexd f = displacement(pulse, t);
        pts.push_back({t, f.real(), f.imag(), accumulated_phase(pulse, t)});
    }
    return pts;
}

}  // namespace polypulse
