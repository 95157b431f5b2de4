#include "polypulse/moments.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace polypulse {

void EnvironmentRates::validate() const {
    if (gamma_plus < 0.0 || gamma_minus < 0.0 || gamma_dephase < 0.0)
        throw std::invalid_argument("rates: all rates must be non-negative");
}

BusMoments BusMoments::thermal(double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("thermal: nbar must be >= 0");
    BusMoments b;
    b.n_mean = nbar;
    return b;
}

BusMoments BusMoments::coherent(complexd alpha) {
    BusMoments b;
    b.n_mean = std::norm(alpha);
    b.a_mean = alpha;
    b.a2_mean = alpha * alpha;
    return b;
}

PulseMoments pulse_moments(const PulseSpec& pulse) {
    pulse.validate();
    PulseMoments pm;
    for (const auto& c : pulse.components) {
        pm.g1 += c.amplitude / static_cast<double>(c.harmonic);
        pm.f1 += std::norm(c.amplitude) / (c.harmonic * c.harmonic);
    }
    // Convolution amplitudes A_s = sum_{i+j=s} c_i c_j / (i j); the Kronecker
    // deltas in g2 and f2 then read g2 = sum_s A_s c_s*/s and f2 = sum_s |A_s|^2.
    std::map<int, complexd> conv;
    for (const auto& ci : pulse.components)
        for (const auto& cj : pulse.components)
            conv[ci.harmonic + cj.harmonic] +=
                ci.amplitude * cj.amplitude /
                static_cast<double>(ci.harmonic * cj.harmonic);
    for (const auto& cp : pulse.components) {
        auto it = conv.find(cp.harmonic);
        if (it != conv.end())
            pm.g2 += it->second * std::conj(cp.amplitude) / static_cast<double>(cp.harmonic);
    }
    for (const auto& [s, a] : conv) pm.f2 += std::norm(a);
    return pm;
}

FMoments f_moments(const PulseMoments& pm, double omega) {
    const double T = 2.0 * std::numbers::pi / omega;
    const complexd i_unit{0.0, 1.0};
    FMoments fm;
    fm.avg_f = i_unit * T * pm.g1;
    fm.avg_f2 = -T * pm.g1 * pm.g1;
    fm.avg_abs2f = -i_unit * T * (pm.g2 - 2.0 * pm.f1 * pm.g1 - std::norm(pm.g1) * pm.g1);
    fm.avg_abs2 = T * (pm.f1 + std::norm(pm.g1));
    fm.avg_abs4 = T * (pm.f2 - 4.0 * std::real(pm.g2 * std::conj(pm.g1)) +
                       std::norm(pm.g1) * std::norm(pm.g1) + 4.0 * pm.f1 * std::norm(pm.g1));
    return fm;
}

FMoments f_moments_quadrature(const PulseSpec& pulse, int points) {
    pulse.validate();
    if (points < 8 * pulse.max_harmonic() + 1)
        throw std::invalid_argument("f_moments_quadrature: too few quadrature points");
    const double T = pulse.period();
    const double w = T / points;
    FMoments fm;
    for (int k = 0; k < points; ++k) {
        const complexd f = displacement(pulse, T * k / points);
        const double a2 = std::norm(f);
        fm.avg_f += w * f;
        fm.avg_f2 += w * f * f;
        fm.avg_abs2f += w * a2 * f;
        fm.avg_abs2 += w * a2;
        fm.avg_abs4 += w * a2 * a2;
    }
    return fm;
}

}  // namespace polypulse
