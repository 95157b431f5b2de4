#pragma once

#include "polypulse/pulse.hpp"

namespace polypulse {

/// Bus-mode environment rates (1/time): thermalization up/down and dephasing.
struct EnvironmentRates {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_dephase = 0.0;

    bool all_zero() const {
        return gamma_plus == 0.0 && gamma_minus == 0.0 && gamma_dephase == 0.0;
    }
    void validate() const;
};

/// Bus-mode summary moments <n>, <a>, <a^2> entering the first-order error map.
struct BusMoments {
    double n_mean = 0.0;
    complexd a_mean{0.0, 0.0};
    complexd a2_mean{0.0, 0.0};

    static BusMoments ground() { return {}; }
    static BusMoments thermal(double nbar);
    static BusMoments coherent(complexd alpha);
};

/// Spectral combinations of the pulse amplitudes:
///   g1 = sum c_i/i,             g2 = sum_{i+j=p} c_i c_j c_p* / (i j p),
///   f1 = sum |c_i|^2/i^2,       f2 = sum_{i+j=p+q} c_i c_j c_p* c_q* / (i j p q).
struct PulseMoments {
    complexd g1{0.0, 0.0};
    complexd g2{0.0, 0.0};
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Time averages of the displacement over one gate period:
/// <f>, <f^2>, <|f|^2 f>, <|f|^2>, <|f|^4> with <.> = int_0^T dt.
struct FMoments {
    complexd avg_f{0.0, 0.0};
    complexd avg_f2{0.0, 0.0};
    complexd avg_abs2f{0.0, 0.0};
    double avg_abs2 = 0.0;
    double avg_abs4 = 0.0;
};

PulseMoments pulse_moments(const PulseSpec& pulse);

/// Closed-form displacement moments from the spectral combinations.
FMoments f_moments(const PulseMoments& pm, double omega);

/// Quadrature oracle for f_moments: uniform rectangle rule on the closed-form
/// f(t). Every integrand is a trigonometric polynomial of degree <= 4m, so the
/// rule is exact to rounding once points > 4m; requires points >= 8m+1.
FMoments f_moments_quadrature(const PulseSpec& pulse, int points);

}  // namespace polypulse
