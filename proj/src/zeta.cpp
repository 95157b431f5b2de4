#include "polypulse/zeta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polypulse {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Projections of the error-map channels onto the xi basis. For a channel
// X -> S^p X S^q the coefficient at (i, j) factorizes into
// tr(xi_i S^p) tr(xi_j S^q) / 4^N, with
//   tr(xi_0 S^0)/2^N = 1,              tr(xi_1 S)/2^N   = sqrt(N),
//   tr(xi_0 S^2)/2^N = N,              tr(xi_2 S^2)/2^N = 2 sqrt(G2),
//   tr(xi_1 S^3)/2^N = (3N-2) sqrt(N), tr(xi_3 S^3)/2^N = 6 sqrt(G3),
//   tr(xi_0 S^4)/2^N = 3N^2 - 2N,      tr(xi_2 S^4)/2^N = (12N-16) sqrt(G2),
//   tr(xi_4 S^4)/2^N = 24 sqrt(G4).

// X -> S X S - {S^2, X}/2
Matrix5cd channel_two_body(int N) {
    const double g2 = binom(N, 2);
    Matrix5cd p = Matrix5cd::Zero();
    p(0, 0) = -static_cast<double>(N);
    p(1, 1) = static_cast<double>(N);
    p(0, 2) = p(2, 0) = -std::sqrt(g2);
    return p;
}

// X -> i (X S - S X)
Matrix5cd channel_flip(int N) {
    Matrix5cd p = Matrix5cd::Zero();
    p(0, 1) = complexd{0.0, std::sqrt(static_cast<double>(N))};
    p(1, 0) = std::conj(p(0, 1));
    return p;
}

// X -> S X S^2 + S^2 X S - {S^3, X}
Matrix5cd channel_three_body(int N) {
    const double g1 = N, g2 = binom(N, 2), g3 = binom(N, 3);
    Matrix5cd p = Matrix5cd::Zero();
    p(0, 1) = p(1, 0) = -2.0 * (N - 1) * std::sqrt(static_cast<double>(N));
    p(1, 2) = p(2, 1) = 2.0 * std::sqrt(g1 * g2);
    p(0, 3) = p(3, 0) = -6.0 * std::sqrt(g3);
    return p;
}

// X -> S^2 X S^2 - {S^4, X}/2
Matrix5cd channel_four_body(int N) {
    const double g2 = binom(N, 2), g4 = binom(N, 4);
    Matrix5cd p = Matrix5cd::Zero();
    p(0, 0) = -2.0 * N * (N - 1.0);
    p(0, 2) = p(2, 0) = -4.0 * (N - 2.0) * std::sqrt(g2);
    p(2, 2) = 2.0 * N * (N - 1.0);
    p(0, 4) = p(4, 0) = -12.0 * std::sqrt(g4);
    return p;
}

}  // namespace

std::string to_string(ZetaProvenance p) {
    switch (p) {
        case ZetaProvenance::printed: return "printed";
        case ZetaProvenance::oracle: return "oracle";
        case ZetaProvenance::reconciled: return "reconciled";
    }
    return "unknown";
}

std::array<Matrix5cd, 6> m_matrices(int N) {
    if (N < 1) throw std::invalid_argument("m_matrices: N must be >= 1");
    const double g1 = binom(N, 1), g2 = binom(N, 2), g3 = binom(N, 3), g4 = binom(N, 4);
    std::array<Matrix5cd, 6> M;
    for (auto& m : M) m = Matrix5cd::Zero();

    M[0](0, 0) = -static_cast<double>(N);
    M[0](1, 1) = 2.0 * g1;
    M[0](0, 2) = M[0](2, 0) = -std::sqrt(g2);

    M[1](0, 0) = 1.0;
    M[1](0, 2) = M[1](2, 0) = std::sqrt(g2);
    M[1](0, 4) = M[1](4, 0) = -3.0 * std::sqrt(g4);
    M[1](2, 2) = -2.0;

    M[2](0, 0) = -(N - 1.0);
    M[2](0, 2) = M[2](2, 0) = -std::sqrt(g2) * (N - 1.0);
    M[2](0, 4) = M[2](4, 0) = 3.0 * std::sqrt(g4);
    M[2](2, 2) = 2.0 * (N - 1.0);

    M[3](1, 1) = static_cast<double>(N);
    M[3](0, 2) = M[3](2, 0) = std::sqrt(g2);

    M[4](0, 1) = M[4](1, 0) = std::sqrt(static_cast<double>(N)) * (N - 1.0);
    M[4](1, 2) = M[4](2, 1) = -std::sqrt(g1 * g2);
    M[4](0, 3) = M[4](3, 0) = 3.0 * std::sqrt(g3);

    M[5](0, 1) = complexd{0.0, -std::sqrt(static_cast<double>(N))};
    M[5](1, 0) = std::conj(M[5](0, 1));

    return M;
}

ZetaMatrix assemble_zeta_printed(const PulseSpec& pulse, int N,
                                 const EnvironmentRates& rates, const BusMoments& bus) {
    if (N < 2) throw std::invalid_argument("assemble_zeta_printed: N must be >= 2");
    rates.validate();
    const PulseMoments pm = pulse_moments(pulse);
    const auto M = m_matrices(N);
    const double gp = rates.gamma_plus, gm = rates.gamma_minus, gd = rates.gamma_dephase;
    const double gsum = gp + gm + (2.0 * bus.n_mean + 1.0) * gd;
    const double ag1 = std::norm(pm.g1);

    Matrix5cd z = Matrix5cd::Zero();
    z += 2.0 * pm.f1 * gsum * M[0];
    z += -4.0 * pm.f2 * gd * N * (N - 1.0) * M[1];
    z += 2.0 * ag1 * gsum * M[0];
    z += 16.0 * ag1 * pm.f1 * gd * static_cast<double>(N) * M[2];
    z += 4.0 * gd * (ag1 * ag1 - 4.0 * std::real(pm.g1 * std::conj(pm.g2))) * N * (N - 1.0) *
         M[1];
    z += 4.0 * std::real(pm.g1 * pm.g1 * bus.a2_mean) * gd * M[3];
    z += 8.0 * std::real(pm.g1 * ag1 * bus.a_mean) * gd * M[4];
    z += 4.0 * std::imag(pm.g1 * bus.a_mean) * (gp - gm + gd) * M[5];

    ZetaMatrix out;
    out.entries = (std::numbers::pi / pulse.fundamental_frequency) * z;
    out.provenance = ZetaProvenance::printed;
    return out;
}

ZetaMatrix assemble_zeta(const PulseSpec& pulse, int N, const EnvironmentRates& rates,
                         const BusMoments& bus) {
    if (N < 2) throw std::invalid_argument("assemble_zeta: N must be >= 2");
    rates.validate();
    const double omega = pulse.fundamental_frequency;
    const FMoments fm = f_moments(pulse_moments(pulse), omega);
    const double gp = rates.gamma_plus, gm = rates.gamma_minus, gd = rates.gamma_dephase;

    // Reduced interaction-frame dissipator, traced over the bus and
    // time-integrated. Thermalization contributes the two-body channel with
    // weight <|f|^2> and the flip channel with weight Re(<f><a>); dephasing
    // adds the <a^2>, three-body and four-body channels.
    Matrix5cd z = Matrix5cd::Zero();
    const double gsum = gp + gm + (2.0 * bus.n_mean + 1.0) * gd;
    z += gsum * fm.avg_abs2 * channel_two_body(N);
    z += (gm - gp + gd) * std::real(fm.avg_f * bus.a_mean) * channel_flip(N);
    z += gd * (-2.0) * std::real(fm.avg_f2 * bus.a2_mean) * channel_two_body(N);
    z += gd * (-2.0) * std::imag(fm.avg_abs2f * bus.a_mean) * channel_three_body(N);
    z += gd * fm.avg_abs4 * channel_four_body(N);

    ZetaMatrix out;
    out.entries = z;
    out.provenance = ZetaProvenance::reconciled;
    return out;
}

double infidelity(const ZetaMatrix& zeta, Metric metric) {
    const double sq = (zeta.entries.adjoint() * zeta.entries).trace().real();
    return metric == Metric::frobenius_sq ? sq : std::sqrt(sq);
}

double improvement_R(int m, int N, const EnvironmentRates& rates, const BusMoments& bus,
                     Metric metric) {
    if (m < 2) throw std::invalid_argument("improvement_R: m must be >= 2");
    rates.validate();
    if (rates.all_zero())
        throw std::invalid_argument("improvement_R: rates must not all be zero");
    const double omega = 1.0;
    const double i_mono = infidelity(assemble_zeta(monochromatic_pulse(m, omega), N, rates, bus),
                                     metric);
    const double i_poly = infidelity(assemble_zeta(optimal_pulse(m, omega), N, rates, bus),
                                     metric);
    return i_mono / i_poly;
}

}  // namespace polypulse
