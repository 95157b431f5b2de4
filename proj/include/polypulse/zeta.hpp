#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "polypulse/moments.hpp"
#include "polypulse/pulse.hpp"

namespace polypulse {

using Matrix5cd = Eigen::Matrix<complexd, 5, 5>;

enum class ZetaProvenance { printed, oracle, reconciled };

std::string to_string(ZetaProvenance p);

/// 5x5 Hermitian coefficient matrix of the first-order error map in the basis
/// {xi_0 = 1, xi_1, ..., xi_4} of normalized collective sigma_x strings.
struct ZetaMatrix {
    Matrix5cd entries = Matrix5cd::Zero();
    ZetaProvenance provenance = ZetaProvenance::reconciled;
};

enum class Metric { frobenius_sq, frobenius };

/// The six coefficient matrices of the error-map channels, with
/// Gamma_p = binomial(N, p) (zero for p > N). Requires N >= 1.
std::array<Matrix5cd, 6> m_matrices(int N);

/// Literal transcription of the published coefficient block. Kept as-is for
/// comparison; see assemble_zeta for the oracle-validated variant.
ZetaMatrix assemble_zeta_printed(const PulseSpec& pulse, int N,
                                 const EnvironmentRates& rates, const BusMoments& bus);

/// First-order error-map matrix derived from the interaction-frame dissipators
/// and validated entrywise against zeta_oracle. Valid for arbitrary N >= 2.
///
/// The published block differs from this assembly in three places (each
/// confirmed against the brute-force oracle):
///   - the overall scale of the published block is twice the map projection;
///   - the <a^2> channel carries the full S X S - {S^2,X}/2 pattern (the
///     published M4 keeps only part of it);
///   - the <|f|^2 f> channel coefficient contains the g2 and f1*g1 cross
///     terms that the published zeta_15 drops, and the four-body terms enter
///     through <|f|^4> as a whole, so they do not cancel for monochromatic
///     pulses.
ZetaMatrix assemble_zeta(const PulseSpec& pulse, int N, const EnvironmentRates& rates,
                         const BusMoments& bus);

/// tr(zeta^dag zeta) or its square root.
double infidelity(const ZetaMatrix& zeta, Metric metric);

/// Ratio of monochromatic to optimal-pulse infidelity at equal gate duration.
double improvement_R(int m, int N, const EnvironmentRates& rates, const BusMoments& bus,
                     Metric metric);

}  // namespace polypulse
