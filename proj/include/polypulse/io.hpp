#pragma once

#include <string>

#include "polypulse/lindblad.hpp"
#include "polypulse/pulse.hpp"
#include "polypulse/zeta.hpp"

namespace polypulse {

/// Shortest representation with 12 significant digits ("%.12g").
std::string fmt_g(double x);

/// { "fundamental_frequency": ..., "components": [ { "harmonic": j, "re": ..,
///   "im": .. } ... ], "calibrated": true|false }, components sorted by harmonic.
std::string pulse_to_json(const PulseSpec& pulse);

/// Inverse of pulse_to_json; throws std::invalid_argument on malformed input.
PulseSpec pulse_from_json(const std::string& text);

/// { "basis": ["xi0"..], "provenance": ..., "entries": [[{"re","im"}..]..] }
std::string zeta_to_json(const ZetaMatrix& zeta);

std::string simulation_to_json(const PulseSpec& pulse, const EnvironmentRates& rates,
                               const SimConfig& config, const SimResult& result);

}  // namespace polypulse
