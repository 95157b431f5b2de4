#include "polypulse/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polypulse {

std::string fmt_g(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string pulse_to_json(const PulseSpec& pulse) {
    std::vector<PulseComponent> comps = pulse.components;
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.harmonic < b.harmonic; });
    std::ostringstream out;
    out << "{\"fundamental_frequency\":" << fmt_g(pulse.fundamental_frequency)
        << ",\"components\":[";
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k) out << ",";
        out << "{\"harmonic\":" << comps[k].harmonic << ",\"re\":"
            << fmt_g(comps[k].amplitude.real()) << ",\"im\":"
            << fmt_g(comps[k].amplitude.imag()) << "}";
    }
    out << "],\"calibrated\":" << (pulse.calibrated ? "true" : "false") << "}";
    return out.str();
}

PulseSpec pulse_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("pulse JSON parse error: ") + e.what());
    }
    PulseSpec pulse;
    try {
        pulse.fundamental_frequency = j.at("fundamental_frequency").get<double>();
        pulse.calibrated = j.at("calibrated").get<bool>();
        for (const auto& c : j.at("components")) {
            pulse.components.push_back(
                {c.at("harmonic").get<int>(),
                 complexd{c.at("re").get<double>(), c.at("im").get<double>()}});
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("pulse JSON missing field: ") + e.what());
    }
    pulse.validate();
    return pulse;
}

std::string zeta_to_json(const ZetaMatrix& zeta) {
    std::ostringstream out;
    out << "{\"basis\":[\"xi0\",\"xi1\",\"xi2\",\"xi3\",\"xi4\"],\"provenance\":\""
        << to_string(zeta.provenance) << "\",\"entries\":[";
    for (int i = 0; i < 5; ++i) {
        if (i) out << ",";
        out << "[";
        for (int j = 0; j < 5; ++j) {
            if (j) out << ",";
            out << "{\"re\":" << fmt_g(zeta.entries(i, j).real()) << ",\"im\":"
                << fmt_g(zeta.entries(i, j).imag()) << "}";
        }
        out << "]";
    }
    out << "]}";
    return out.str();
}

std::string simulation_to_json(const PulseSpec& pulse, const EnvironmentRates& rates,
                               const SimConfig& config, const SimResult& result) {
    std::ostringstream out;
    out << "{\"pulse\":" << pulse_to_json(pulse)
        << ",\"rates\":{\"gamma_plus\":" << fmt_g(rates.gamma_plus)
        << ",\"gamma_minus\":" << fmt_g(rates.gamma_minus)
        << ",\"gamma_dephase\":" << fmt_g(rates.gamma_dephase) << "}"
        << ",\"config\":{\"n_qubits\":" << config.n_qubits
        << ",\"fock_cutoff\":" << config.fock_cutoff << ",\"steps\":" << config.steps
        << "}"
        << ",\"gate_fidelity\":" << fmt_g(result.gate_fidelity)
        << ",\"concurrence\":" << fmt_g(result.concurrence)
        << ",\"eof\":" << fmt_g(result.eof) << ",\"leakage\":" << fmt_g(result.leakage)
        << "}";
    return out.str();
}

}  // namespace polypulse
