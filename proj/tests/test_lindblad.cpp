#include <doctest.h>

#include <cmath>

#include "polypulse/entanglement.hpp"
#include "polypulse/lindblad.hpp"

using namespace polypulse;

namespace {
QuantumState ground_initial(int N, int cutoff) {
    Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(Eigen::Index{1} << N);
    qubits(0) = 1.0;
    return make_initial(qubits, fock_state(cutoff, 0), N);
}

SimConfig reference_config(int m) {
    SimConfig cfg;
    cfg.n_qubits = 2;
    cfg.fock_cutoff = 12;
    cfg.steps = 200 * m;
    return cfg;
}
}  // namespace

TEST_CASE("zero generator leaves the state untouched") {
    PulseSpec silent;
    silent.fundamental_frequency = 1.0;  // no components, no dissipation
    SimConfig cfg = reference_config(1);
    const QuantumState init = ground_initial(2, cfg.fock_cutoff);
    const SimResult res = propagate(init, silent, EnvironmentRates{}, cfg);
    CHECK(res.gate_fidelity < 1.0);  // |00> is not the ideal output
    Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(4);
    qubits(0) = 1.0;
    CHECK((res.final_qubit_state - qubits * qubits.adjoint()).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(res.trace_drift < 1e-12);
}

TEST_CASE("dissipation-free gate reaches the ideal entangler") {
    for (int m : {1, 3}) {
        SimConfig cfg = reference_config(m);
        // The single-frequency gate displaces the bus furthest; levels 10-11
        // carry ~1e-7 population, so the 1e-8 leakage monitor needs headroom.
        if (m == 1) cfg.fock_cutoff = 16;
        const PulseSpec p = m == 1 ? monochromatic_pulse(1, 1.0) : optimal_pulse(m, 1.0);
        const SimResult res =
            propagate(ground_initial(2, cfg.fock_cutoff), p, EnvironmentRates{}, cfg);
        CHECK(res.gate_fidelity >= 1.0 - 1e-6);
        CHECK(res.concurrence > 1.0 - 1e-5);
        CHECK(res.eof > 1.0 - 1e-5);
        CHECK(res.leakage <= cfg.leakage_threshold);
        CHECK(res.trace_drift <= 1e-9);
    }
}

TEST_CASE("gate closure is independent of the initial bus state") {
    SimConfig cfg = reference_config(1);
    cfg.fock_cutoff = 18;
    Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(4);
    qubits(0) = 1.0;
    const QuantumState init = make_initial(qubits, fock_state(cfg.fock_cutoff, 1), 2);
    const SimResult res =
        propagate(init, monochromatic_pulse(1, 1.0), EnvironmentRates{}, cfg);
    CHECK(res.gate_fidelity >= 1.0 - 1e-6);
}

TEST_CASE("step-halving and cutoff headroom leave the fidelity unchanged") {
    const PulseSpec p = optimal_pulse(3, 1.0);
    SimConfig cfg = reference_config(3);
    const double base =
        propagate(ground_initial(2, cfg.fock_cutoff), p, EnvironmentRates{}, cfg)
            .gate_fidelity;

    SimConfig fine = cfg;
    fine.steps *= 2;
    CHECK(std::abs(propagate(ground_initial(2, fine.fock_cutoff), p, EnvironmentRates{},
                             fine)
                       .gate_fidelity -
                   base) < 1e-8);

    SimConfig wide = cfg;
    wide.fock_cutoff += 5;
    CHECK(std::abs(propagate(ground_initial(2, wide.fock_cutoff), p, EnvironmentRates{},
                             wide)
                       .gate_fidelity -
                   base) < 1e-8);
}

TEST_CASE("too small a cutoff raises with a retry suggestion") {
    SimConfig cfg = reference_config(1);
    cfg.fock_cutoff = 3;
    try {
        propagate(ground_initial(2, 3), monochromatic_pulse(1, 1.0), EnvironmentRates{},
                  cfg);
        FAIL("expected CutoffTooSmall");
    } catch (const CutoffTooSmall& e) {
        CHECK(e.retry_cutoff > 3);
    }
}

TEST_CASE("ideal gate output") {
    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(4);
    in(0) = 1.0;
    const Eigen::VectorXcd out = ideal_state(in, 2);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    // (|00> - i |11>)/sqrt(2) up to a global phase.
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(4);
    target(0) = 1.0 / std::sqrt(2.0);
    target(3) = complexd{0.0, -1.0} / std::sqrt(2.0);
    CHECK(std::abs(std::abs(target.dot(out)) - 1.0) < 1e-12);
    CHECK(std::abs(eof(out * out.adjoint()) - 1.0) < 1e-7);
    // Single qubit: unitary, norm preserved.
    Eigen::VectorXcd one(2);
    one << complexd{0.6, 0.0}, complexd{0.0, 0.8};
    CHECK(std::abs(ideal_state(one, 1).norm() - 1.0) < 1e-12);
}

TEST_CASE("closed-form propagator check") {
    SimConfig cfg = reference_config(2);
    const PulseSpec p = optimal_pulse(2, 1.0);
    const double T = p.period();
    CHECK(interaction_frame_check(p, cfg, 0.0) == 0.0);
    CHECK(interaction_frame_check(p, cfg, T / 2.0) <= 1e-7);
    CHECK(interaction_frame_check(p, cfg, T) <= 1e-7);
    SimConfig cfg1 = reference_config(1);
    CHECK(interaction_frame_check(monochromatic_pulse(1, 1.0), cfg1, T) <= 1e-7);
}

TEST_CASE("weak dissipation: optimal pulses beat the single-frequency gate") {
    SimConfig cfg = reference_config(3);
    const EnvironmentRates rates{3e-3, 3e-3, 3e-3};
    const QuantumState init = ground_initial(2, cfg.fock_cutoff);
    const double e_poly = propagate(init, optimal_pulse(3, 1.0), rates, cfg).eof;
    const double e_mono = propagate(init, monochromatic_pulse(3, 1.0), rates, cfg).eof;
    CHECK(e_poly >= e_mono);
    CHECK(e_poly < 1.0);
}

TEST_CASE("improvement_RE guards") {
    SimConfig cfg = reference_config(2);
    CHECK_THROWS_AS(improvement_RE(2, EnvironmentRates{}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(improvement_RE(1, {1e-3, 1e-3, 1e-3}, cfg), std::invalid_argument);
    SimConfig bad = cfg;
    bad.n_qubits = 3;
    CHECK_THROWS_AS(improvement_RE(2, {1e-3, 1e-3, 1e-3}, bad), std::invalid_argument);
}

TEST_CASE("state and config validation") {
    SimConfig cfg;
    cfg.steps = 10;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    QuantumState st = ground_initial(2, 6);
    st.rho(0, 1) = complexd{0.5, 0.0};  // breaks Hermiticity
    CHECK_THROWS_AS(st.validate(), std::invalid_argument);

    Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(3);
    CHECK_THROWS_AS(make_initial(wrong, fock_state(6, 0), 2), std::invalid_argument);
}
