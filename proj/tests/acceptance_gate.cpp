// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// Each criterion is checked at the pinned tolerances; nothing is weakened to
// force a pass, and known discrepancies are spelled out in the FAIL line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "polypulse/entanglement.hpp"
#include "polypulse/io.hpp"
#include "polypulse/lindblad.hpp"
#include "polypulse/oracle.hpp"
#include "polypulse/zeta.hpp"

using namespace polypulse;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (notes.tellp() > 0) notes << "; ";
            notes << what;
        }
    }
};

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = std::min<int>(hw ? hw : 1, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    for (auto& th : pool) th.join();
}

PulseSpec pulse_for(int m) {
    return m == 1 ? monochromatic_pulse(1, 1.0) : optimal_pulse(m, 1.0);
}

QuantumState ground_initial(int N, int cutoff, int fock_level = 0) {
    Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(Eigen::Index{1} << N);
    qubits(0) = 1.0;
    return make_initial(qubits, fock_state(cutoff, fock_level), N);
}

// --- criterion 1: pulse-design table -------------------------------------

Outcome criterion1() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    const double lambdas[] = {2.0 / 3.0, 0.388, 0.276, 0.215, 0.177, 0.150, 0.130};
    const std::vector<std::vector<double>> amps = {
        {-0.144, 0.288},
        {-0.032, -0.179, 0.368},
        {-0.015, -0.051, -0.201, 0.435},
        {-0.009, -0.026, -0.064, -0.218, 0.493},
        {-0.006, -0.016, -0.034, -0.073, -0.231, 0.546},
        {-0.004, -0.011, -0.022, -0.040, -0.081, -0.242, 0.595},
        {-0.003, -0.008, -0.015, -0.026, -0.046, -0.088, -0.252, 0.641},
    };
    for (int m = 2; m <= 8; ++m) {
        const LambdaSolution sol = solve_lambda(m);
        out.require(std::abs(sol.lambda - lambdas[m - 2]) < 5e-4,
                    "lambda table mismatch at m=" + std::to_string(m));
        const PulseSpec p = optimal_pulse(m, 1.0);
        for (int j = 0; j < m; ++j)
            out.require(std::abs(p.components[j].amplitude.real() - amps[m - 2][j]) < 1e-3,
                        "amplitude mismatch at m=" + std::to_string(m) + ", j=" +
                            std::to_string(j + 1));
    }
    const double closed[] = {
        2.0 / 3.0, (6.0 - std::sqrt(3.0)) / 11.0, (5.0 - std::sqrt(5.0)) / 10.0,
        (3.0 * (75.0 + std::sqrt(145.0)) - std::sqrt(10830.0 + 802.0 * std::sqrt(145.0))) /
            548.0,
        (98.0 + 7.0 * std::sqrt(7.0) - std::sqrt(2891.0 + 868.0 * std::sqrt(7.0))) /
            252.0};
    for (int m = 2; m <= 6; ++m)
        out.require(std::abs(solve_lambda(m).lambda - closed[m - 2]) < 1e-10,
                    "closed-form lambda mismatch at m=" + std::to_string(m));

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     start)
                           .count();
    out.require(sec < 1.0, "runtime " + std::to_string(sec) + " s exceeds 1 s");
    return out;
}

// --- criterion 2: constraint suite ----------------------------------------

Outcome criterion2() {
    Outcome out;
    for (int m = 2; m <= 12; ++m) {
        const PulseSpec p = optimal_pulse(m, 1.0);
        double gate = 0.0, sq = 0.0;
        complexd mean{0.0, 0.0};
        for (const auto& c : p.components) {
            gate += std::norm(c.amplitude) / c.harmonic;
            mean += c.amplitude / double(c.harmonic);
            sq += std::norm(c.amplitude) / double(c.harmonic * c.harmonic);
        }
        out.require(std::abs(gate - 1.0 / 16.0) < 1e-12,
                    "gate condition violated at m=" + std::to_string(m));
        out.require(std::abs(mean) < 1e-12,
                    "zero-mean constraint violated at m=" + std::to_string(m));
        out.require(std::abs(sq - solve_lambda(m).lambda / 16.0) < 1e-10,
                    "lambda/16 identity violated at m=" + std::to_string(m));
        out.require(intensity(p) <= intensity(monochromatic_pulse(m, 1.0)) + 1e-15,
                    "intensity exceeds the reference at m=" + std::to_string(m));
        out.require(std::abs(intensity(monochromatic_pulse(m, 1.0)) - m / 16.0) < 1e-14,
                    "reference intensity mismatch at m=" + std::to_string(m));
    }
    return out;
}

// --- criterion 3: moment oracle -------------------------------------------

Outcome criterion3() {
    Outcome out;
    for (int m = 1; m <= 10; ++m) {
        for (const PulseSpec& p : {monochromatic_pulse(m, 1.0), pulse_for(std::max(m, 2))}) {
            const FMoments a = f_moments(pulse_moments(p), p.fundamental_frequency);
            const FMoments q = f_moments_quadrature(p, 16 * p.max_harmonic() + 1);
            const double diff = std::max(
                {std::abs(a.avg_f - q.avg_f), std::abs(a.avg_f2 - q.avg_f2),
                 std::abs(a.avg_abs2f - q.avg_abs2f), std::abs(a.avg_abs2 - q.avg_abs2),
                 std::abs(a.avg_abs4 - q.avg_abs4)});
            out.require(diff < 1e-10, "analytic/quadrature gap " + fmt_g(diff) +
                                          " at m=" + std::to_string(m));
        }
        const FMoments mono = f_moments(pulse_moments(monochromatic_pulse(m, 1.0)), 1.0);
        out.require(std::abs(mono.avg_abs2 - 2.0 * kPi / (8.0 * m)) < 1e-12,
                    "monochromatic <|f|^2> mismatch at m=" + std::to_string(m));
    }
    return out;
}

// --- criterion 4: error-map oracle equivalence -----------------------------

Outcome criterion4() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    struct Case {
        int m, N, model, bus;
    };
    std::vector<Case> cases;
    for (int m = 1; m <= 5; ++m)
        for (int N = 2; N <= 5; ++N)
            for (int model = 0; model < 3; ++model)
                for (int bus = 0; bus < 3; ++bus) cases.push_back({m, N, model, bus});

    const EnvironmentRates models[] = {{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.7, 1.0, 0.8}};
    std::vector<std::string> failures(cases.size());
    parallel_for(static_cast<int>(cases.size()), [&](int i) {
        const Case& c = cases[i];
        MatrixXcd bus_state;
        if (c.bus == 0) bus_state = fock_state(16, 0);
        else if (c.bus == 1) bus_state = thermal_state(thermal_cutoff(2.0), 2.0);
        else bus_state = coherent_state(16, {0.5, 0.0});
        const std::string tag = "(m=" + std::to_string(c.m) + ",N=" + std::to_string(c.N) +
                                ",model=" + std::to_string(c.model) + ",bus=" +
                                std::to_string(c.bus) + ")";
        try {
            const PulseSpec p = pulse_for(c.m);
            const auto oracle = zeta_oracle(p, c.N, models[c.model], bus_state);
            const auto analytic =
                assemble_zeta(p, c.N, models[c.model], bus_moments_of(bus_state));
            const double scale = oracle.zeta.entries.cwiseAbs().maxCoeff();
            const double diff =
                (oracle.zeta.entries - analytic.entries).cwiseAbs().maxCoeff();
            if (diff > 1e-6 * scale)
                failures[i] = "entry mismatch " + fmt_g(diff / scale) + " at " + tag;
            else if (oracle.residual > 1e-8)
                failures[i] = "residual " + fmt_g(oracle.residual) + " at " + tag;
        } catch (const std::exception& e) {
            failures[i] = std::string(e.what()) + " at " + tag;
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) out.require(false, f);

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     start)
                           .count();
    out.require(sec < 120.0, "runtime " + std::to_string(sec) + " s exceeds 2 min");
    out.notes << (out.notes.tellp() > 0 ? "; " : "") << cases.size() << " cases, "
              << fmt_g(sec) << " s";
    return out;
}

// --- criterion 5: perturbative improvement ratios --------------------------

Outcome criterion5() {
    Outcome out;
    const BusMoments ground = BusMoments::ground();
    const EnvironmentRates therm{1.0, 1.0, 0.0};
    const EnvironmentRates deph{0.0, 0.0, 1.0};

    const double r2 = improvement_R(2, 2, therm, ground, Metric::frobenius);
    out.require(std::abs(r2 - 1.5) < 1e-3, "R(m=2) = " + fmt_g(r2) + ", want 1.500(1)");
    const double r8 = improvement_R(8, 2, therm, ground, Metric::frobenius);
    out.require(std::abs(r8 - 1.923) < 2e-3, "R(m=8) = " + fmt_g(r8) + ", want 1.923(2)");

    const double rhot =
        improvement_R(5, 2, deph, BusMoments::thermal(100.0), Metric::frobenius);
    out.require(rhot >= 1.8 && rhot <= 2.0,
                "R(m=5, hot dephasing) = " + fmt_g(rhot) + ", want [1.8, 2.0]");

    for (const auto& bus : {ground, BusMoments::thermal(3.0)}) {
        const double base = improvement_R(3, 2, therm, bus, Metric::frobenius);
        for (int N = 3; N <= 20; ++N)
            out.require(std::abs(improvement_R(3, N, therm, bus, Metric::frobenius) -
                                 base) < 1e-10,
                        "N dependence at gamma_d=0, N=" + std::to_string(N));
    }

    for (int m : {3, 5}) {
        double prev = 0.0, best = 0.0, best_printed = 0.0;
        bool monotone = true;
        for (int N = 2; N <= 50; ++N) {
            const double r = improvement_R(m, N, deph, ground, Metric::frobenius);
            if (r < prev - 1e-12) monotone = false;
            prev = r;
            best = std::max(best, r);
            const double ip = infidelity(
                assemble_zeta_printed(monochromatic_pulse(m, 1.0), N, deph, ground),
                Metric::frobenius);
            const double op = infidelity(
                assemble_zeta_printed(optimal_pulse(m, 1.0), N, deph, ground),
                Metric::frobenius);
            best_printed = std::max(best_printed, ip / op);
        }
        out.require(monotone, "R not non-decreasing in N at m=" + std::to_string(m));
        const double bar = (m == 3) ? 3.0 : 4.0;
        out.require(best > bar,
                    "documented discrepancy: oracle-reconciled max R over N<=50 at m=" +
                        std::to_string(m) + " is " + fmt_g(best) + " (printed-sign " +
                        "variant gives " + fmt_g(best_printed) + "), bar " + fmt_g(bar) +
                        " is crossed only near N~90 (asymptote 4.34)");
    }
    return out;
}

// --- criterion 6: exact-simulation unitarity -------------------------------

Outcome criterion6() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();

    struct Run {
        int m;
        bool mono;
        int fock;
    };
    std::vector<Run> runs;
    for (int m = 1; m <= 6; ++m)
        for (int fock : {0, 1}) {
            runs.push_back({m, true, fock});
            if (m >= 2) runs.push_back({m, false, fock});
        }
    std::vector<std::string> failures(runs.size());
    parallel_for(static_cast<int>(runs.size()), [&](int i) {
        const Run& r = runs[i];
        SimConfig cfg;
        cfg.n_qubits = 2;
        cfg.fock_cutoff = 12;
        cfg.steps = 200 * r.m;
        const PulseSpec p =
            r.mono ? monochromatic_pulse(r.m, 1.0) : optimal_pulse(r.m, 1.0);
        try {
            SimResult res;
            for (;;) {
                // The leakage monitor enforces the truncation; retry at the
                // suggested cutoff when the reference one is too tight.
                try {
                    res = propagate(ground_initial(2, cfg.fock_cutoff, r.fock), p,
                                    EnvironmentRates{}, cfg);
                    break;
                } catch (const CutoffTooSmall& e) {
                    cfg.fock_cutoff = e.retry_cutoff;
                }
            }
            if (res.gate_fidelity < 1.0 - 1e-6)
                failures[i] = "fidelity " + fmt_g(res.gate_fidelity) + " at m=" +
                              std::to_string(r.m) + (r.mono ? " mono" : " opt") +
                              " fock=" + std::to_string(r.fock);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) out.require(false, f);

    SimConfig cfg2;
    cfg2.n_qubits = 2;
    cfg2.fock_cutoff = 12;
    cfg2.steps = 400;
    const PulseSpec p2 = optimal_pulse(2, 1.0);
    const double T = p2.period();
    std::vector<double> dists(10);
    parallel_for(10, [&](int k) {
        dists[k] = interaction_frame_check(p2, cfg2, T * (k + 1) / 10.0);
    });
    for (int k = 0; k < 10; ++k)
        out.require(dists[k] <= 1e-7, "closed-form distance " + fmt_g(dists[k]) +
                                          " at t=T*" + std::to_string(k + 1) + "/10");
    SimConfig cfg1 = cfg2;
    cfg1.steps = 200;
    const double dmono =
        interaction_frame_check(monochromatic_pulse(1, 1.0), cfg1, 2.0 * kPi);
    out.require(dmono <= 1e-7, "closed-form distance " + fmt_g(dmono) + " at T, mono m=1");

    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     start)
                           .count();
    out.require(sec < 60.0, "runtime " + std::to_string(sec) + " s exceeds 1 min");
    out.notes << (out.notes.tellp() > 0 ? "; " : "") << fmt_g(sec) << " s";
    return out;
}

// --- criterion 7: entanglement-of-formation improvement --------------------

Outcome criterion7() {
    Outcome out;
    struct Case {
        int m;
        double gamma;
        double r_e = 0.0;
        std::string error;
    };
    std::vector<Case> cases;
    for (double gamma : {1e-3, 1e-2})
        for (int m = 2; m <= 6; ++m) cases.push_back({m, gamma});
    parallel_for(static_cast<int>(cases.size()), [&](int i) {
        Case& c = cases[i];
        SimConfig cfg;
        cfg.n_qubits = 2;
        cfg.fock_cutoff = 12;
        cfg.steps = 200 * c.m;
        const double delta = c.m;  // delta = m * omega at omega = 1
        const EnvironmentRates rates{c.gamma * delta, c.gamma * delta, c.gamma * delta};
        try {
            for (;;) {
                try {
                    c.r_e = improvement_RE(c.m, rates, cfg);
                    break;
                } catch (const CutoffTooSmall& e) {
                    cfg.fock_cutoff = e.retry_cutoff;
                }
            }
        } catch (const std::exception& e) {
            c.error = e.what();
        }
    });
    double prev = 0.0;
    for (const Case& c : cases) {
        const std::string tag =
            "m=" + std::to_string(c.m) + ", gamma=" + fmt_g(c.gamma) + " delta";
        if (!c.error.empty()) {
            out.require(false, c.error + " at " + tag);
            continue;
        }
        out.require(c.r_e > 1.0, "R_E = " + fmt_g(c.r_e) + " not > 1 at " + tag);
        if (c.gamma == 1e-3) {
            out.require(c.r_e >= prev - 1e-3,
                        "R_E trend not non-decreasing at " + tag);
            prev = c.r_e;
            if (c.m == 6)
                out.require(std::abs(c.r_e - 2.0) <= 0.3,
                            "R_E(m=6) = " + fmt_g(c.r_e) + ", want 2.0(3)");
        }
    }
    return out;
}

// --- criterion 8: state-validity suite -------------------------------------

Outcome criterion8() {
    Outcome out;
    SimConfig cfg;
    cfg.n_qubits = 2;
    cfg.fock_cutoff = 12;
    cfg.steps = 600;
    const PulseSpec p = optimal_pulse(3, 1.0);
    const EnvironmentRates quiet{};
    const EnvironmentRates noisy{3e-3, 3e-3, 3e-3};

    for (const auto& rates : {quiet, noisy}) {
        const SimResult res = propagate(ground_initial(2, 12), p, rates, cfg);
        out.require(res.trace_drift <= 1e-9, "trace drift " + fmt_g(res.trace_drift));
        out.require(res.leakage <= 1e-8, "leakage " + fmt_g(res.leakage));
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
            0.5 * (res.final_qubit_state + res.final_qubit_state.adjoint()));
        out.require(es.eigenvalues()(0) >= -1e-8,
                    "min eigenvalue " + fmt_g(es.eigenvalues()(0)));
    }

    for (const auto& rates : {quiet, noisy}) {
        const double base = propagate(ground_initial(2, 12), p, rates, cfg).gate_fidelity;
        SimConfig fine = cfg;
        fine.steps *= 2;
        const double halved =
            propagate(ground_initial(2, 12), p, rates, fine).gate_fidelity;
        out.require(std::abs(halved - base) < 1e-8,
                    "step-halving changes fidelity by " + fmt_g(halved - base));
        SimConfig wide = cfg;
        wide.fock_cutoff += 5;
        const double wider =
            propagate(ground_initial(2, 17), p, rates, wide).gate_fidelity;
        out.require(std::abs(wider - base) < 1e-8,
                    "cutoff+5 changes fidelity by " + fmt_g(wider - base));
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {"pulse-design table and closed-form lambda", criterion1},
        {"calibration constraint suite", criterion2},
        {"displacement-moment oracle", criterion3},
        {"error-map oracle equivalence", criterion4},
        {"perturbative improvement ratios", criterion5},
        {"exact-simulation unitarity", criterion6},
        {"entanglement-of-formation improvement", criterion7},
        {"state-validity suite", criterion8},
    };
    int failures = 0;
    for (int i = 0; i < 8; ++i) {
        const Outcome out = entries[i].fn();
        const std::string notes = out.notes.str();
        std::printf("criterion %d (%s): %s%s%s\n", i + 1, entries[i].name,
                    out.pass ? "PASS" : "FAIL", notes.empty() ? "" : " -- ",
                    notes.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures;
}
