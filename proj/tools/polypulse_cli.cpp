// Command-line surface for pulse design, error-map analysis, sweeps, and exact
// master-equation simulation. All output is byte-deterministic: fixed column
// order, 12-significant-digit floats, trailing newline, sweep rows sorted by
// the sweep variable regardless of evaluation order.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "polypulse/io.hpp"
#include "polypulse/lindblad.hpp"
#include "polypulse/oracle.hpp"
#include "polypulse/zeta.hpp"

namespace {

using namespace polypulse;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_int_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) return {std::stoi(text)};
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (hi < lo) throw UsageError("range '" + text + "' is empty");
        std::vector<int> out;
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse integer range '" + text + "'");
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw UsageError("cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list '" + text + "'");
    return out;
}

int thread_cap() {
    if (const char* env = std::getenv("POLYPULSE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Evaluate fn(i) for i in [0, n) on up to thread_cap() workers; results land in
// index order, so parallelism never changes output bytes.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void emit(const std::string& text, const std::string& path) {
    std::string out = text;
    if (out.empty() || out.back() != '\n') out.push_back('\n');
    if (path.empty()) {
        std::cout << out;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << out;
}

struct RateFlags {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_dephase = 0.0;
    std::string units = "delta";  // delta (= m*omega) or omega

    void add_to(CLI::App* cmd) {
        cmd->add_option("--gamma-plus", gamma_plus, "Heating rate (units of --rate-units)");
        cmd->add_option("--gamma-minus", gamma_minus, "Damping rate");
        cmd->add_option("--gamma-dephase", gamma_dephase, "Dephasing rate");
        cmd->add_option("--rate-units", units, "Rate units: delta (= m*omega) or omega")
            ->check(CLI::IsMember({"delta", "omega"}));
    }
    EnvironmentRates resolve(int m, double omega) const {
        const double scale = (units == "delta") ? m * omega : omega;
        return {gamma_plus * scale, gamma_minus * scale, gamma_dephase * scale};
    }
};

struct BusFlags {
    std::string kind = "ground";  // ground | thermal | coherent
    double nbar = 2.0;
    double alpha_re = 0.5;
    double alpha_im = 0.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--bus", kind, "Bus state: ground, thermal, or coherent")
            ->check(CLI::IsMember({"ground", "thermal", "coherent"}));
        cmd->add_option("--nbar", nbar, "Thermal occupation (bus thermal)");
        cmd->add_option("--alpha-re", alpha_re, "Coherent amplitude, real part");
        cmd->add_option("--alpha-im", alpha_im, "Coherent amplitude, imaginary part");
    }
    BusMoments moments() const {
        if (kind == "thermal") return BusMoments::thermal(nbar);
        if (kind == "coherent") return BusMoments::coherent({alpha_re, alpha_im});
        return BusMoments::ground();
    }
    MatrixXcd density_matrix(int cutoff) const {
        if (kind == "thermal") {
            const int dim = std::max(cutoff, thermal_cutoff(nbar));
            return thermal_state(dim, nbar);
        }
        if (kind == "coherent") return coherent_state(cutoff, {alpha_re, alpha_im});
        return fock_state(cutoff, 0);
    }
};

PulseSpec make_pulse(const std::string& kind, int m, double omega) {
    if (kind == "mono") return monochromatic_pulse(m, omega);
    return optimal_pulse(m, omega);
}

Metric parse_metric(const std::string& name) {
    return name == "frobenius_sq" ? Metric::frobenius_sq : Metric::frobenius;
}

// ---------------------------------------------------------------------------

int cmd_design(int m, double omega, const std::string& format, const std::string& output) {
    const PulseSpec pulse = optimal_pulse(m, omega);
    if (format == "json") {
        emit(pulse_to_json(pulse), output);
        return 0;
    }
    std::ostringstream out;
    out << "harmonic,re,im\n";
    for (const auto& c : pulse.components)
        out << c.harmonic << "," << fmt_g(c.amplitude.real()) << ","
            << fmt_g(c.amplitude.imag()) << "\n";
    emit(out.str(), output);
    return 0;
}

int cmd_trajectory(int m, double omega, int samples, const std::string& pulse_kind,
                   const std::string& format, const std::string& output) {
    const PulseSpec pulse = make_pulse(pulse_kind, m, omega);
    const auto points = trajectory(pulse, samples);
    std::ostringstream out;
    if (format == "json") {
        out << "[";
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (k) out << ",";
            out << "{\"t\":" << fmt_g(points[k].t) << ",\"f_re\":" << fmt_g(points[k].f_re)
                << ",\"f_im\":" << fmt_g(points[k].f_im) << ",\"g\":" << fmt_g(points[k].g)
                << "}";
        }
        out << "]";
    } else {
        out << "t,f_re,f_im,g\n";
        for (const auto& p : points)
            out << fmt_g(p.t) << "," << fmt_g(p.f_re) << "," << fmt_g(p.f_im) << ","
                << fmt_g(p.g) << "\n";
    }
    emit(out.str(), output);
    return 0;
}

int cmd_zeta(int m, int N, double omega, const std::string& pulse_kind,
             const std::string& provenance, const RateFlags& rate_flags,
             const BusFlags& bus_flags, int cutoff, const std::string& output) {
    const PulseSpec pulse = make_pulse(pulse_kind, m, omega);
    const EnvironmentRates rates = rate_flags.resolve(m, omega);
    ZetaMatrix zeta;
    if (provenance == "oracle") {
        zeta = zeta_oracle(pulse, N, rates, bus_flags.density_matrix(cutoff)).zeta;
    } else if (provenance == "printed") {
        zeta = assemble_zeta_printed(pulse, N, rates, bus_flags.moments());
    } else {
        zeta = assemble_zeta(pulse, N, rates, bus_flags.moments());
    }
    emit(zeta_to_json(zeta), output);
    return 0;
}

int cmd_sweep(const std::string& vary, const std::string& m_range,
              const std::string& ions_range, const std::string& nbar_list, double omega,
              const RateFlags& rate_flags, const BusFlags& bus_flags,
              const std::string& metric_name, const std::string& output) {
    const Metric metric = parse_metric(metric_name);
    const std::vector<int> ms = parse_int_range(m_range);
    const std::vector<int> ions = parse_int_range(ions_range);
    std::vector<double> nbars = {bus_flags.nbar};
    if (vary == "nbar") nbars = parse_double_list(nbar_list);

    struct Row {
        int m, N;
        double nbar;
        double i_mono, i_poly, r;
    };
    std::vector<Row> grid;
    if (vary == "m") {
        if (ions.size() != 1) throw UsageError("--ions must be a single value for --vary m");
        for (int m : ms) grid.push_back({m, ions[0], nbars[0], 0, 0, 0});
    } else if (vary == "ions") {
        if (ms.size() != 1) throw UsageError("--m must be a single value for --vary ions");
        for (int N : ions) grid.push_back({ms[0], N, nbars[0], 0, 0, 0});
    } else if (vary == "nbar") {
        if (ms.size() != 1 || ions.size() != 1)
            throw UsageError("--m and --ions must be single values for --vary nbar");
        for (double nb : nbars) grid.push_back({ms[0], ions[0], nb, 0, 0, 0});
    } else {
        throw UsageError("--vary must be one of m, ions, nbar");
    }

    parallel_for(static_cast<int>(grid.size()), [&](int i) {
        Row& row = grid[i];
        const EnvironmentRates rates = rate_flags.resolve(row.m, omega);
        if (rates.all_zero())
            throw UsageError("all rates are zero; the improvement ratio is undefined");
        BusFlags bus = bus_flags;
        bus.nbar = row.nbar;
        const BusMoments moments = bus.moments();
        row.i_mono = infidelity(
            assemble_zeta(monochromatic_pulse(row.m, omega), row.N, rates, moments), metric);
        row.i_poly = infidelity(
            assemble_zeta(optimal_pulse(row.m, omega), row.N, rates, moments), metric);
        row.r = row.i_mono / row.i_poly;
    });

    std::ostringstream out;
    out << "m,N,gamma_plus,gamma_minus,gamma_dephase,nbar,metric,I_mono,I_poly,R\n";
    for (const Row& row : grid) {
        BusFlags bus = bus_flags;
        bus.nbar = row.nbar;
        out << row.m << "," << row.N << "," << fmt_g(rate_flags.gamma_plus) << ","
            << fmt_g(rate_flags.gamma_minus) << "," << fmt_g(rate_flags.gamma_dephase)
            << "," << fmt_g(bus.moments().n_mean) << "," << metric_name << ","
            << fmt_g(row.i_mono) << "," << fmt_g(row.i_poly) << "," << fmt_g(row.r)
            << "\n";
    }
    emit(out.str(), output);
    return 0;
}

int cmd_simulate(int m, int N, double omega, const std::string& pulse_kind,
                 const std::string& pulse_file, const RateFlags& rate_flags,
                 const BusFlags& bus_flags, int fock_level, int cutoff, int steps,
                 const std::string& output) {
    if (N > 4) throw UsageError("simulate supports at most 4 qubits");
    PulseSpec pulse;
    if (!pulse_file.empty()) {
        std::ifstream in(pulse_file, std::ios::binary);
        if (!in) throw UsageError("cannot read pulse file '" + pulse_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        pulse = pulse_from_json(buf.str());
        m = pulse.max_harmonic();
    } else {
        pulse = make_pulse(pulse_kind, m, omega);
    }
    SimConfig config;
    config.n_qubits = N;
    config.fock_cutoff = cutoff;
    config.steps = steps > 0 ? steps : 200 * m;

    MatrixXcd bus;
    if (fock_level >= 0) {
        bus = fock_state(config.fock_cutoff, fock_level);
    } else {
        bus = bus_flags.density_matrix(config.fock_cutoff);
        config.fock_cutoff = static_cast<int>(bus.rows());
    }
    Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(Eigen::Index{1} << N);
    qubits(0) = 1.0;

    const EnvironmentRates rates = rate_flags.resolve(m, pulse.fundamental_frequency);
    const SimResult result = propagate(make_initial(qubits, bus, N), pulse, rates, config);
    emit(simulation_to_json(pulse, rates, config, result), output);
    return 0;
}

int cmd_compare_eof(const std::string& m_range, double omega, double gamma,
                    const RateFlags& rate_flags_in, int cutoff, int steps,
                    const std::string& output) {
    const std::vector<int> ms = parse_int_range(m_range);
    RateFlags rate_flags = rate_flags_in;
    if (rate_flags.gamma_plus == 0.0 && rate_flags.gamma_minus == 0.0 &&
        rate_flags.gamma_dephase == 0.0) {
        rate_flags.gamma_plus = rate_flags.gamma_minus = rate_flags.gamma_dephase = gamma;
    }

    struct Row {
        int m;
        double e_mono, e_poly, r_e;
    };
    std::vector<Row> rows(ms.size());
    parallel_for(static_cast<int>(ms.size()), [&](int i) {
        const int m = ms[i];
        SimConfig config;
        config.n_qubits = 2;
        config.fock_cutoff = cutoff;
        config.steps = steps > 0 ? steps : 200 * m;
        Eigen::VectorXcd qubits = Eigen::VectorXcd::Zero(4);
        qubits(0) = 1.0;
        const QuantumState init =
            make_initial(qubits, fock_state(config.fock_cutoff, 0), 2);
        const EnvironmentRates rates = rate_flags.resolve(m, omega);
        const double e_mono =
            propagate(init, monochromatic_pulse(m, omega), rates, config).eof;
        const double e_poly = propagate(init, optimal_pulse(m, omega), rates, config).eof;
        if (1.0 - e_poly < 1e-12)
            throw std::runtime_error("ratio undefined: 1 - E_poly below 1e-12");
        rows[i] = {m, e_mono, e_poly, (1.0 - e_mono) / (1.0 - e_poly)};
    });

    std::ostringstream out;
    out << "m,gamma_over_delta,E_mono,E_poly,R_E\n";
    for (const Row& row : rows)
        out << row.m << "," << fmt_g(gamma) << "," << fmt_g(row.e_mono) << ","
            << fmt_g(row.e_poly) << "," << fmt_g(row.r_e) << "\n";
    emit(out.str(), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polychromatic Molmer-Sorensen gate pulse toolkit"};
    app.require_subcommand(1);

    int m = 2, ions = 2, samples = 201, cutoff = 12, steps = 0, fock_level = -1;
    double omega = 1.0, gamma = 1e-3;
    std::string format = "json", output, pulse_kind = "optimal", provenance = "reconciled";
    std::string metric_name = "frobenius", vary = "m", m_range = "2", ions_range = "2";
    std::string nbar_list = "0", pulse_file;
    RateFlags rates;
    BusFlags bus;

    auto* design = app.add_subcommand("design", "Optimal pulse amplitudes for m harmonics");
    design->add_option("--m", m, "Number of harmonics (>= 2)")->required();
    design->add_option("--omega", omega, "Fundamental frequency (default 1)");
    design->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    design->add_option("--output", output, "Output path (default stdout)");

    auto* traj = app.add_subcommand("trajectory", "Phase-space trajectory f(t), g(t)");
    traj->add_option("--m", m, "Number of harmonics")->required();
    traj->add_option("--omega", omega, "Fundamental frequency");
    traj->add_option("--samples", samples, "Sample count over [0, T] (>= 2)");
    traj->add_option("--pulse", pulse_kind, "optimal or mono")
        ->check(CLI::IsMember({"optimal", "mono"}));
    traj->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    traj->add_option("--output", output, "Output path");

    auto* zeta = app.add_subcommand("zeta", "First-order error-map matrix");
    zeta->add_option("--m", m, "Number of harmonics")->required();
    zeta->add_option("--ions", ions, "Number of qubits N");
    zeta->add_option("--omega", omega, "Fundamental frequency");
    zeta->add_option("--pulse", pulse_kind, "optimal or mono")
        ->check(CLI::IsMember({"optimal", "mono"}));
    zeta->add_option("--provenance", provenance, "reconciled, printed, or oracle")
        ->check(CLI::IsMember({"reconciled", "printed", "oracle"}));
    zeta->add_option("--cutoff", cutoff, "Fock cutoff (oracle provenance)");
    rates.add_to(zeta);
    bus.add_to(zeta);
    zeta->add_option("--output", output, "Output path");

    auto* sweep = app.add_subcommand("sweep", "Infidelity-ratio grids (CSV)");
    sweep->add_option("--vary", vary, "Sweep variable: m, ions, or nbar")->required();
    sweep->add_option("--m", m_range, "Harmonic count or range a:b");
    sweep->add_option("--ions", ions_range, "Qubit count or range a:b");
    sweep->add_option("--nbar-values", nbar_list, "Comma-separated nbar grid");
    sweep->add_option("--omega", omega, "Fundamental frequency");
    sweep->add_option("--metric", metric_name, "frobenius or frobenius_sq")
        ->check(CLI::IsMember({"frobenius", "frobenius_sq"}));
    rates.add_to(sweep);
    bus.add_to(sweep);
    sweep->add_option("--output", output, "Output path");

    auto* sim = app.add_subcommand("simulate", "Exact master-equation run (JSON)");
    sim->add_option("--m", m, "Number of harmonics");
    sim->add_option("--ions", ions, "Number of qubits N (<= 4)");
    sim->add_option("--omega", omega, "Fundamental frequency");
    sim->add_option("--pulse", pulse_kind, "optimal or mono")
        ->check(CLI::IsMember({"optimal", "mono"}));
    sim->add_option("--pulse-file", pulse_file, "Pulse JSON file (overrides --m/--pulse)");
    sim->add_option("--cutoff", cutoff, "Fock cutoff");
    sim->add_option("--steps", steps, "Integrator steps (default 200*m)");
    sim->add_option("--fock", fock_level, "Initial bus Fock level (overrides --bus)");
    rates.add_to(sim);
    bus.add_to(sim);
    sim->add_option("--output", output, "Output path");

    auto* cmp = app.add_subcommand("compare-eof", "Entanglement-of-formation ratio (CSV)");
    cmp->add_option("--m", m_range, "Harmonic count or range a:b (default 2:6)");
    cmp->add_option("--omega", omega, "Fundamental frequency");
    cmp->add_option("--gamma", gamma, "Uniform rate in units of delta (default 1e-3)");
    cmp->add_option("--cutoff", cutoff, "Fock cutoff");
    cmp->add_option("--steps", steps, "Integrator steps (default 200*m)");
    rates.add_to(cmp);
    cmp->add_option("--output", output, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (design->parsed()) return cmd_design(m, omega, format, output);
        if (traj->parsed())
            return cmd_trajectory(m, omega, samples, pulse_kind, format, output);
        if (zeta->parsed())
            return cmd_zeta(m, ions, omega, pulse_kind, provenance, rates, bus, cutoff,
                            output);
        if (sweep->parsed())
            return cmd_sweep(vary, m_range, ions_range, nbar_list, omega, rates, bus,
                             metric_name, output);
        if (sim->parsed())
            return cmd_simulate(m, ions, omega, pulse_kind, pulse_file, rates, bus,
                                fock_level, cutoff, steps, output);
        if (cmp->parsed()) {
            if (m_range == "2") m_range = "2:6";
            return cmd_compare_eof(m_range, omega, gamma, rates, cutoff, steps, output);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
