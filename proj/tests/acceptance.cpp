// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <cstdarg>
// Pass --cli <path-to-entperc> to include the CLI determinism criterion and
// --only N to run a single criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "entperc/cluster_dynamics.hpp"
#include "entperc/entanglement.hpp"
#include "entperc/experiments.hpp"
#include "entperc/io.hpp"
#include "entperc/percolation.hpp"
#include "entperc/quantum.hpp"
#include "entperc/rng.hpp"

using namespace entperc;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// 1. Correspondence identity: exact on 10^4 random realizations from the
//    product start, plus 10^3 from the giant start on the augmented lattice.
void criterion_1() {
    const auto res = run_correspondence_suite(10000, 0xC0551, {1, 2}, 16, 16,
                                              {0.1, 0.3, 0.5, 0.7, 0.9},
                                              SuiteInit::singletons);
    const auto giant = run_correspondence_suite(1000, 0xC0552, {1, 2}, 8, 8,
                                                {0.1, 0.3, 0.5, 0.7, 0.9}, SuiteInit::giant);
    report(1, res.failures == 0 && giant.failures == 0,
           "correspondence identity on 10^4 + 10^3 realizations",
           fmt("%d singleton-start + %d giant-start trials, %d mismatches%s%s",
               res.trials, giant.trials, res.failures + giant.failures,
               res.failures + giant.failures ? ", first: " : "",
               (res.failures ? res.first_failure : giant.first_failure).c_str()));
}

// 2. Square-lattice critical point: p_c(1+1) = 0.50 +- 0.02.
void criterion_2() {
    const PcEstimate est = estimate_pc(1, {32, 64, 128}, 0.44, 0.56, 0.01, 2000, 0xBC01, 0);
    const bool pass = std::abs(est.p_c - 0.50) <= 0.02;
    report(2, pass, "square-lattice critical point",
           fmt("p_c = %.4f +- %.4f, target 0.50 +- 0.02", est.p_c, est.uncertainty));
}

// 3. 2+1 bracket: p_c within [1/3 - 0.02, 2^(-1/2) + 0.02].
void criterion_3() {
    const double lo = 1.0 / 3.0 - 0.02;
    const double hi = 1.0 / std::sqrt(2.0) + 0.02;
    const PcEstimate est = estimate_pc(2, {8, 12, 16}, 0.30, 0.60, 0.0125, 2000, 0xBC02, 0);
    const bool pass = est.p_c >= lo && est.p_c <= hi;
    report(3, pass, "2+1 critical point bracket",
           fmt("p_c = %.4f in [%.4f, %.4f]", est.p_c, lo, hi));
}

// 4. Sub-critical decay: positive slope, R^2 >= 0.95, slope decreasing in p.
void criterion_4() {
    const LatticeSpec spec{1, {40}, 24};
    const PercolationLattice lattice = contract_interactions(build_spacetime_graph(spec));
    std::vector<ParticlePair> pairs;
    for (int sep = 4; sep <= 16; sep += 2) pairs.emplace_back((40 - sep) / 2, (40 - sep) / 2 + sep);

    bool pass = true;
    std::string detail;
    double prev_slope = 1e9;
    for (double p : {0.30, 0.35, 0.40}) {
        const auto est = tau_estimate(lattice, p, pairs, 500000, 0xBC04, 0);
        const DecayFit fit = fit_correlation_length(est);
        const bool ok = fit.ok() && fit.slope > 0.0 && fit.r_squared >= 0.95 &&
                        fit.slope < prev_slope;
        pass = pass && ok;
        detail += fmt("p=%.2f: slope %.3f r2 %.3f; ", p, fit.slope, fit.r_squared);
        prev_slope = fit.slope;
    }
    report(4, pass, "sub-critical exponential decay", detail + "slopes decreasing in p");
}

// 5. GHZ construction: target state fidelity and one ebit across the cut.
void criterion_5() {
    const CircuitSchedule schedule = ghz_circuit(2, 2, 2);
    const DensityMatrix out =
        evolve_circuit(schedule, NoiseChannelSpec::collapse(0.0), DensityMatrix::zero_state(6));

    Vector expect = Vector::Zero(64);
    expect(0) = 1.0 / std::sqrt(2.0);
    expect(0b110011) = 1.0 / std::sqrt(2.0);
    const double fidelity = std::real((expect.adjoint() * out.matrix() * expect)(0, 0));

    const DensityMatrix ab = reduced_density_matrix(out, {0, 1, 4, 5});
    Eigen::SelfAdjointEigenSolver<Matrix> solver(ab.matrix());
    const double ef =
        entropy_of_entanglement(solver.eigenvectors().col(ab.dim() - 1), 4, {{0, 1}, {2, 3}});

    const bool pass = fidelity >= 1.0 - 1e-10 && std::abs(ef - 1.0) <= 1e-9;
    report(5, pass, "ghz(2,2,2) construction",
           fmt("fidelity 1 - %.2e, E_f across A|B = %.12f", 1.0 - fidelity, ef));
}

// 6. Minimization vs closed form on 50 random two-qubit states.
void criterion_6() {
    constexpr int kStates = 50;
    std::vector<double> gap(kStates);
    std::vector<std::thread> pool;
    const int workers = std::max(1u, std::thread::hardware_concurrency());
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < kStates; i += workers) {
                auto rng = make_stream_rng(0xBC06, i);
                std::normal_distribution<double> gauss(0.0, 1.0);
                Matrix g(4, 4);
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
                Matrix m = g * g.adjoint();
                m /= m.trace();
                const DensityMatrix rho = DensityMatrix::from_matrix(2, std::move(m));
                const double closed = eof_two_qubit(rho).value;
                const EofResult res = eof_minimize(rho, {{0}, {1}}, 4, 32, 1e-7, 0xE0F + i);
                gap[i] = res.value - closed;
            }
        });
    }
    for (auto& th : pool) th.join();

    double worst_high = -1e9, worst_low = 1e9;
    for (double d : gap) {
        worst_high = std::max(worst_high, d);
        worst_low = std::min(worst_low, d);
    }
    const bool pass = worst_low >= -1e-6 && worst_high <= 1e-2;
    report(6, pass, "two-qubit minimization vs closed form",
           fmt("gap range [%.2e, %.2e] within [-1e-6, +1e-2]", worst_low, worst_high));
}

// 7. Dephasing-collapse channel identity on 100 random single-qubit states.
void criterion_7() {
    auto rng = make_stream_rng(0xBC07, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Matrix g(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
        Matrix m = g * g.adjoint();
        m /= m.trace();
        const DensityMatrix rho = DensityMatrix::from_matrix(1, std::move(m));
        const double eta = (i + 1) / 101.0;
        const DensityMatrix a = apply_noise_channel(rho, NoiseChannelSpec::collapse(eta), 0);
        const DensityMatrix b =
            apply_noise_channel(rho, NoiseChannelSpec::dephase(-std::log(1.0 - eta)), 0);
        worst = std::max(worst, trace_distance(a.matrix(), b.matrix()));
    }
    report(7, worst < 1e-12, "dephasing equals collapse at exp(-gamma dt) = 1 - eta",
           fmt("max trace distance %.2e < 1e-12", worst));
}

ExperimentConfig bound_check_config() {
    ExperimentConfig config;
    config.lattice = LatticeSpec{1, {10}, 8};
    config.eta = 0.7;
    config.circuit = CircuitKind::random_nn;
    config.circuit_samples = 4;
    config.seed = 0xBC08;
    config.percolation_samples = 500000;
    config.threads = 0;
    return config;
}

// 8. Decay bound at xi's upper confidence limit, per pair and step;
//    also from the giant initial state with the two-term bound.
void criterion_8() {
    const ExperimentConfig config = bound_check_config();
    const DecayBoundTable plain = decay_bound_check(config, false);
    const DecayBoundTable giant = decay_bound_check(config, true);
    int checked = static_cast<int>(plain.rows.size() + giant.rows.size());
    double worst_margin = 1e300;
    for (const auto& rows : {plain.rows, giant.rows})
        for (const auto& row : rows)
            if (row.bound > 0) worst_margin = std::min(worst_margin, row.bound - row.ef);
    report(8, plain.all_pass && giant.all_pass, "decay bound on measured E_f",
           fmt("%d (pair, step) checks, xi_upper %.3f, min bound margin %.2e", checked,
               plain.xi_upper, worst_margin));
}

// 9. Fitted entanglement length does not exceed the fitted correlation
//    length's upper confidence limit.
void criterion_9() {
    ExperimentConfig config;
    config.lattice = LatticeSpec{1, {10}, ghz_circuit(1, 8, 1).depth};
    config.eta = 0.7;
    config.circuit = CircuitKind::ghz;
    config.ghz_m = 1;
    config.ghz_mid = 8;
    config.ghz_q = 1;
    for (int j = 1; j < 10; ++j) config.pairs.emplace_back(0, j);
    config.seed = 0xBC09;
    config.percolation_samples = 500000;
    config.threads = 0;

    const EntLenReport rep = estimate_entanglement_length(config);
    const bool fitted = rep.ef_fit.ok() && !rep.below_resolution;
    report(9, fitted && rep.mu_le_xi_upper, "entanglement length below correlation length",
           fmt("mu = %.4f (from %d distances) <= xi_upper = %.4f", rep.mu,
               rep.ef_fit.used_points, rep.xi_upper));
}

// 10. Noiseless infinite-length contrast: steady-window averages at one ebit
//     independent of the mid register.
void criterion_10() {
    std::vector<std::pair<double, double>> points;
    bool all_high = true;
    for (int mid = 1; mid <= 6; ++mid) {
        const CircuitSchedule probe = ghz_circuit(1, mid, 1);
        ExperimentConfig config;
        config.lattice = LatticeSpec{1, {2 + mid}, probe.depth + 32};
        config.eta = 0.0;
        config.circuit = CircuitKind::ghz;
        config.ghz_m = 1;
        config.ghz_mid = mid;
        config.ghz_q = 1;
        config.pairs = {{0, mid + 1}};
        config.warmup_steps = probe.depth;
        config.seed = 0xBC10;
        const auto series = time_averaged_entanglement(config);
        all_high = all_high && series[0].avg_ef >= 0.99;
        points.emplace_back(series[0].lattice_distance, series[0].avg_ef);
    }
    // Slope of -log <E_f> vs distance, tested against zero at two sigma
    // (plus the engine tolerance floor).
    double sx = 0, sy = 0;
    for (auto& [x, y] : points) {
        sx += x;
        sy += -std::log(std::max(y, 1e-300));
    }
    const double n = points.size(), mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, ss = 0;
    for (auto& [x, y] : points) {
        const double yy = -std::log(std::max(y, 1e-300));
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (yy - my);
    }
    const double slope = sxy / sxx;
    for (auto& [x, y] : points) {
        const double yy = -std::log(std::max(y, 1e-300));
        const double r = yy - my - slope * (x - mx);
        ss += r * r;
    }
    const double sigma = std::sqrt(ss / (n - 2) / sxx);
    const bool flat = std::abs(slope) <= 2.0 * sigma + 1e-9;
    report(10, all_high && flat, "noiseless averages independent of the mid register",
           fmt("min avg %.6f, slope %.2e (2 sigma + floor = %.2e)",
               [&] {
                   double m = 1.0;
                   for (auto& [x, y] : points) m = std::min(m, y);
                   return m;
               }(),
               slope, 2.0 * sigma + 1e-9));
}

// 11. CLI determinism: identical reruns give byte-identical outputs.
void criterion_11(const std::string& cli) {
    namespace fs = std::filesystem;
    if (cli.empty()) {
        report(11, false, "CLI determinism", "no --cli path given");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "entperc_acceptance";
    fs::remove_all(base);
    fs::create_directories(base / "a");
    fs::create_directories(base / "b");

    struct Run {
        std::string args;
        std::vector<std::string> outputs;
    };
    const std::vector<Run> runs = {
        {"percolate --p 0.45 --sides 24 --steps 16 --samples 4000 --seed 31 --out tau.csv",
         {"tau.csv"}},
        {"pc-scan --p-min 0.40 --p-max 0.60 --p-step 0.05 --sizes 8,16 --samples 300 --seed 32 "
         "--out pc.json",
         {"pc.json"}},
        {"evolve --eta 0.5 --sides 8 --steps 8 --seed 33 --emit clusters.csv", {"clusters.csv"}},
        {"evolve --circuit ghz --m 1 --mid 2 --q 1 --eta 0.2 --model depolarize --seed 34 "
         "--emit rho.bin --emit-csv rho.csv",
         {"rho.bin", "rho.csv"}},
        {"eof --in rho.bin --partition 0,1\\|2,3 --method minimize --restarts 8 --seed 35 "
         "--json eof.json",
         {"eof.json"}},
        {"entlen --n 8 --eta 0.6 --circuit ghz --m 1 --mid 6 --q 1 --seed 36 "
         "--perc-samples 20000 --out ent.json --csv ent.csv",
         {"ent.json", "ent.csv"}},
        {"verify --suite correspondence --trials 300 --seed 37 > verify.txt", {"verify.txt"}},
        {"dump-graph --dim 2 --sides 3,3 --steps 6 --out graph.csv", {"graph.csv"}},
    };

    bool pass = true;
    std::string detail;
    for (const Run& run : runs) {
        const bool has_redirect = run.args.find('>') != std::string::npos;
        for (const char* side : {"a", "b"}) {
            std::string cmd = "cd " + (base / side).string() + " && " + cli + " " + run.args;
            if (!has_redirect) cmd += " >> log.txt 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                pass = false;
                detail += "command failed: " + run.args + "; ";
            }
        }
        for (const std::string& out : run.outputs) {
            const std::string a = read_file((base / "a" / out).string());
            const std::string b = read_file((base / "b" / out).string());
            if (a != b) {
                pass = false;
                detail += out + " differs; ";
            }
        }
    }
    if (pass) detail = fmt("%zu subcommand runs, all outputs byte-identical", runs.size());
    report(11, pass, "CLI determinism", detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
        if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    const std::vector<std::function<void()>> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9,  criterion_10,
        [&] { criterion_11(cli); }};

    for (int i = 0; i < static_cast<int>(criteria.size()); ++i) {
        if (only != 0 && only != i + 1) continue;
        criteria[i]();
    }

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
