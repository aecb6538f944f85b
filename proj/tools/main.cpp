// entperc: percolation and entanglement toolkit for noisy nearest-neighbor
// circuits. Subcommands: percolate, pc-scan, evolve, eof, entlen, verify,
// dump-graph. Every stochastic run is keyed by an explicit master seed and
// emits a manifest next to its outputs.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "entperc/cluster_dynamics.hpp"
#include "entperc/entanglement.hpp"
#include "entperc/experiments.hpp"
#include "entperc/io.hpp"
#include "entperc/lattice.hpp"
#include "entperc/percolation.hpp"
#include "entperc/quantum.hpp"

using json = nlohmann::ordered_json;
using namespace entperc;

namespace {

constexpr const char* kToolVersion = "entperc 0.1.0";

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ManifestWriter {
    std::string subcommand;
    std::uint64_t master_seed = 0;
    json config = json::object();
    std::string started_at = timestamp_utc();
    std::vector<std::string> outputs;

    void set(const std::string& key, const json& value) { config[key] = value; }

    void finish() const {
        if (outputs.empty()) return;
        json m;
        m["tool_version"] = kToolVersion;
        m["subcommand"] = subcommand;
        m["master_seed"] = master_seed;
        m["config"] = config;
        m["started_at"] = started_at;
        m["finished_at"] = timestamp_utc();
        json outs = json::array();
        for (const std::string& path : outputs) {
            json o;
            o["path"] = path;
            o["sha256"] = sha256_file(path);
            o["bytes"] = read_file(path).size();
            outs.push_back(o);
        }
        m["outputs"] = outs;
        write_file(outputs.front() + ".manifest.json", m.dump(2) + "\n");
    }
};

int resolve_threads(int threads) {
    if (threads == 0) return static_cast<int>(std::thread::hardware_concurrency());
    return threads;
}

LatticeSpec spec_from(int dim, std::vector<int> sides, int steps) {
    LatticeSpec spec;
    spec.dimension = dim;
    spec.sides = std::move(sides);
    spec.steps = steps;
    spec.validate();
    return spec;
}

std::vector<ParticlePair> parse_pairs(const std::string& text, const LatticeSpec& spec) {
    std::vector<ParticlePair> pairs;
    if (text.empty() || text == "auto") {
        const int n = spec.particle_count();
        for (int sep = 2; sep <= n - 1; sep += 2)
            pairs.emplace_back((n - sep) / 2, (n - sep) / 2 + sep);
        if (pairs.empty()) throw CLI::ValidationError("--pairs", "lattice too small for auto pairs");
        return pairs;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--pairs", "expected a:b[,c:d...] or auto");
        pairs.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    }
    return pairs;
}

json fit_to_json(const DecayFit& fit) {
    json j;
    j["status"] = fit.status == DecayFit::Status::ok
                      ? "ok"
                      : (fit.status == DecayFit::Status::below_resolution ? "below_resolution"
                                                                          : "insufficient_data");
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["slope_std_error"] = fit.slope_std_error;
    j["r_squared"] = fit.r_squared;
    j["used_points"] = fit.used_points;
    j["dropped_points"] = fit.dropped_points;
    json pts = json::array();
    for (const auto& [d, y] : fit.points) pts.push_back({{"distance", d}, {"neg_log_value", y}});
    j["points"] = pts;
    return j;
}

// ---- percolate ----------------------------------------------------------

struct PercolateArgs {
    double p = 0.5;
    int dim = 1;
    std::vector<int> sides = {32};
    int steps = 32;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    std::string pairs = "auto";
    std::string out;
    int threads = 0;
};

int run_percolate(const PercolateArgs& args) {
    const LatticeSpec spec = spec_from(args.dim, args.sides, args.steps);
    const PercolationLattice lattice = contract_interactions(build_spacetime_graph(spec));
    const auto pairs = parse_pairs(args.pairs, spec);

    ManifestWriter manifest;
    manifest.subcommand = "percolate";
    manifest.master_seed = args.seed;
    manifest.set("p", args.p);
    manifest.set("dim", args.dim);
    manifest.set("sides", args.sides);
    manifest.set("steps", args.steps);
    manifest.set("samples", args.samples);
    manifest.set("seed", args.seed);
    manifest.set("pairs", args.pairs);
    manifest.set("threads", args.threads);

    const auto estimates =
        tau_estimate(lattice, args.p, pairs, args.samples, args.seed, resolve_threads(args.threads));

    CsvWriter csv({"pair_id", "distance", "samples", "hits", "tau", "stderr"});
    for (const auto& e : estimates)
        csv.add_row({CsvWriter::field(static_cast<std::int64_t>(e.pair_id)),
                     CsvWriter::field(static_cast<std::int64_t>(e.distance)),
                     CsvWriter::field(e.samples), CsvWriter::field(e.hits),
                     CsvWriter::field(e.tau), CsvWriter::field(e.std_error)});
    csv.write(args.out);
    manifest.outputs.push_back(args.out);
    manifest.finish();

    const DecayFit fit = fit_correlation_length(estimates);
    if (fit.ok())
        std::printf("tau fit: slope %.6g (stderr %.3g), xi %.6g, r2 %.4f\n", fit.slope,
                    fit.slope_std_error, fit.xi(), fit.r_squared);
    std::printf("wrote %s (%zu pairs, %lld samples)\n", args.out.c_str(), estimates.size(),
                static_cast<long long>(args.samples));
    return 0;
}

// ---- pc-scan ------------------------------------------------------------

struct PcScanArgs {
    double p_min = 0.40;
    double p_max = 0.60;
    double p_step = 0.01;
    int dim = 1;
    std::vector<int> sizes = {32, 64, 128};
    std::int64_t samples = 2000;
    std::uint64_t seed = 1;
    std::string out;
    int threads = 0;
};

int run_pc_scan(const PcScanArgs& args) {
    ManifestWriter manifest;
    manifest.subcommand = "pc-scan";
    manifest.master_seed = args.seed;
    manifest.set("p_min", args.p_min);
    manifest.set("p_max", args.p_max);
    manifest.set("p_step", args.p_step);
    manifest.set("dim", args.dim);
    manifest.set("sizes", args.sizes);
    manifest.set("samples", args.samples);
    manifest.set("seed", args.seed);

    const PcEstimate est = estimate_pc(args.dim, args.sizes, args.p_min, args.p_max, args.p_step,
                                       args.samples, args.seed, resolve_threads(args.threads));

    json report;
    report["dim"] = args.dim;
    report["sizes"] = est.sizes;
    report["p_grid"] = est.p_grid;
    json curves = json::array();
    for (std::size_t i = 0; i < est.spanning.size(); ++i)
        curves.push_back({{"size", est.sizes[i]}, {"spanning", est.spanning[i]}});
    report["curves"] = curves;
    report["pairwise_crossings"] = est.pairwise_crossings;
    report["p_c"] = est.p_c;
    report["uncertainty"] = est.uncertainty;

    if (!args.out.empty()) {
        write_file(args.out, report.dump(2) + "\n");
        manifest.outputs.push_back(args.out);
        manifest.finish();
    }
    std::printf("p_c = %.4f +- %.4f (dim %d, sizes", est.p_c, est.uncertainty, args.dim);
    for (int L : est.sizes) std::printf(" %d", L);
    std::printf(")\n");
    return 0;
}

// ---- evolve -------------------------------------------------------------

struct EvolveArgs {
    std::string engine = "auto";  // clusters | quantum
    double eta = 0.0;
    int dim = 1;
    std::vector<int> sides = {8};
    int steps = 8;
    std::uint64_t seed = 1;
    std::string circuit;  // ghz | random (quantum engine)
    int m = 1, mid = 1, q = 1;
    std::string model = "collapse";
    std::string init = "singletons";
    std::string emit;
    std::string emit_csv;
};

int run_evolve(const EvolveArgs& args) {
    const bool quantum = args.engine == "quantum" || (args.engine == "auto" && !args.circuit.empty());

    ManifestWriter manifest;
    manifest.subcommand = "evolve";
    manifest.master_seed = args.seed;
    manifest.set("engine", quantum ? "quantum" : "clusters");
    manifest.set("eta", args.eta);
    manifest.set("seed", args.seed);

    if (!quantum) {
        const LatticeSpec spec = spec_from(args.dim, args.sides, args.steps);
        manifest.set("dim", args.dim);
        manifest.set("sides", args.sides);
        manifest.set("steps", args.steps);
        manifest.set("init", args.init);
        const PercolationLattice lattice = contract_interactions(build_spacetime_graph(spec));
        const NoiseRealization r = sample_realization(lattice, 1.0 - args.eta, args.seed, 0);
        const InitialPartition init =
            args.init == "giant" ? InitialPartition::giant : InitialPartition::singletons;
        const ClusterTrajectory traj = evolve_clusters(spec, r, init);

        CsvWriter csv({"t", "particle", "cluster_id"});
        for (int t = 0; t <= traj.T; ++t)
            for (int x = 0; x < traj.n; ++x)
                csv.add_row({CsvWriter::field(static_cast<std::int64_t>(t)),
                             CsvWriter::field(static_cast<std::int64_t>(x)),
                             CsvWriter::field(static_cast<std::int64_t>(traj.labels[t][x]))});
        if (args.emit.empty()) throw CLI::ValidationError("--emit", "cluster evolution needs --emit");
        csv.write(args.emit);
        manifest.outputs.push_back(args.emit);
        manifest.finish();
        std::printf("wrote %s (%d particles, %d steps)\n", args.emit.c_str(), traj.n, traj.T);
        return 0;
    }

    NoiseChannelSpec noise = NoiseChannelSpec::collapse(args.eta);
    if (args.model == "depolarize")
        noise = NoiseChannelSpec::depolarize(args.eta);
    else if (args.model == "dephase")
        noise = NoiseChannelSpec::dephase(args.eta);
    else if (args.model != "collapse")
        throw CLI::ValidationError("--model", "unknown noise model");

    CircuitSchedule schedule;
    if (args.circuit == "ghz") {
        schedule = ghz_circuit(args.m, args.mid, args.q);
        if (args.steps > schedule.depth) extend_steps(schedule, args.steps);
        manifest.set("circuit", "ghz");
        manifest.set("m", args.m);
        manifest.set("mid", args.mid);
        manifest.set("q", args.q);
    } else if (args.circuit == "random") {
        const LatticeSpec spec = spec_from(args.dim, args.sides, args.steps);
        schedule = random_nn_circuit(spec, args.seed);
        manifest.set("circuit", "random");
        manifest.set("sides", args.sides);
    } else {
        throw CLI::ValidationError("--circuit", "expected ghz or random");
    }
    manifest.set("steps", schedule.steps());
    manifest.set("model", args.model);

    const DensityMatrix out = evolve_circuit(
        schedule, noise, DensityMatrix::zero_state(schedule.spec.particle_count()));

    if (!args.emit.empty()) {
        write_density_matrix(args.emit, out);
        manifest.outputs.push_back(args.emit);
    }
    if (!args.emit_csv.empty()) {
        write_file(args.emit_csv, density_matrix_csv(out));
        manifest.outputs.push_back(args.emit_csv);
    }
    manifest.finish();
    std::printf("evolved %d qubits for %d steps (trace error %.2e)\n",
                schedule.spec.particle_count(), schedule.steps(), out.trace_error());
    return 0;
}

// ---- eof ----------------------------------------------------------------

struct EofArgs {
    std::string in;
    std::string partition;
    std::string method = "auto";
    int restarts = 32;
    int ensemble = 0;  // 0: rank-derived default
    std::uint64_t seed = 1;
    std::string json_out;
};

Bipartition parse_partition(const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos)
        throw CLI::ValidationError("--partition", "expected A|B, e.g. 0,1|2,3");
    Bipartition bip;
    auto parse_side = [](const std::string& side) {
        std::vector<int> qubits;
        std::stringstream ss(side);
        std::string item;
        while (std::getline(ss, item, ',')) qubits.push_back(std::stoi(item));
        return qubits;
    };
    bip.side_a = parse_side(text.substr(0, bar));
    bip.side_b = parse_side(text.substr(bar + 1));
    return bip;
}

int run_eof(const EofArgs& args) {
    const DensityMatrix rho = read_density_matrix(args.in);
    const Bipartition bip = parse_partition(args.partition);
    bip.validate(rho.qubits());
    if (static_cast<int>(bip.side_a.size() + bip.side_b.size()) != rho.qubits())
        throw CLI::ValidationError("--partition", "partition must cover every qubit");

    ManifestWriter manifest;
    manifest.subcommand = "eof";
    manifest.master_seed = args.seed;
    manifest.set("in", args.in);
    manifest.set("partition", args.partition);
    manifest.set("method", args.method);
    manifest.set("restarts", args.restarts);

    // Method resolution: closed form for two qubits, exact entropy for pure
    // states, ensemble minimization otherwise.
    std::string method = args.method;
    if (method == "auto") {
        const double purity = std::real((rho.matrix() * rho.matrix()).trace());
        if (rho.qubits() == 2)
            method = "closed";
        else if (purity > 1.0 - 1e-10)
            method = "pure";
        else
            method = "minimize";
    }

    double value = 0.0;
    json detail;
    if (method == "closed") {
        if (rho.qubits() != 2) throw CLI::ValidationError("--method", "closed form needs 2 qubits");
        value = eof_two_qubit(rho).value;
    } else if (method == "pure") {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
        const Eigen::Index top = rho.dim() - 1;
        value = entropy_of_entanglement(solver.eigenvectors().col(top), rho.qubits(), bip);
    } else if (method == "minimize") {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
        int rank = 0;
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
            if (solver.eigenvalues()[i] > 1e-12) ++rank;
        const int k = args.ensemble > 0 ? args.ensemble : std::max(rank, 2);
        const EofResult res = eof_minimize(rho, bip, k, args.restarts, 1e-7, args.seed);
        value = res.value;
        detail["ensemble_size"] = res.ensemble_size;
        detail["converged"] = res.converged;
        detail["reconstruction_error"] = res.reconstruction_error;
        detail["weights"] = res.weights;
        json states = json::array();
        for (int i = 0; i < res.ensemble_size; ++i) {
            json col = json::array();
            for (Eigen::Index r = 0; r < res.states.rows(); ++r)
                col.push_back({res.states(r, i).real(), res.states(r, i).imag()});
            states.push_back(col);
        }
        detail["states"] = states;
    } else {
        throw CLI::ValidationError("--method", "expected auto, closed, pure or minimize");
    }

    std::printf("eof %.12g bits (method %s)\n", value, method.c_str());
    if (!args.json_out.empty()) {
        json report;
        report["value_bits"] = value;
        report["method"] = method;
        report["partition"] = args.partition;
        if (!detail.is_null()) report["detail"] = detail;
        write_file(args.json_out, report.dump(2) + "\n");
        manifest.outputs.push_back(args.json_out);
        manifest.finish();
    }
    return 0;
}

// ---- entlen -------------------------------------------------------------

struct EntLenArgs {
    int n = 10;
    int steps = 0;  // 0: construction depth for ghz
    double eta = 0.7;
    std::string circuit = "ghz";
    int m = 1, mid = 8, q = 1;
    std::string model = "collapse";
    std::string pairs = "from-first";  // (0, j) for all j
    int circuit_samples = 4;
    int warmup = 0;
    std::int64_t perc_samples = 500000;
    std::uint64_t seed = 1;
    std::string out;
    std::string csv_out;
    int threads = 0;
};

ExperimentConfig entlen_config(const EntLenArgs& args) {
    ExperimentConfig config;
    config.lattice.dimension = 1;
    config.lattice.sides = {args.n};
    config.eta = args.eta;
    config.seed = args.seed;
    config.circuit_samples = args.circuit_samples;
    config.warmup_steps = args.warmup;
    config.percolation_samples = args.perc_samples;
    config.threads = resolve_threads(args.threads);
    if (args.model == "depolarize")
        config.noise_model = NoiseChannelSpec::Model::depolarize;
    else if (args.model != "collapse")
        throw CLI::ValidationError("--model", "expected collapse or depolarize");

    if (args.circuit == "ghz") {
        config.circuit = CircuitKind::ghz;
        config.ghz_m = args.m;
        config.ghz_mid = args.mid;
        config.ghz_q = args.q;
        const int depth = ghz_circuit(args.m, args.mid, args.q).depth;
        config.lattice.steps = args.steps > 0 ? args.steps : depth;
    } else if (args.circuit == "random") {
        config.circuit = CircuitKind::random_nn;
        config.lattice.steps = args.steps > 0 ? args.steps : 8;
    } else {
        throw CLI::ValidationError("--circuit", "expected ghz or random");
    }

    if (args.pairs == "from-first") {
        for (int j = 1; j < args.n; ++j) config.pairs.emplace_back(0, j);
    } else if (args.pairs != "all") {
        config.pairs = parse_pairs(args.pairs, config.lattice);
    }
    return config;
}

int run_entlen(const EntLenArgs& args) {
    const ExperimentConfig config = entlen_config(args);

    ManifestWriter manifest;
    manifest.subcommand = "entlen";
    manifest.master_seed = args.seed;
    manifest.set("n", args.n);
    manifest.set("steps", config.lattice.steps);
    manifest.set("eta", args.eta);
    manifest.set("circuit", args.circuit);
    manifest.set("model", args.model);
    manifest.set("pairs", args.pairs);
    manifest.set("circuit_samples", args.circuit_samples);
    manifest.set("warmup", args.warmup);
    manifest.set("perc_samples", args.perc_samples);
    manifest.set("seed", args.seed);

    const EntLenReport report = estimate_entanglement_length(config);

    json j;
    j["config"] = manifest.config;
    json per_distance = json::array();
    for (const auto& [distance, avg] : report.distance_averages)
        per_distance.push_back({{"distance", distance}, {"avg_ef_bits", avg}});
    j["per_distance"] = per_distance;
    j["ef_fit"] = fit_to_json(report.ef_fit);
    j["mu"] = report.below_resolution ? json("below_resolution") : json(report.mu);
    j["xi_fit"] = fit_to_json(report.xi_fit);
    j["xi"] = report.xi;
    j["xi_upper"] = report.xi_upper;
    j["verdict_mu_le_xi_upper"] = report.mu_le_xi_upper;

    write_file(args.out, j.dump(2) + "\n");
    manifest.outputs.push_back(args.out);
    if (!args.csv_out.empty()) {
        CsvWriter csv({"a", "b", "distance", "avg_ef_bits"});
        for (const PairSeries& s : report.pairs)
            csv.add_row({CsvWriter::field(static_cast<std::int64_t>(s.a)),
                         CsvWriter::field(static_cast<std::int64_t>(s.b)),
                         CsvWriter::field(s.lattice_distance), CsvWriter::field(s.avg_ef)});
        csv.write(args.csv_out);
        manifest.outputs.push_back(args.csv_out);
    }
    manifest.finish();

    if (report.below_resolution)
        std::printf("mu below resolution (all averages under the floor); xi %.4g\n", report.xi);
    else
        std::printf("mu %.6g, xi %.6g (upper %.6g), mu <= xi_upper: %s\n", report.mu, report.xi,
                    report.xi_upper, report.mu_le_xi_upper ? "yes" : "no");
    return 0;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "correspondence";
    int trials = 1000;
    std::uint64_t seed = 1;
    std::string init = "mixed";
};

int run_verify(const VerifyArgs& args) {
    if (args.suite != "correspondence")
        throw CLI::ValidationError("--suite", "unknown suite: " + args.suite);
    SuiteInit init = SuiteInit::mixed;
    if (args.init == "singletons")
        init = SuiteInit::singletons;
    else if (args.init == "giant")
        init = SuiteInit::giant;
    else if (args.init != "mixed")
        throw CLI::ValidationError("--init", "expected singletons, giant or mixed");
    const CorrespondenceSuiteResult res = run_correspondence_suite(
        args.trials, args.seed, {1, 2}, 16, 16, {0.1, 0.3, 0.5, 0.7, 0.9}, init);
    std::printf("correspondence suite: %d trials, %d failures\n", res.trials, res.failures);
    if (!res.ok()) {
        std::fprintf(stderr, "first failure: %s\n", res.first_failure.c_str());
        return 2;
    }
    return 0;
}

// ---- dump-graph ---------------------------------------------------------

struct DumpGraphArgs {
    int dim = 1;
    std::vector<int> sides = {8};
    int steps = 8;
    std::string out;
};

int run_dump_graph(const DumpGraphArgs& args) {
    const LatticeSpec spec = spec_from(args.dim, args.sides, args.steps);
    const SpacetimeGraph g = build_spacetime_graph(spec);

    CsvWriter csv({"kind", "x1", "t1", "x2", "t2"});
    auto row = [&](const char* kind, std::int32_t v, std::int32_t w) {
        csv.add_row({kind, CsvWriter::field(static_cast<std::int64_t>(v % g.n)),
                     CsvWriter::field(static_cast<std::int64_t>(v / g.n)),
                     CsvWriter::field(static_cast<std::int64_t>(w % g.n)),
                     CsvWriter::field(static_cast<std::int64_t>(w / g.n))});
    };
    for (const auto& [v, w] : g.vertical_edges) row("vertical", v, w);
    for (const auto& [v, w] : g.interaction_edges) row("interaction", v, w);
    csv.write(args.out);

    ManifestWriter manifest;
    manifest.subcommand = "dump-graph";
    manifest.set("dim", args.dim);
    manifest.set("sides", args.sides);
    manifest.set("steps", args.steps);
    manifest.outputs.push_back(args.out);
    manifest.finish();
    std::printf("wrote %s (%zu vertical, %zu interaction edges)\n", args.out.c_str(),
                g.vertical_edges.size(), g.interaction_edges.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // Accept --config in any position by hoisting it ahead of the subcommand;
    // config files address subcommand options through [subcommand] sections.
    std::vector<std::string> args;
    std::vector<std::string> hoisted;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            hoisted.push_back(arg);
            hoisted.push_back(argv[++i]);
        } else if (arg.rfind("--config=", 0) == 0) {
            hoisted.push_back(arg);
        } else {
            args.push_back(arg);
        }
    }
    args.insert(args.begin(), hoisted.begin(), hoisted.end());

    CLI::App app{"percolation and entanglement toolkit for noisy nearest-neighbor circuits"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value config file; flags override");
    app.set_version_flag("--version", kToolVersion);

    PercolateArgs perc;
    auto* percolate = app.add_subcommand("percolate", "Monte-Carlo pair connectivity");
    percolate->configurable();
    percolate->add_option("--p", perc.p, "edge open probability")->check(CLI::Range(0.0, 1.0));
    percolate->add_option("--dim", perc.dim);
    percolate->add_option("--sides", perc.sides)->delimiter(',');
    percolate->add_option("--steps", perc.steps);
    percolate->add_option("--samples", perc.samples);
    percolate->add_option("--seed", perc.seed);
    percolate->add_option("--pairs", perc.pairs, "a:b[,c:d...] or auto");
    percolate->add_option("--out", perc.out)->required();
    percolate->add_option("--threads", perc.threads);

    PcScanArgs scan;
    auto* pc_scan = app.add_subcommand("pc-scan", "critical point from spanning curves");
    pc_scan->configurable();
    pc_scan->add_option("--p-min", scan.p_min);
    pc_scan->add_option("--p-max", scan.p_max);
    pc_scan->add_option("--p-step", scan.p_step);
    pc_scan->add_option("--dim", scan.dim);
    pc_scan->add_option("--sizes", scan.sizes)->delimiter(',');
    pc_scan->add_option("--samples", scan.samples);
    pc_scan->add_option("--seed", scan.seed);
    pc_scan->add_option("--out", scan.out);
    pc_scan->add_option("--threads", scan.threads);

    EvolveArgs evo;
    auto* evolve = app.add_subcommand("evolve", "cluster or density-matrix evolution");
    evolve->configurable();
    evolve->add_option("--engine", evo.engine, "clusters | quantum (auto from --circuit)");
    evolve->add_option("--eta", evo.eta)->check(CLI::Range(0.0, 1.0));
    evolve->add_option("--dim", evo.dim);
    evolve->add_option("--sides", evo.sides)->delimiter(',');
    evolve->add_option("--steps", evo.steps);
    evolve->add_option("--seed", evo.seed);
    evolve->add_option("--circuit", evo.circuit, "ghz | random");
    evolve->add_option("--m", evo.m);
    evolve->add_option("--mid", evo.mid);
    evolve->add_option("--q", evo.q);
    evolve->add_option("--model", evo.model, "collapse | depolarize | dephase");
    evolve->add_option("--init", evo.init, "singletons | giant");
    evolve->add_option("--emit", evo.emit, "clusters.csv or rho.bin");
    evolve->add_option("--emit-csv", evo.emit_csv, "small density matrices as csv");

    EofArgs eof;
    auto* eof_cmd = app.add_subcommand("eof", "entanglement of formation of a stored state");
    eof_cmd->configurable();
    eof_cmd->add_option("--in", eof.in)->required();
    eof_cmd->add_option("--partition", eof.partition, "A|B, e.g. 0,1|2,3")->required();
    eof_cmd->add_option("--method", eof.method, "auto | closed | pure | minimize");
    eof_cmd->add_option("--restarts", eof.restarts);
    eof_cmd->add_option("--ensemble", eof.ensemble, "ensemble size (default: rank)");
    eof_cmd->add_option("--seed", eof.seed);
    eof_cmd->add_option("--json", eof.json_out, "write a json report");

    EntLenArgs ent;
    auto* entlen = app.add_subcommand("entlen", "entanglement length study");
    entlen->configurable();
    entlen->add_option("--n", ent.n);
    entlen->add_option("--steps", ent.steps, "0: ghz construction depth");
    entlen->add_option("--eta", ent.eta)->check(CLI::Range(0.0, 1.0));
    entlen->add_option("--circuit", ent.circuit, "ghz | random");
    entlen->add_option("--m", ent.m);
    entlen->add_option("--mid", ent.mid);
    entlen->add_option("--q", ent.q);
    entlen->add_option("--model", ent.model, "collapse | depolarize");
    entlen->add_option("--pairs", ent.pairs, "from-first | all | a:b[,c:d...]");
    entlen->add_option("--circuit-samples", ent.circuit_samples);
    entlen->add_option("--warmup", ent.warmup, "steps dropped from the time average");
    entlen->add_option("--perc-samples", ent.perc_samples);
    entlen->add_option("--seed", ent.seed);
    entlen->add_option("--out", ent.out)->required();
    entlen->add_option("--csv", ent.csv_out, "per-pair csv companion");
    entlen->add_option("--threads", ent.threads);

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "exact identity suites");
    verify->configurable();
    verify->add_option("--suite", ver.suite, "correspondence");
    verify->add_option("--trials", ver.trials);
    verify->add_option("--seed", ver.seed);
    verify->add_option("--init", ver.init, "singletons | giant | mixed");

    DumpGraphArgs dump;
    auto* dump_graph = app.add_subcommand("dump-graph", "spacetime edge list as csv");
    dump_graph->configurable();
    dump_graph->add_option("--dim", dump.dim);
    dump_graph->add_option("--sides", dump.sides)->delimiter(',');
    dump_graph->add_option("--steps", dump.steps);
    dump_graph->add_option("--out", dump.out)->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        // Exit 1 on any usage or validation problem, 0 for --help/--version.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (percolate->parsed()) return run_percolate(perc);
        if (pc_scan->parsed()) return run_pc_scan(scan);
        if (evolve->parsed()) return run_evolve(evo);
        if (eof_cmd->parsed()) return run_eof(eof);
        if (entlen->parsed()) return run_entlen(ent);
        if (verify->parsed()) return run_verify(ver);
        if (dump_graph->parsed()) return run_dump_graph(dump);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
