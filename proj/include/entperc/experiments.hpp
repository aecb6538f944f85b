#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entperc/entanglement.hpp"
#include "entperc/lattice.hpp"
#include "entperc/percolation.hpp"
#include "entperc/quantum.hpp"

namespace entperc {

enum class CircuitKind { ghz, random_nn };

struct ExperimentConfig {
    LatticeSpec lattice;  // chain geometry and step count of the run
    double eta = 0.0;
    NoiseChannelSpec::Model noise_model = NoiseChannelSpec::Model::collapse;
    CircuitKind circuit = CircuitKind::random_nn;
    int ghz_m = 1;
    int ghz_mid = 1;
    int ghz_q = 1;
    // Single-qubit observation pairs; empty selects all particle pairs.
    std::vector<ParticlePair> pairs;
    int circuit_samples = 4;
    // Steps excluded from the front of the time average (estimator for the
    // infinite-time average of a run with a known construction transient).
    int warmup_steps = 0;
    std::uint64_t seed = 1;
    std::int64_t percolation_samples = 500000;
    int threads = 1;
    double ef_floor = 1e-9;
    int max_qubits = kDefaultMaxQubits;

    void validate() const;
    NoiseChannelSpec noise() const;
};

struct PairSeries {
    int a = 0;
    int b = 0;
    double lattice_distance = 0.0;  // L1 distance in particle coordinates
    int graph_distance = 0;         // on the fully open contracted lattice
    double avg_ef = 0.0;            // bits, averaged over kept steps and circuit draws
    std::vector<double> mean_per_step;  // sample mean per step, t = 0..steps
    std::vector<double> max_per_step;   // sample max per step
};

// Exact channel evolution of the configured circuit family; entanglement of
// formation of each observed pair via the two-qubit closed form.
std::vector<PairSeries> time_averaged_entanglement(const ExperimentConfig& config);

// Correlation length of the matching percolation problem: tau between
// even-separation top-layer pairs, fitted over distance.
DecayFit measure_xi(const LatticeSpec& spec, double p, std::int64_t samples, std::uint64_t seed,
                    int threads = 1);

struct EntLenReport {
    std::vector<PairSeries> pairs;
    std::vector<std::pair<double, double>> distance_averages;  // (distance, mean avg_ef)
    DecayFit ef_fit;
    double mu = 0.0;  // 1 / ef slope; infinity when no decay is resolved
    bool below_resolution = false;
    DecayFit xi_fit;
    double xi = 0.0;
    double xi_upper = 0.0;
    bool mu_le_xi_upper = false;
};

EntLenReport estimate_entanglement_length(const ExperimentConfig& config);

struct DecayBoundRow {
    int a = 0;
    int b = 0;
    int t = 0;
    int distance = 0;
    double ef = 0.0;  // worst (largest) value across circuit draws
    double bound = 0.0;
    bool pass = false;
};

struct DecayBoundTable {
    std::vector<DecayBoundRow> rows;
    bool all_pass = false;
    double xi = 0.0;
    double xi_upper = 0.0;
    bool giant_initial = false;
};

// Checks measured E_f against the product-form bound at xi's upper confidence
// limit, per pair and step. With giant_initial the run starts from an
// n-qubit GHZ state and the two-term bound (with the time-decaying
// correction) applies.
DecayBoundTable decay_bound_check(const ExperimentConfig& config, bool giant_initial = false);

// Randomized correspondence suite: fresh spec and realization per trial.
enum class SuiteInit { singletons, giant, mixed };

struct CorrespondenceSuiteResult {
    int trials = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
};

CorrespondenceSuiteResult run_correspondence_suite(int trials, std::uint64_t seed,
                                                   const std::vector<int>& dimensions = {1, 2},
                                                   int max_particles = 16, int max_steps = 16,
                                                   const std::vector<double>& etas = {0.1, 0.3, 0.5,
                                                                                      0.7, 0.9},
                                                   SuiteInit init = SuiteInit::mixed);

}  // namespace entperc
