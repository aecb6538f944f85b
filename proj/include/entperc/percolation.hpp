#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "entperc/lattice.hpp"

namespace entperc {

// One draw of the noise process: a bit per vertical edge, open = survived.
// Edge i corresponds to particle i % n collapsing (or not) in the gap between
// layers i / n and i / n + 1. Reproducible per (master_seed, sample_index).
struct NoiseRealization {
    const PercolationLattice* lattice = nullptr;
    double p = 0.0;
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
    std::vector<std::uint8_t> open;

    bool edge_open(std::size_t e) const { return open[e] != 0; }
    bool collapsed(int particle, int gap_t) const {
        return open[static_cast<std::size_t>(gap_t) * lattice->n + particle] == 0;
    }
};

NoiseRealization sample_realization(const PercolationLattice& lattice, double p,
                                    std::uint64_t master_seed, std::uint64_t sample_index);

// Flattened partition of the contracted nodes under the open edges.
struct ClusterPartition {
    std::vector<std::int32_t> root;
    std::int32_t component_count = 0;

    bool same(std::int32_t a, std::int32_t b) const { return root[a] == root[b]; }
    std::int32_t size() const { return static_cast<std::int32_t>(root.size()); }
};

ClusterPartition connected_components(const NoiseRealization& r);

struct ClusterStats {
    std::vector<std::int64_t> size_histogram;  // index = size, value = count
    double mean_size = 0.0;
    std::int64_t max_size = 0;
    std::int64_t component_count = 0;
};

ClusterStats cluster_size_stats(const ClusterPartition& partition);
ClusterStats cluster_size_stats(const NoiseRealization& r);

// Monte-Carlo estimate of the pair-connectivity probability tau.
struct TauEstimate {
    int pair_id = 0;
    int particle_a = 0;
    int particle_b = 0;
    std::int32_t node_a = 0;
    std::int32_t node_b = 0;
    int distance = 0;  // graph distance on the fully open contracted lattice
    std::int64_t samples = 0;
    std::int64_t hits = 0;
    double tau = 0.0;
    double std_error = 0.0;
};

// Connectivity between the contracted images of the given particle pairs at
// the top time layer, over `samples` independent realizations.
std::vector<TauEstimate> tau_estimate(const PercolationLattice& lattice, double p,
                                      const std::vector<ParticlePair>& particle_pairs,
                                      std::int64_t samples, std::uint64_t master_seed,
                                      int threads = 1);

// Least-squares line on (distance, -log tau). slope = 1/xi.
struct DecayFit {
    enum class Status { ok, below_resolution, insufficient_data };
    Status status = Status::insufficient_data;
    std::vector<std::pair<double, double>> points;  // (distance, -log value)
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    double r_squared = 0.0;
    int used_points = 0;
    int dropped_points = 0;

    bool ok() const { return status == Status::ok; }
    // Characteristic length 1/slope; infinity when the slope is <= 0.
    double xi() const;
    // 1 / (slope - z * stderr): upper confidence limit of the length.
    double xi_upper(double z = 1.96) const;
    double xi_lower(double z = 1.96) const;
};

// Points with fewer than `min_hits` hits are dropped before fitting
// (log of a near-zero estimate is pure noise).
DecayFit fit_correlation_length(const std::vector<TauEstimate>& estimates, int min_hits = 10);

// Same fit on raw (distance, value) points with values below `floor` dropped.
DecayFit fit_exponential_decay(const std::vector<std::pair<double, double>>& distance_value,
                               double floor = 0.0);

// A lattice with two terminal node sets; the spanning event is a left-right
// open crossing.
struct SpanningProblem {
    PercolationLattice lattice;
    std::vector<std::int32_t> left;
    std::vector<std::int32_t> right;
};

// Crossing problem along axis 0 of a (sides, steps) box.
SpanningProblem make_spanning_problem(const LatticeSpec& spec);

double spanning_probability(const SpanningProblem& problem, double p, std::int64_t samples,
                            std::uint64_t master_seed, int threads = 1);

struct PcEstimate {
    std::vector<double> p_grid;
    std::vector<int> sizes;
    std::vector<std::vector<double>> spanning;  // [size][grid point]
    std::vector<double> pairwise_crossings;     // one per consecutive size pair
    double p_c = 0.0;
    double uncertainty = 0.0;
};

// Crossing point of the spanning-probability curves across sizes. Throws
// std::runtime_error (with a diagnostic) when the curves do not cross on the
// grid.
PcEstimate estimate_pc(const std::vector<SpanningProblem>& problems,
                       const std::vector<int>& sizes, double p_min, double p_max, double p_step,
                       std::int64_t samples, std::uint64_t master_seed, int threads = 1);

// Convenience: square family (sides = {L,..}, steps = L) for a dimension;
// sizes are sorted ascending.
PcEstimate estimate_pc(int dimension, std::vector<int> sizes, double p_min, double p_max,
                       double p_step, std::int64_t samples, std::uint64_t master_seed,
                       int threads = 1);

// Survival probability, truncated at `depth`, of the branching process with
// Binomial(3, p) offspring: s_{k+1} = 1 - (1 - p s_k)^3. Dies out for p < 1/3.
double branching_survival(double p, int depth);

}  // namespace entperc
