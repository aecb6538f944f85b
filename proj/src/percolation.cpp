#include "entperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "entperc/disjoint_set.hpp"
#include "entperc/rng.hpp"

namespace entperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Splits [0, total) into contiguous ranges, one worker per range. Reductions
// are integer counts, so the result does not depend on the split.
void parallel_samples(std::int64_t total, int threads,
                      const std::function<void(std::int64_t, std::int64_t, int)>& work) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(total, 1)));
    if (threads == 1) {
        work(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        std::int64_t begin = total * w / threads;
        std::int64_t end = total * (w + 1) / threads;
        pool.emplace_back(work, begin, end, w);
    }
    for (auto& th : pool) th.join();
}

void fill_bits(const PercolationLattice& lattice, double p, std::uint64_t master_seed,
               std::uint64_t sample_index, std::vector<std::uint8_t>& open) {
    const BernoulliBits bits(p);
    auto rng = make_stream_rng(master_seed, sample_index);
    open.resize(lattice.edges.size());
    for (auto& bit : open) bit = bits.draw(rng) ? 1 : 0;
}

void unite_open(DisjointSet& dsu, const PercolationLattice& lattice,
                const std::vector<std::uint8_t>& open) {
    const auto& edges = lattice.edges;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (open[e]) dsu.unite(edges[e].first, edges[e].second);
    for (const auto& [a, b] : lattice.chain_edges) dsu.unite(a, b);
}

}  // namespace

NoiseRealization sample_realization(const PercolationLattice& lattice, double p,
                                    std::uint64_t master_seed, std::uint64_t sample_index) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability must be in [0, 1]");
    NoiseRealization r;
    r.lattice = &lattice;
    r.p = p;
    r.master_seed = master_seed;
    r.sample_index = sample_index;
    fill_bits(lattice, p, master_seed, sample_index, r.open);
    return r;
}

ClusterPartition connected_components(const NoiseRealization& r) {
    const PercolationLattice& lat = *r.lattice;
    DisjointSet dsu(lat.node_count);
    unite_open(dsu, lat, r.open);

    ClusterPartition part;
    part.root.resize(lat.node_count);
    for (std::int32_t v = 0; v < lat.node_count; ++v) part.root[v] = dsu.find(v);
    part.component_count = dsu.component_count();
    return part;
}

ClusterStats cluster_size_stats(const ClusterPartition& partition) {
    std::vector<std::int64_t> size_of(partition.root.size(), 0);
    for (std::int32_t r : partition.root) ++size_of[r];

    ClusterStats stats;
    stats.component_count = partition.component_count;
    for (std::size_t v = 0; v < partition.root.size(); ++v) {
        std::int64_t s = size_of[v];
        if (s == 0) continue;
        if (s >= static_cast<std::int64_t>(stats.size_histogram.size()))
            stats.size_histogram.resize(s + 1, 0);
        ++stats.size_histogram[s];
        stats.max_size = std::max(stats.max_size, s);
    }
    if (stats.component_count > 0)
        stats.mean_size =
            static_cast<double>(partition.root.size()) / static_cast<double>(stats.component_count);
    return stats;
}

ClusterStats cluster_size_stats(const NoiseRealization& r) {
    return cluster_size_stats(connected_components(r));
}

std::vector<TauEstimate> tau_estimate(const PercolationLattice& lattice, double p,
                                      const std::vector<ParticlePair>& particle_pairs,
                                      std::int64_t samples, std::uint64_t master_seed,
                                      int threads) {
    if (samples < 1) throw std::invalid_argument("tau estimation needs samples >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability must be in [0, 1]");

    std::vector<TauEstimate> est(particle_pairs.size());
    for (std::size_t i = 0; i < particle_pairs.size(); ++i) {
        auto [a, b] = particle_pairs[i];
        est[i].pair_id = static_cast<int>(i);
        est[i].particle_a = a;
        est[i].particle_b = b;
        est[i].node_a = lattice.node_of(a, lattice.T);
        est[i].node_b = lattice.node_of(b, lattice.T);
        est[i].distance = graph_distance(lattice, est[i].node_a, est[i].node_b);
        est[i].samples = samples;
    }

    const int nworkers =
        threads <= 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    std::vector<std::vector<std::int64_t>> hits(nworkers,
                                                std::vector<std::int64_t>(est.size(), 0));

    parallel_samples(samples, nworkers, [&](std::int64_t begin, std::int64_t end, int worker) {
        DisjointSet dsu(lattice.node_count);
        std::vector<std::uint8_t> open;
        for (std::int64_t s = begin; s < end; ++s) {
            fill_bits(lattice, p, master_seed, static_cast<std::uint64_t>(s), open);
            dsu.reset();
            unite_open(dsu, lattice, open);
            for (std::size_t i = 0; i < est.size(); ++i)
                if (dsu.same(est[i].node_a, est[i].node_b)) ++hits[worker][i];
        }
    });

    for (std::size_t i = 0; i < est.size(); ++i) {
        std::int64_t h = 0;
        for (int w = 0; w < nworkers; ++w) h += hits[w][i];
        est[i].hits = h;
        est[i].tau = static_cast<double>(h) / static_cast<double>(samples);
        est[i].std_error = std::sqrt(est[i].tau * (1.0 - est[i].tau) / static_cast<double>(samples));
    }
    return est;
}

double DecayFit::xi() const { return slope > 0.0 ? 1.0 / slope : kInf; }

double DecayFit::xi_upper(double z) const {
    const double lo = slope - z * slope_std_error;
    return lo > 0.0 ? 1.0 / lo : kInf;
}

double DecayFit::xi_lower(double z) const {
    const double hi = slope + z * slope_std_error;
    return hi > 0.0 ? 1.0 / hi : kInf;
}

DecayFit fit_exponential_decay(const std::vector<std::pair<double, double>>& distance_value,
                               double floor) {
    DecayFit fit;
    int dropped = 0;
    for (const auto& [d, v] : distance_value) {
        if (v <= 0.0 || v <= floor) {
            ++dropped;
            continue;
        }
        fit.points.emplace_back(d, -std::log(v));
    }
    fit.dropped_points = dropped;
    fit.used_points = static_cast<int>(fit.points.size());

    if (fit.used_points == 0 && !distance_value.empty()) {
        fit.status = DecayFit::Status::below_resolution;
        return fit;
    }
    if (fit.used_points < 3) {
        fit.status = DecayFit::Status::insufficient_data;
        return fit;
    }

    double sx = 0, sy = 0;
    for (const auto& [x, y] : fit.points) {
        sx += x;
        sy += y;
    }
    const double n = fit.used_points;
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : fit.points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx <= 0.0) {
        fit.status = DecayFit::Status::insufficient_data;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0;
    for (const auto& [x, y] : fit.points) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.slope_std_error = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    fit.status = DecayFit::Status::ok;
    return fit;
}

DecayFit fit_correlation_length(const std::vector<TauEstimate>& estimates, int min_hits) {
    std::vector<std::pair<double, double>> points;
    points.reserve(estimates.size());
    int dropped_low_hits = 0;
    for (const auto& e : estimates) {
        if (e.hits < min_hits) {
            ++dropped_low_hits;
            continue;
        }
        points.emplace_back(static_cast<double>(e.distance), e.tau);
    }
    if (points.empty()) {
        DecayFit fit;
        fit.status =
            estimates.empty() ? DecayFit::Status::insufficient_data : DecayFit::Status::below_resolution;
        fit.dropped_points = dropped_low_hits;
        return fit;
    }
    DecayFit fit = fit_exponential_decay(points);
    fit.dropped_points += dropped_low_hits;
    return fit;
}

SpanningProblem make_spanning_problem(const LatticeSpec& spec) {
    SpanningProblem problem;
    problem.lattice = contract_interactions(build_spacetime_graph(spec));
    const PercolationLattice& lat = problem.lattice;

    std::vector<std::uint8_t> is_left(lat.node_count, 0), is_right(lat.node_count, 0);
    const int side0 = spec.sides[0];
    for (int x = 0; x < lat.n; ++x) {
        const int c0 = particle_coords(spec, x)[0];
        if (c0 != 0 && c0 != side0 - 1) continue;
        for (int t = 0; t <= lat.T; ++t) {
            const std::int32_t node = lat.node_of(x, t);
            (c0 == 0 ? is_left : is_right)[node] = 1;
        }
    }
    for (std::int32_t v = 0; v < lat.node_count; ++v) {
        if (is_left[v]) problem.left.push_back(v);
        if (is_right[v]) problem.right.push_back(v);
    }
    return problem;
}

double spanning_probability(const SpanningProblem& problem, double p, std::int64_t samples,
                            std::uint64_t master_seed, int threads) {
    const PercolationLattice& lat = problem.lattice;
    // Two virtual terminals wired to the left and right sets.
    const std::int32_t source = lat.node_count;
    const std::int32_t sink = lat.node_count + 1;

    const int nworkers =
        threads <= 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    std::vector<std::int64_t> hits(nworkers, 0);

    parallel_samples(samples, nworkers, [&](std::int64_t begin, std::int64_t end, int worker) {
        DisjointSet dsu(lat.node_count + 2);
        std::vector<std::uint8_t> open;
        for (std::int64_t s = begin; s < end; ++s) {
            fill_bits(lat, p, master_seed, static_cast<std::uint64_t>(s), open);
            dsu.reset();
            unite_open(dsu, lat, open);
            for (std::int32_t v : problem.left) dsu.unite(source, v);
            for (std::int32_t v : problem.right) dsu.unite(sink, v);
            if (dsu.same(source, sink)) ++hits[worker];
        }
    });

    std::int64_t total = 0;
    for (std::int64_t h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(samples);
}

PcEstimate estimate_pc(const std::vector<SpanningProblem>& problems,
                       const std::vector<int>& sizes, double p_min, double p_max, double p_step,
                       std::int64_t samples, std::uint64_t master_seed, int threads) {
    if (problems.size() < 2) throw std::invalid_argument("pc estimation needs >= 2 sizes");
    if (problems.size() != sizes.size())
        throw std::invalid_argument("sizes list must match problem list");
    if (!(p_step > 0.0) || p_max < p_min) throw std::invalid_argument("bad p grid");

    PcEstimate est;
    est.sizes = sizes;
    for (double p = p_min; p <= p_max + 1e-12; p += p_step) est.p_grid.push_back(std::min(p, 1.0));

    est.spanning.resize(problems.size());
    for (std::size_t i = 0; i < problems.size(); ++i) {
        est.spanning[i].reserve(est.p_grid.size());
        for (std::size_t gi = 0; gi < est.p_grid.size(); ++gi) {
            // Distinct seed per (size, grid point) stream.
            const std::uint64_t seed = master_seed ^ (0x9E3779B97F4A7C15ull * (i * 1000 + gi + 1));
            est.spanning[i].push_back(
                spanning_probability(problems[i], est.p_grid[gi], samples, seed, threads));
        }
    }

    // Crossing of each consecutive-size curve pair: below p_c the larger size
    // spans less, above it spans more.
    for (std::size_t i = 0; i + 1 < problems.size(); ++i) {
        const auto& small = est.spanning[i];
        const auto& large = est.spanning[i + 1];
        std::optional<double> crossing;
        for (std::size_t g = 0; g + 1 < est.p_grid.size(); ++g) {
            const double d0 = large[g] - small[g];
            const double d1 = large[g + 1] - small[g + 1];
            // A flat tie (both curves pinned at 0 or 1) is not a crossing.
            if ((d0 < 0.0 && d1 >= 0.0) || (d0 <= 0.0 && d1 > 0.0)) {
                const double span = d1 - d0;
                const double frac = span > 0.0 ? -d0 / span : 0.5;
                crossing = est.p_grid[g] + frac * (est.p_grid[g + 1] - est.p_grid[g]);
                break;
            }
        }
        if (!crossing) {
            std::ostringstream msg;
            msg << "spanning curves for sizes " << sizes[i] << " and " << sizes[i + 1]
                << " do not cross on the p grid [" << p_min << ", " << p_max << "]";
            throw std::runtime_error(msg.str());
        }
        est.pairwise_crossings.push_back(*crossing);
    }

    double sum = 0;
    for (double c : est.pairwise_crossings) sum += c;
    est.p_c = sum / static_cast<double>(est.pairwise_crossings.size());

    double spread = 0;
    for (double c : est.pairwise_crossings) spread = std::max(spread, std::abs(c - est.p_c));
    const double stat_error =
        samples > 0 ? 1.0 / std::sqrt(static_cast<double>(samples)) : 0.0;
    est.uncertainty = 0.5 * p_step + spread + stat_error;
    return est;
}

PcEstimate estimate_pc(int dimension, std::vector<int> sizes, double p_min, double p_max,
                       double p_step, std::int64_t samples, std::uint64_t master_seed,
                       int threads) {
    std::sort(sizes.begin(), sizes.end());
    std::vector<SpanningProblem> problems;
    problems.reserve(sizes.size());
    for (int L : sizes) {
        LatticeSpec spec;
        spec.dimension = dimension;
        spec.sides.assign(dimension, L);
        spec.steps = L;
        problems.push_back(make_spanning_problem(spec));
    }
    return estimate_pc(problems, sizes, p_min, p_max, p_step, samples, master_seed, threads);
}

double branching_survival(double p, int depth) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("offspring probability must be in [0, 1]");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    double s = 1.0;
    for (int k = 0; k < depth; ++k) {
        const double q = 1.0 - p * s;
        s = 1.0 - q * q * q;
    }
    return s;
}

}  // namespace entperc
