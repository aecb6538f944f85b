#include "entperc/cluster_dynamics.hpp"

#include <sstream>
#include <stdexcept>

#include "entperc/disjoint_set.hpp"

namespace entperc {

namespace {

void check_shapes(const LatticeSpec& spec, const NoiseRealization& r) {
    spec.validate();
    if (!r.lattice) throw std::invalid_argument("realization has no lattice");
    const std::size_t expected =
        static_cast<std::size_t>(spec.particle_count()) * static_cast<std::size_t>(spec.steps);
    if (r.open.size() != expected || r.lattice->n != spec.particle_count() ||
        r.lattice->T != spec.steps)
        throw std::invalid_argument("realization does not match the lattice spec");
}

}  // namespace

ClusterTrajectory evolve_clusters(const LatticeSpec& spec, const NoiseRealization& r,
                                  InitialPartition init) {
    check_shapes(spec, r);
    const int n = spec.particle_count();
    const int T = spec.steps;

    ClusterTrajectory traj;
    traj.n = n;
    traj.T = T;
    traj.init = init;
    traj.labels.reserve(T + 1);
    traj.labels_after_noise.reserve(T);

    // Particle -> slot id in a disjoint-set universe large enough for every
    // detachment to get a fresh singleton slot.
    const std::int32_t slots = n + n * T;
    DisjointSet dsu(slots);
    std::vector<std::int32_t> slot(n);
    std::int32_t next_free = n;
    for (int x = 0; x < n; ++x) slot[x] = x;
    if (init == InitialPartition::giant)
        for (int x = 1; x < n; ++x) dsu.unite(slot[0], slot[x]);

    auto snapshot = [&]() {
        std::vector<std::int32_t> labels(n);
        for (int x = 0; x < n; ++x) labels[x] = dsu.find(slot[x]);
        return labels;
    };
    traj.labels.push_back(snapshot());

    for (int t = 1; t <= T; ++t) {
        // Collapses in gap (t-1 -> t): a fresh slot detaches the particle,
        // the remaining cluster keeps its ids.
        for (int x = 0; x < n; ++x)
            if (r.collapsed(x, t - 1)) slot[x] = next_free++;
        traj.labels_after_noise.push_back(snapshot());

        for (const auto& [a, b] : interaction_schedule(spec, t)) dsu.unite(slot[a], slot[b]);
        traj.labels.push_back(snapshot());
    }
    return traj;
}

std::string CorrespondenceResult::describe() const {
    if (ok) return "correspondence holds";
    std::ostringstream msg;
    msg << "mismatch at t=" << t << " between particles " << particle_a << " and " << particle_b;
    return msg.str();
}

CorrespondenceResult verify_correspondence(const LatticeSpec& spec, const NoiseRealization& r,
                                           InitialPartition init) {
    check_shapes(spec, r);
    const int n = spec.particle_count();
    const int T = spec.steps;

    PercolationLattice lattice = *r.lattice;
    if (init == InitialPartition::giant && !lattice.augmented())
        lattice = giant_initial_augmentation(lattice);

    ClusterTrajectory traj = evolve_clusters(spec, r, init);

    // Percolation connectivity grows monotonically with the layer cutoff, so
    // one incremental union-find pass covers every t. The layer-0 chain only
    // exists on the percolation side when the cluster side starts giant.
    DisjointSet perc(lattice.node_count);
    if (init == InitialPartition::giant)
        for (const auto& [a, b] : lattice.chain_edges) perc.unite(a, b);

    CorrespondenceResult result;
    for (int t = 0; t <= T; ++t) {
        if (t > 0) {
            // Open vertical edges of gap (t-1 -> t); interaction edges at
            // layer t are already contracted into shared nodes.
            const std::size_t base = static_cast<std::size_t>(t - 1) * n;
            for (int x = 0; x < n; ++x)
                if (r.edge_open(base + x))
                    perc.unite(lattice.node_of(x, t - 1), lattice.node_of(x, t));
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const bool clustered = traj.same_cluster(t, a, b);
                const bool connected = perc.same(lattice.node_of(a, t), lattice.node_of(b, t));
                if (clustered != connected) {
                    result.ok = false;
                    result.t = t;
                    result.particle_a = a;
                    result.particle_b = b;
                    return result;
                }
            }
        }
    }
    return result;
}

}  // namespace entperc
