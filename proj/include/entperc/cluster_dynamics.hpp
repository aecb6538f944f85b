#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entperc/lattice.hpp"
#include "entperc/percolation.hpp"

namespace entperc {

enum class InitialPartition { singletons, giant };

// Cluster labels of the particles along one noise realization. Two recording
// points per step: after the detachments of the gap below the step, and after
// the step's interaction merges. labels[t] (post-merge) is the state whose
// co-membership matches percolation connectivity at layer t.
struct ClusterTrajectory {
    int n = 0;
    int T = 0;
    InitialPartition init = InitialPartition::singletons;
    // labels[t][x]: cluster id of particle x at time t, t in 0..T.
    std::vector<std::vector<std::int32_t>> labels;
    // labels_after_noise[t-1][x]: state after the detachments of gap
    // (t-1 -> t), before the merges of step t; t in 1..T.
    std::vector<std::vector<std::int32_t>> labels_after_noise;

    bool same_cluster(int t, int a, int b) const { return labels[t][a] == labels[t][b]; }
};

// Merge-on-interaction / detach-on-collapse dynamics driven by the
// realization's edge bits. A closed vertical edge in gap (t-1 -> t) detaches
// that particle into a fresh singleton before the merges of step t.
ClusterTrajectory evolve_clusters(const LatticeSpec& spec, const NoiseRealization& r,
                                  InitialPartition init = InitialPartition::singletons);

struct CorrespondenceResult {
    bool ok = true;
    int t = -1;
    int particle_a = -1;
    int particle_b = -1;

    std::string describe() const;
};

// Checks, for every time t and particle pair, that cluster co-membership
// equals percolation connectivity of the contracted images at layer t using
// only edges up to that layer. With the giant initial mode the comparison
// runs against the layer-0-chain augmented lattice.
CorrespondenceResult verify_correspondence(const LatticeSpec& spec, const NoiseRealization& r,
                                           InitialPartition init = InitialPartition::singletons);

}  // namespace entperc
