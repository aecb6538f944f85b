#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace entperc {

// Maximum number of space-time vertices a graph may hold.
inline constexpr std::int64_t kMaxVertices = std::int64_t(1) << 27;

// A d-dimensional open box of particles evolving for a number of discrete
// time steps. Time layers run 0..steps.
struct LatticeSpec {
    int dimension = 1;
    std::vector<int> sides;
    int steps = 0;

    int particle_count() const;
    // Throws std::invalid_argument when d < 1, a side < 2, steps < 0 or the
    // sides list does not match the dimension.
    void validate() const;
};

std::vector<int> particle_coords(const LatticeSpec& spec, int index);
int particle_index(const LatticeSpec& spec, const std::vector<int>& coords);

using ParticlePair = std::pair<int, int>;

// Pairs interacting at step t (1-based). Axes are visited round-robin
// (axis = (t-1) mod d) and the pairing offset along an axis alternates
// between consecutive visits to that axis, so each particle meets the
// neighbors on its two sides of every axis in turn. Particles without a
// partner on the scheduled axis/offset idle that step.
std::vector<ParticlePair> interaction_schedule(const LatticeSpec& spec, int t);

// Space-time interaction graph: one vertex per (particle, time layer),
// a vertical edge per particle per step, and a horizontal edge per
// scheduled interaction.
struct SpacetimeGraph {
    LatticeSpec spec;
    int n = 0;
    int T = 0;
    // Vertical edge i connects vertex (i % n, i / n) to (i % n, i / n + 1).
    std::vector<std::pair<std::int32_t, std::int32_t>> vertical_edges;
    std::vector<std::pair<std::int32_t, std::int32_t>> interaction_edges;

    std::int32_t vertex_count() const { return static_cast<std::int32_t>(n) * (T + 1); }
    std::int32_t vertex_id(int particle, int t) const {
        return static_cast<std::int32_t>(t) * n + particle;
    }
};

SpacetimeGraph build_spacetime_graph(const LatticeSpec& spec);

// Interaction edges contracted away: what remains is plain bond percolation
// on the former vertical edges. For d = 1 this is the square lattice rotated
// by 45 degrees.
struct PercolationLattice {
    LatticeSpec spec;
    int n = 0;
    int T = 0;
    std::int32_t node_count = 0;
    std::vector<std::int32_t> vertex_to_node;
    // edges[i] is the contracted image of vertical edge i; indices line up
    // with NoiseRealization bits.
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    std::vector<std::int32_t> node_layer;
    // The one or two spacetime vertices a node stands for; second entry is -1
    // for uncontracted vertices.
    std::vector<std::array<std::int32_t, 2>> node_vertices;
    // Always-open edges added by giant_initial_augmentation (layer-0 chain).
    std::vector<std::pair<std::int32_t, std::int32_t>> chain_edges;

    std::int32_t node_of(int particle, int t) const {
        return vertex_to_node[static_cast<std::size_t>(t) * n + particle];
    }
    // (particle, time) of a node's constituent vertex.
    std::pair<int, int> vertex_coords(std::int32_t vertex) const {
        return {static_cast<int>(vertex % n), static_cast<int>(vertex / n)};
    }
    bool augmented() const { return !chain_edges.empty(); }
};

PercolationLattice contract_interactions(const SpacetimeGraph& g);

// Adds an always-open chain joining all layer-0 nodes; models an initial
// state that is one big cluster.
PercolationLattice giant_initial_augmentation(PercolationLattice lattice);

// BFS distance over percolation edges (plus chain edges) with everything open.
// Returns -1 when unreachable.
int graph_distance(const PercolationLattice& lattice, std::int32_t node_a, std::int32_t node_b);

// Node degrees with all percolation and chain edges present.
std::vector<int> node_degrees(const PercolationLattice& lattice);

}  // namespace entperc
