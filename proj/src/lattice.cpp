#include "entperc/lattice.hpp"

#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace entperc {

int LatticeSpec::particle_count() const {
    std::int64_t n = 1;
    for (int s : sides) n *= s;
    return static_cast<int>(n);
}

void LatticeSpec::validate() const {
    if (dimension < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (static_cast<int>(sides.size()) != dimension)
        throw std::invalid_argument("sides list must have one entry per dimension");
    for (int s : sides)
        if (s < 2) throw std::invalid_argument("every side must be >= 2");
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    std::int64_t n = 1;
    for (int s : sides) {
        n *= s;
        if (n > kMaxVertices) throw std::length_error("lattice exceeds vertex capacity");
    }
    if (n * (static_cast<std::int64_t>(steps) + 1) > kMaxVertices)
        throw std::length_error("lattice exceeds vertex capacity");
}

std::vector<int> particle_coords(const LatticeSpec& spec, int index) {
    std::vector<int> coords(spec.dimension);
    for (int a = spec.dimension - 1; a >= 0; --a) {
        coords[a] = index % spec.sides[a];
        index /= spec.sides[a];
    }
    return coords;
}

int particle_index(const LatticeSpec& spec, const std::vector<int>& coords) {
    int index = 0;
    for (int a = 0; a < spec.dimension; ++a) index = index * spec.sides[a] + coords[a];
    return index;
}

std::vector<ParticlePair> interaction_schedule(const LatticeSpec& spec, int t) {
    spec.validate();
    if (t < 1 || t > spec.steps)
        throw std::out_of_range("interaction step out of range: " + std::to_string(t));

    const int axis = (t - 1) % spec.dimension;
    const int offset = ((t - 1) / spec.dimension) % 2;
    const int n = spec.particle_count();

    // Stride of one step along `axis` in row-major particle indices.
    int stride = 1;
    for (int a = spec.dimension - 1; a > axis; --a) stride *= spec.sides[a];

    std::vector<ParticlePair> pairs;
    pairs.reserve(n / 2);
    for (int i = 0; i < n; ++i) {
        const int c = (i / stride) % spec.sides[axis];
        if (c % 2 == offset && c + 1 < spec.sides[axis]) pairs.emplace_back(i, i + stride);
    }
    return pairs;
}

SpacetimeGraph build_spacetime_graph(const LatticeSpec& spec) {
    spec.validate();
    SpacetimeGraph g;
    g.spec = spec;
    g.n = spec.particle_count();
    g.T = spec.steps;

    g.vertical_edges.reserve(static_cast<std::size_t>(g.n) * g.T);
    for (int t = 0; t < g.T; ++t)
        for (int x = 0; x < g.n; ++x)
            g.vertical_edges.emplace_back(g.vertex_id(x, t), g.vertex_id(x, t + 1));

    for (int t = 1; t <= g.T; ++t)
        for (const auto& [a, b] : interaction_schedule(spec, t))
            g.interaction_edges.emplace_back(g.vertex_id(a, t), g.vertex_id(b, t));

    return g;
}

PercolationLattice contract_interactions(const SpacetimeGraph& g) {
    const std::int32_t nv = g.vertex_count();

    // Union interaction edges, then relabel roots densely in vertex order.
    std::vector<std::int32_t> root(nv);
    std::iota(root.begin(), root.end(), 0);
    for (const auto& [a, b] : g.interaction_edges) {
        // Interaction edges touch each vertex at most once, so a two-level
        // chase is enough; keep the smaller id as representative.
        std::int32_t ra = root[a] == a ? a : root[a];
        std::int32_t rb = root[b] == b ? b : root[b];
        std::int32_t r = std::min(ra, rb);
        root[a] = root[b] = root[ra] = root[rb] = r;
    }

    PercolationLattice lat;
    lat.spec = g.spec;
    lat.n = g.n;
    lat.T = g.T;
    lat.vertex_to_node.assign(nv, -1);

    std::int32_t next = 0;
    for (std::int32_t v = 0; v < nv; ++v) {
        std::int32_t r = root[v];
        if (lat.vertex_to_node[r] < 0) lat.vertex_to_node[r] = next++;
        lat.vertex_to_node[v] = lat.vertex_to_node[r];
    }
    lat.node_count = next;

    lat.node_layer.assign(lat.node_count, 0);
    lat.node_vertices.assign(lat.node_count, {-1, -1});
    for (std::int32_t v = 0; v < nv; ++v) {
        const std::int32_t node = lat.vertex_to_node[v];
        lat.node_layer[node] = v / g.n;
        if (lat.node_vertices[node][0] < 0)
            lat.node_vertices[node][0] = v;
        else
            lat.node_vertices[node][1] = v;
    }

    lat.edges.reserve(g.vertical_edges.size());
    for (const auto& [a, b] : g.vertical_edges)
        lat.edges.emplace_back(lat.vertex_to_node[a], lat.vertex_to_node[b]);

    return lat;
}

PercolationLattice giant_initial_augmentation(PercolationLattice lattice) {
    lattice.chain_edges.clear();
    for (int x = 0; x + 1 < lattice.n; ++x)
        lattice.chain_edges.emplace_back(lattice.node_of(x, 0), lattice.node_of(x + 1, 0));
    return lattice;
}

namespace {

std::vector<std::vector<std::int32_t>> adjacency(const PercolationLattice& lat) {
    std::vector<std::vector<std::int32_t>> adj(lat.node_count);
    auto add = [&](const std::pair<std::int32_t, std::int32_t>& e) {
        if (e.first == e.second) return;
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    };
    for (const auto& e : lat.edges) add(e);
    for (const auto& e : lat.chain_edges) add(e);
    return adj;
}

}  // namespace

int graph_distance(const PercolationLattice& lattice, std::int32_t node_a, std::int32_t node_b) {
    if (node_a == node_b) return 0;
    auto adj = adjacency(lattice);
    std::vector<int> dist(lattice.node_count, -1);
    std::queue<std::int32_t> q;
    dist[node_a] = 0;
    q.push(node_a);
    while (!q.empty()) {
        std::int32_t v = q.front();
        q.pop();
        for (std::int32_t w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                if (w == node_b) return dist[w];
                q.push(w);
            }
        }
    }
    return -1;
}

std::vector<int> node_degrees(const PercolationLattice& lattice) {
    std::vector<int> deg(lattice.node_count, 0);
    for (const auto& [a, b] : lattice.edges) {
        ++deg[a];
        ++deg[b];
    }
    for (const auto& [a, b] : lattice.chain_edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

}  // namespace entperc
