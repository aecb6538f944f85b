#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <queue>
#include <set>

#include "entperc/lattice.hpp"
#include "entperc/rng.hpp"

using namespace entperc;

namespace {

LatticeSpec chain(int n, int steps) {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.sides = {n};
    spec.steps = steps;
    return spec;
}

// Component labels of the spacetime graph under an erasure pattern of the
// vertical edges, by plain BFS. Interaction edges always conduct.
std::vector<int> bfs_components(const SpacetimeGraph& g, const std::vector<bool>& vertical_open) {
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (std::size_t e = 0; e < g.vertical_edges.size(); ++e) {
        if (!vertical_open[e]) continue;
        adj[g.vertical_edges[e].first].push_back(g.vertical_edges[e].second);
        adj[g.vertical_edges[e].second].push_back(g.vertical_edges[e].first);
    }
    for (const auto& [a, b] : g.interaction_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> comp(g.vertex_count(), -1);
    int next = 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = next;
                    q.push(w);
                }
        }
        ++next;
    }
    return comp;
}

std::vector<int> contracted_components(const PercolationLattice& lat,
                                       const std::vector<bool>& vertical_open) {
    std::vector<std::vector<int>> adj(lat.node_count);
    for (std::size_t e = 0; e < lat.edges.size(); ++e) {
        if (!vertical_open[e]) continue;
        adj[lat.edges[e].first].push_back(lat.edges[e].second);
        adj[lat.edges[e].second].push_back(lat.edges[e].first);
    }
    std::vector<int> comp(lat.node_count, -1);
    int next = 0;
    for (int s = 0; s < lat.node_count; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next++;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    q.push(w);
                }
        }
    }
    return comp;
}

}  // namespace

TEST_CASE("schedule on a 4-chain alternates pairings") {
    const LatticeSpec spec = chain(4, 4);
    CHECK(interaction_schedule(spec, 1) == std::vector<ParticlePair>{{0, 1}, {2, 3}});
    CHECK(interaction_schedule(spec, 2) == std::vector<ParticlePair>{{1, 2}});
    CHECK(interaction_schedule(spec, 3) == std::vector<ParticlePair>{{0, 1}, {2, 3}});
    CHECK(interaction_schedule(spec, 4) == std::vector<ParticlePair>{{1, 2}});
}

TEST_CASE("schedule rejects out-of-range steps") {
    const LatticeSpec spec = chain(4, 2);
    CHECK_THROWS_AS(interaction_schedule(spec, 0), std::out_of_range);
    CHECK_THROWS_AS(interaction_schedule(spec, 3), std::out_of_range);
}

TEST_CASE("schedule on a 3x3 grid pairs along axis 0 first") {
    LatticeSpec spec;
    spec.dimension = 2;
    spec.sides = {3, 3};
    spec.steps = 4;
    const auto pairs = interaction_schedule(spec, 1);
    CHECK(pairs.size() == 3);
    std::set<int> seen;
    for (const auto& [a, b] : pairs) {
        CHECK(particle_coords(spec, a)[1] == particle_coords(spec, b)[1]);
        CHECK(particle_coords(spec, b)[0] == particle_coords(spec, a)[0] + 1);
        CHECK(!seen.count(a));
        CHECK(!seen.count(b));
        seen.insert(a);
        seen.insert(b);
    }
    // Step 2 moves to axis 1.
    for (const auto& [a, b] : interaction_schedule(spec, 2))
        CHECK(particle_coords(spec, a)[0] == particle_coords(spec, b)[0]);
}

TEST_CASE("schedule is a matching at every step") {
    for (const LatticeSpec& spec : {chain(7, 9), [] {
             LatticeSpec s;
             s.dimension = 3;
             s.sides = {3, 2, 4};
             s.steps = 12;
             return s;
         }()}) {
        for (int t = 1; t <= spec.steps; ++t) {
            std::set<int> seen;
            for (const auto& [a, b] : interaction_schedule(spec, t)) {
                CHECK(!seen.count(a));
                CHECK(!seen.count(b));
                seen.insert(a);
                seen.insert(b);
            }
        }
    }
}

TEST_CASE("spacetime graph counts") {
    SUBCASE("4-chain, 2 steps") {
        const SpacetimeGraph g = build_spacetime_graph(chain(4, 2));
        CHECK(g.vertex_count() == 12);
        CHECK(g.vertical_edges.size() == 8);
        CHECK(g.interaction_edges.size() == 3);
    }
    SUBCASE("2-chain, no steps") {
        const SpacetimeGraph g = build_spacetime_graph(chain(2, 0));
        CHECK(g.vertex_count() == 2);
        CHECK(g.vertical_edges.size() == 0);
        CHECK(g.interaction_edges.size() == 0);
    }
    SUBCASE("8-chain, 4 steps") {
        const SpacetimeGraph g = build_spacetime_graph(chain(8, 4));
        CHECK(g.vertical_edges.size() == 32);
        CHECK(g.interaction_edges.size() == 14);  // 4 + 3 + 4 + 3 by hand
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(chain(1, 2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(chain(4, -1).validate(), std::invalid_argument);
    LatticeSpec bad;
    bad.dimension = 2;
    bad.sides = {4};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    LatticeSpec huge = chain(1 << 20, 1 << 10);
    CHECK_THROWS_AS(huge.validate(), std::length_error);
}

TEST_CASE("contraction removes one node per interaction edge") {
    const SpacetimeGraph g = build_spacetime_graph(chain(4, 2));
    const PercolationLattice lat = contract_interactions(g);
    CHECK(lat.node_count == 9);
    CHECK(lat.edges.size() == 8);
}

TEST_CASE("interior contracted nodes have degree 4 in any dimension") {
    for (int d : {1, 2, 3}) {
        LatticeSpec spec;
        spec.dimension = d;
        spec.sides.assign(d, 4);
        spec.steps = 10;
        const PercolationLattice lat = contract_interactions(build_spacetime_graph(spec));
        const auto degrees = node_degrees(lat);
        int interior_hits = 0;
        for (std::int32_t v = 0; v < lat.node_count; ++v) {
            CHECK(degrees[v] <= 4);
            if (degrees[v] == 4) ++interior_hits;
        }
        CHECK(interior_hits > 0);
    }
}

TEST_CASE("contraction preserves connectivity under random erasures") {
    auto rng = make_stream_rng(20240601, 0);
    for (int n : {3, 4, 5, 6}) {
        for (int T : {1, 2, 3, 4}) {
            const SpacetimeGraph g = build_spacetime_graph(chain(n, T));
            const PercolationLattice lat = contract_interactions(g);
            for (int pattern = 0; pattern < 30; ++pattern) {
                std::vector<bool> open(g.vertical_edges.size());
                for (std::size_t e = 0; e < open.size(); ++e) open[e] = rng() & 1;
                const auto full = bfs_components(g, open);
                const auto contracted = contracted_components(lat, open);
                // Exhaustive pair comparison between the two views.
                for (int v = 0; v < g.vertex_count(); ++v) {
                    for (int w = v + 1; w < g.vertex_count(); ++w) {
                        const bool before = full[v] == full[w];
                        const bool after =
                            contracted[lat.vertex_to_node[v]] == contracted[lat.vertex_to_node[w]];
                        REQUIRE(before == after);
                    }
                }
            }
        }
    }
}

TEST_CASE("d=1 contraction is the diagonal square lattice") {
    const PercolationLattice lat = contract_interactions(build_spacetime_graph(chain(8, 8)));
    // Interior top-layer nodes at even separation sit exactly that many
    // zigzag hops apart.
    const std::int32_t a = lat.node_of(2, 8);
    CHECK(graph_distance(lat, a, lat.node_of(4, 8)) == 2);
    CHECK(graph_distance(lat, a, lat.node_of(6, 8)) == 4);
}

TEST_CASE("giant augmentation joins layer zero") {
    PercolationLattice lat =
        giant_initial_augmentation(contract_interactions(build_spacetime_graph(chain(4, 2))));
    CHECK(lat.chain_edges.size() == 3);
    // Chain edges are open even when every vertical edge is closed.
    const std::vector<bool> none(lat.edges.size(), false);
    auto comp = contracted_components(lat, none);
    // contracted_components ignores chain edges; check through distances.
    for (int x = 0; x + 1 < 4; ++x)
        CHECK(graph_distance(lat, lat.node_of(x, 0), lat.node_of(x + 1, 0)) == 1);
}

TEST_CASE("particle indexing round-trips") {
    LatticeSpec spec;
    spec.dimension = 3;
    spec.sides = {2, 3, 4};
    spec.steps = 0;
    for (int i = 0; i < spec.particle_count(); ++i)
        CHECK(particle_index(spec, particle_coords(spec, i)) == i);
}

TEST_CASE("nodes remember their constituent vertices") {
    const SpacetimeGraph g = build_spacetime_graph(chain(4, 2));
    const PercolationLattice lat = contract_interactions(g);
    int pairs = 0, singles = 0;
    for (std::int32_t node = 0; node < lat.node_count; ++node) {
        const auto& members = lat.node_vertices[node];
        REQUIRE(members[0] >= 0);
        CHECK(lat.vertex_to_node[members[0]] == node);
        if (members[1] >= 0) {
            CHECK(lat.vertex_to_node[members[1]] == node);
            // A contracted node joins two same-layer vertices.
            CHECK(lat.vertex_coords(members[0]).second == lat.vertex_coords(members[1]).second);
            ++pairs;
        } else {
            ++singles;
        }
    }
    CHECK(pairs == 3);
    CHECK(singles == 6);
}
