#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "syncplan/instance.hpp"
#include "syncplan/reductions.hpp"

namespace syncplan {

using Rng = std::mt19937_64;

// Small instances for oracle comparisons.
struct SmallInstanceParams {
    int groups = 2;          // connected components
    int min_vertices = 2;    // per component
    int max_vertices = 4;
    int max_degree = 5;
    int extra_edges = 3;     // beyond a spanning tree, parallel edges allowed
    int max_pipes = 2;
    int max_q = 2;           // Q-vertices, grouped into cells of one or two
    double hub_bias = 0.0;   // chance that a tree edge attaches to vertex 0 (makes cut-vertices)
};
[[nodiscard]] SyncPlanInstance random_small_instance(Rng& rng, const SmallInstanceParams& params);

// Random connected multigraph on n vertices; no loops, degrees capped.
[[nodiscard]] Multigraph random_connected_multigraph(Rng& rng, int n, int extra_edges, int max_degree,
                                                     double hub_bias = 0.0);

// Random planar graph: a triangulated grid patch thinned at random.
[[nodiscard]] Multigraph random_planar_graph(Rng& rng, int approx_edges);

// Benchmark family with about m edges: planar components whose vertices of
// equal degree are matched by pipes, half of them with maps that keep the
// instance satisfiable.
[[nodiscard]] SyncPlanInstance gen_random_pipes(int m, std::uint64_t seed);

// Poles of a k-bond joined by a pipe. The pipe map is chosen so that
// phi composed with the bond bijection has the given cycle lengths.
[[nodiscard]] SyncPlanInstance gen_toroidal(const std::vector<int>& cycle_lengths, std::uint64_t seed);

// Small simple graph with a random laminar cluster tree; every non-root
// cluster owns at least one vertex. connected=false allows several components.
[[nodiscard]] ClusteredGraph random_clustered_graph(Rng& rng, int n, int extra_edges, int clusters, bool connected = true);

// Connected random shared graph plus private edges and vertices per side.
[[nodiscard]] SefeInstance random_sefe_instance(Rng& rng, int shared_vertices, int shared_extra, int private_vertices,
                                                int private_edges);

// Benchmark-style c-planar input: a thinned triangulated grid of about m
// edges whose clusters are nested rectangles.
[[nodiscard]] ClusteredGraph gen_cluster_like_graph(int m, std::uint64_t seed);
// Two planar graphs sharing a thinned grid, each adding its own diagonals.
[[nodiscard]] SefeInstance gen_sefe_like_pair(int m, std::uint64_t seed);

// A uniformly random permutation of 0..n-1.
[[nodiscard]] std::vector<int> random_permutation(Rng& rng, int n);

}  // namespace syncplan
