#pragma once

#include <array>
#include <optional>
#include <vector>

namespace syncplan {

// Compact index-based multigraph used by the decomposition algorithms.
// Edge e owns half-edges 2e (at ends[e][0]) and 2e+1 (at ends[e][1]).
struct StaticGraph {
    int n = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<std::vector<int>> inc;

    int add_vertex() {
        inc.emplace_back();
        return n++;
    }
    int add_edge(int u, int v) {
        const int e = static_cast<int>(ends.size());
        ends.push_back({u, v});
        inc[static_cast<std::size_t>(u)].push_back(2 * e);
        inc[static_cast<std::size_t>(v)].push_back(2 * e + 1);
        return e;
    }
    [[nodiscard]] int m() const { return static_cast<int>(ends.size()); }
    [[nodiscard]] int vertex_of(int h) const { return ends[static_cast<std::size_t>(h >> 1)][static_cast<std::size_t>(h & 1)]; }
    [[nodiscard]] int head(int h) const { return vertex_of(h ^ 1); }
    [[nodiscard]] int degree(int v) const { return static_cast<int>(inc[static_cast<std::size_t>(v)].size()); }

    static int edge_of(int h) { return h >> 1; }
    static int twin(int h) { return h ^ 1; }
};

struct Biconnected {
    std::vector<bool> is_cut;
    std::vector<int> block_of_edge;
    std::vector<std::vector<int>> blocks;  // edge lists
};

[[nodiscard]] Biconnected biconnected_components(const StaticGraph& g);

using LocalRotation = std::vector<std::vector<int>>;  // per vertex, half-edge indices

// Planar rotation system of g (multi-edges allowed) or nullopt if g is not planar.
[[nodiscard]] std::optional<LocalRotation> planar_rotation(const StaticGraph& g);

// Genus of a rotation system via face tracing; isolated vertices count as one face each.
[[nodiscard]] int local_genus(const StaticGraph& g, const LocalRotation& rot);

}  // namespace syncplan
