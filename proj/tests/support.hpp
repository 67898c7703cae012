#pragma once

#include <utility>
#include <vector>

#include "syncplan/instance.hpp"
#include "syncplan/multigraph.hpp"

namespace syncplan::testing {

// Vertices 0..n-1; edge i gets halves 2i (at u) and 2i+1 (at v).
inline Multigraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Multigraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(VertexId{v});
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto e = static_cast<std::int32_t>(i);
        g.add_edge(EdgeId{e}, VertexId{edges[i].first}, VertexId{edges[i].second}, HalfEdgeId{2 * e}, HalfEdgeId{2 * e + 1});
    }
    return g;
}

inline Multigraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return from_edges(n, e);
}

inline Multigraph k33() {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) e.emplace_back(a, b);
    return from_edges(6, e);
}

inline Multigraph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < n; ++a) e.emplace_back(a, (a + 1) % n);
    return from_edges(n, e);
}

// Center 0, rays 1..k.
inline Multigraph star(int k) {
    std::vector<std::pair<int, int>> e;
    for (int a = 1; a <= k; ++a) e.emplace_back(0, a);
    return from_edges(k + 1, e);
}

// Poles 0 and 1 with k parallel edges.
inline Multigraph bond(int k) { return from_edges(2, std::vector<std::pair<int, int>>(static_cast<std::size_t>(k), {0, 1})); }

// Vertex 0 is opposite 5; 1..4 form the equator.
inline Multigraph octahedron() {
    return from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
}

inline HalfEdgeId half(int i) { return HalfEdgeId{i}; }
inline VertexId vert(int i) { return VertexId{i}; }

inline CyclicOrder halves_at(const Multigraph& g, VertexId v) {
    auto inc = g.incident(v);
    return CyclicOrder(inc.begin(), inc.end());
}

}  // namespace syncplan::testing
