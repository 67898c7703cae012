#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "syncplan/spqr.hpp"

using namespace syncplan;

namespace {

StaticGraph make(int n, const std::vector<std::pair<int, int>>& edges) {
    StaticGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

bool connected_without(int n, const std::vector<std::array<int, 2>>& edges, const std::set<int>& removed) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (auto [a, b] : edges) {
        if (removed.count(a) || removed.count(b)) continue;
        parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    int roots = 0;
    for (int v = 0; v < n; ++v) roots += (!removed.count(v) && find(v) == v) ? 1 : 0;
    return roots <= 1;
}

// Structural validity of a decomposition, checked by brute force.
void validate(const StaticGraph& g, const SPQRTree& t) {
    std::vector<int> real_seen(static_cast<std::size_t>(g.m()), 0);
    std::map<int, std::vector<int>> virt_seen;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        for (int e : t.nodes[i].edges) {
            if (t.is_virtual(e)) {
                virt_seen[e].push_back(static_cast<int>(i));
            } else {
                ++real_seen[static_cast<std::size_t>(e)];
                CHECK(t.node_of_real[static_cast<std::size_t>(e)] == static_cast<int>(i));
                CHECK(((t.ends[static_cast<std::size_t>(e)] == g.ends[static_cast<std::size_t>(e)]) ||
                       (t.ends[static_cast<std::size_t>(e)] ==
                        std::array<int, 2>{g.ends[static_cast<std::size_t>(e)][1], g.ends[static_cast<std::size_t>(e)][0]})));
            }
        }
    }
    for (int c : real_seen) CHECK(c == 1);
    CHECK(virt_seen.size() + 1 == t.nodes.size());
    for (auto& [e, nodes] : virt_seen) {
        REQUIRE(nodes.size() == 2);
        CHECK(nodes[0] != nodes[1]);
        auto vn = t.virtual_nodes[static_cast<std::size_t>(e - t.num_real)];
        CHECK(std::set<int>(vn.begin(), vn.end()) == std::set<int>(nodes.begin(), nodes.end()));
        const auto k0 = t.nodes[static_cast<std::size_t>(nodes[0])].kind;
        const auto k1 = t.nodes[static_cast<std::size_t>(nodes[1])].kind;
        CHECK_FALSE((k0 == k1 && k0 != SPQRTree::Kind::Rigid));
    }
    // Tree: connected with nodes - 1 edges.
    std::vector<std::array<int, 2>> tree_edges;
    for (auto& [e, nodes] : virt_seen) tree_edges.push_back({nodes[0], nodes[1]});
    CHECK(connected_without(static_cast<int>(t.nodes.size()), tree_edges, {}));

    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        auto verts = t.vertices(static_cast<int>(i));
        std::map<int, int> local;
        for (int v : verts) local.emplace(v, static_cast<int>(local.size()));
        std::vector<std::array<int, 2>> skel;
        std::set<std::pair<int, int>> simple;
        for (int e : node.edges) {
            auto [a, b] = t.ends[static_cast<std::size_t>(e)];
            skel.push_back({local.at(a), local.at(b)});
            simple.emplace(std::min(a, b), std::max(a, b));
        }
        const int n = static_cast<int>(verts.size());
        switch (node.kind) {
            case SPQRTree::Kind::Bond:
                CHECK(n == 2);
                CHECK(node.edges.size() >= 3);
                break;
            case SPQRTree::Kind::Polygon: {
                CHECK(n >= 3);
                CHECK(node.edges.size() == static_cast<std::size_t>(n));
                std::map<int, int> deg;
                for (auto [a, b] : skel) ++deg[a], ++deg[b];
                for (auto [v, d] : deg) CHECK(d == 2);
                CHECK(connected_without(n, skel, {}));
                break;
            }
            case SPQRTree::Kind::Rigid:
                CHECK(n >= 4);
                CHECK(simple.size() == node.edges.size());
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) CHECK(connected_without(n, skel, {a, b}));
                break;
        }
    }
}

bool biconnected(const StaticGraph& g) {
    std::vector<std::array<int, 2>> e(g.ends.begin(), g.ends.end());
    if (!connected_without(g.n, e, {})) return false;
    for (int v = 0; v < g.n; ++v)
        if (!connected_without(g.n, e, {v})) return false;
    return true;
}

int count_kind(const SPQRTree& t, SPQRTree::Kind k) {
    return static_cast<int>(std::count_if(t.nodes.begin(), t.nodes.end(), [&](const auto& n) { return n.kind == k; }));
}

}  // namespace

TEST_CASE("spqr on hand-made graphs") {
    SUBCASE("K4 is one rigid node") {
        auto g = make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(t.nodes.size() == 1);
        CHECK(t.nodes[0].kind == SPQRTree::Kind::Rigid);
    }
    SUBCASE("cycle is one polygon") {
        auto g = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(t.nodes.size() == 1);
        CHECK(t.nodes[0].kind == SPQRTree::Kind::Polygon);
    }
    SUBCASE("bond") {
        auto g = make(2, {{0, 1}, {0, 1}, {1, 0}, {0, 1}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(t.nodes.size() == 1);
        CHECK(t.nodes[0].kind == SPQRTree::Kind::Bond);
    }
    SUBCASE("theta graph: bond with three polygons") {
        auto g = make(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(count_kind(t, SPQRTree::Kind::Bond) == 1);
        CHECK(count_kind(t, SPQRTree::Kind::Polygon) == 3);
    }
    SUBCASE("two K4 glued at an edge") {
        auto g = make(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {4, 5}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(count_kind(t, SPQRTree::Kind::Rigid) == 2);
        CHECK(count_kind(t, SPQRTree::Kind::Bond) == 1);
    }
    SUBCASE("triangle with doubled edge") {
        auto g = make(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}});
        auto t = spqr_tree(g);
        validate(g, t);
        CHECK(count_kind(t, SPQRTree::Kind::Bond) == 1);
        CHECK(count_kind(t, SPQRTree::Kind::Polygon) == 1);
    }
}

TEST_CASE("spqr on random biconnected multigraphs") {
    std::mt19937 rng(12345);
    int tested = 0;
    for (int round = 0; round < 3000; ++round) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int m = n + static_cast<int>(rng() % (2 * n + 1));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < m; ++i) {
            int a = static_cast<int>(rng() % static_cast<unsigned>(n));
            int b = static_cast<int>(rng() % static_cast<unsigned>(n));
            if (a == b) continue;
            edges.emplace_back(a, b);
        }
        auto g = make(n, edges);
        if (g.m() < 3 || !biconnected(g)) continue;
        ++tested;
        CAPTURE(round);
        auto t = spqr_tree(g);
        validate(g, t);
    }
    CHECK(tested > 500);
}

TEST_CASE("spqr on long structures") {
    // A ladder gives a deep path search and many separation pairs.
    std::vector<std::pair<int, int>> edges;
    const int k = 300;
    for (int i = 0; i < k; ++i) {
        edges.emplace_back(2 * i, 2 * i + 1);
        if (i + 1 < k) {
            edges.emplace_back(2 * i, 2 * i + 2);
            edges.emplace_back(2 * i + 1, 2 * i + 3);
        }
    }
    auto g = make(2 * k, edges);
    auto t = spqr_tree(g);
    CHECK(count_kind(t, SPQRTree::Kind::Rigid) == 0);
    CHECK(t.nodes.size() == static_cast<std::size_t>(2 * (k - 2) + 1));
}
