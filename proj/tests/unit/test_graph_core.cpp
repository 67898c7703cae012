#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "syncplan/embedding.hpp"
#include "syncplan/oracle.hpp"

using namespace syncplan;
using namespace syncplan::testing;

TEST_CASE("face tracing on small graphs") {
    SUBCASE("triangle") {
        auto g = cycle(3);
        auto ft = trace_faces(g, incidence_rotation(g));
        CHECK(ft.faces.size() == 2);
        CHECK(ft.genus == 0);
    }
    SUBCASE("K4 planar and with one transposed rotation") {
        auto g = complete(4);
        auto rs = planar_embed(g);
        REQUIRE(rs);
        auto ft = trace_faces(g, *rs);
        CHECK(ft.faces.size() == 4);
        CHECK(ft.genus == 0);
        auto bad = *rs;
        std::swap(bad[vert(0)][0], bad[vert(0)][1]);
        auto ft2 = trace_faces(g, bad);
        CHECK(ft2.faces.size() == 2);
        CHECK(ft2.genus == 1);
    }
    SUBCASE("faces partition the darts") {
        auto g = octahedron();
        auto rs = planar_embed(g);
        REQUIRE(rs);
        auto ft = trace_faces(g, *rs);
        std::size_t darts = 0;
        for (auto& f : ft.faces) darts += f.size();
        CHECK(darts == 2 * g.num_edges());
        CHECK(ft.faces.size() == 8);
    }
}

TEST_CASE("genus is invariant under global reversal") {
    for (auto g : {complete(4), complete(5), k33(), octahedron()}) {
        auto rs = incidence_rotation(g);
        const int before = genus(g, rs);
        reverse_all(g, rs);
        CHECK(genus(g, rs) == before);
    }
}

TEST_CASE("planar_embed") {
    CHECK(planar_embed(complete(4)).has_value());
    CHECK(genus(complete(4), *planar_embed(complete(4))) == 0);
    CHECK_FALSE(planar_embed(complete(5)).has_value());
    CHECK_FALSE(planar_embed(k33()).has_value());
    auto b = bond(5);
    auto rs = planar_embed(b);
    REQUIRE(rs);
    CHECK(genus(b, *rs) == 0);
    CHECK(planar_embed(b)->at(vert(0)) == rs->at(vert(0)));
}

TEST_CASE("split and join") {
    SUBCASE("bridge between triangles") {
        auto g = from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
        Cut c{{vert(0), vert(1), vert(2)}, {vert(3), vert(4), vert(5)}};
        CHECK(c.cut_edges(g).size() == 1);
        auto s = split_at_cut(g, c);
        CHECK(s.phi_xy.size() == 1);
        CHECK(s.g1.degree(s.x) == 1);
        CHECK(s.g2.degree(s.y) == 1);
        CHECK(s.g1.num_edges() == 4);
        auto back = join_at_vertices(s.g1, s.x, s.g2, s.y, s.phi_xy);
        CHECK(back.sorted_edges() == g.sorted_edges());
        for (EdgeId e : g.edges()) {
            CHECK(back.halves(e) == g.halves(e));
            CHECK(back.vertex_of(back.halves(e)[0]) == g.vertex_of(g.halves(e)[0]));
        }
    }
    SUBCASE("bond split into two stars") {
        auto g = bond(4);
        auto s = split_at_cut(g, Cut{{vert(0)}, {vert(1)}});
        CHECK(s.phi_xy.size() == 4);
        CHECK(s.g1.degree(vert(0)) == 4);
        CHECK(s.g2.degree(vert(1)) == 4);
        CHECK(s.g1.num_vertices() == 2);
    }
    SUBCASE("joining two stars gives a bipartite graph") {
        auto a = star(4);
        Multigraph b;
        for (int v = 10; v <= 14; ++v) b.add_vertex(vert(v));
        for (int i = 0; i < 4; ++i) b.add_edge(EdgeId{10 + i}, vert(10), vert(11 + i), half(100 + 2 * i), half(101 + 2 * i));
        HalfEdgePairs phi;
        for (int i = 0; i < 4; ++i) phi.emplace_back(half(2 * i), half(100 + 2 * ((i + 1) % 4)));
        auto j = join_at_vertices(a, vert(0), b, vert(10), phi);
        CHECK(j.num_vertices() == 8);
        CHECK(j.num_edges() == 4);
        for (VertexId v : j.vertices()) CHECK(j.degree(v) == 1);
    }
    SUBCASE("errors") {
        auto g = cycle(4);
        CHECK_THROWS_AS((void)split_at_cut(g, Cut{{vert(0), vert(1)}, {vert(1), vert(2), vert(3)}}), GraphError);
        CHECK_THROWS_AS((void)split_at_cut(g, Cut{{vert(0)}, {vert(1)}}), GraphError);
        auto a = star(3);
        auto b = star(4);
        CHECK_THROWS_AS((void)join_at_vertices(a, vert(0), b, vert(0), {}), GraphError);
    }
}

TEST_CASE("split then join of planar embeddings keeps rotations") {
    // Cycle-connected sides: every planar embedding respects the cut.
    auto g = from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
    Cut c{{vert(0), vert(1), vert(2)}, {vert(3), vert(4), vert(5)}};
    auto embeddings = all_planar_embeddings(g);
    REQUIRE(!embeddings.empty());
    for (const auto& rs : embeddings) {
        auto s1 = contract_connected_in_embedding(g, rs, c.side_y);
        auto s2 = contract_connected_in_embedding(g, rs, c.side_x);
        CHECK(genus(s1.graph, s1.rotation) == 0);
        CHECK(genus(s2.graph, s2.rotation) == 0);
        // Contracted rotations are mutually reversed: both list the cut halves of their own side.
        CyclicOrder mapped;
        for (HalfEdgeId h : s1.rotation.at(s1.v)) mapped.push_back(g.twin(h));
        CHECK(cyclic_equal(reversed(mapped), s2.rotation.at(s2.v)));
    }
}

TEST_CASE("contract_connected_in_embedding") {
    SUBCASE("bowtie triangle against the oracle") {
        auto g = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
        std::vector<VertexId> s{vert(0), vert(1), vert(2)};
        for (const auto& rs : all_planar_embeddings(g)) {
            auto c = contract_connected_in_embedding(g, rs, s);
            CHECK(genus(c.graph, c.rotation) == 0);
            CHECK(c.rotation.at(c.v).size() == 2);
            CHECK(c.rotation.at(vert(3)) == rs.at(vert(3)));
            bool found = false;
            for (const auto& other : all_planar_embeddings(c.graph)) found = found || other == c.rotation;
            CHECK(found);
        }
    }
    SUBCASE("single vertex is the identity") {
        auto g = octahedron();
        auto rs = *planar_embed(g);
        auto c = contract_connected_in_embedding(g, rs, std::vector<VertexId>{vert(0)});
        CHECK(cyclic_equal(c.rotation.at(c.v), rs.at(vert(0))));
    }
    SUBCASE("disconnected set is rejected") {
        auto g = cycle(4);
        auto rs = incidence_rotation(g);
        CHECK_THROWS_AS((void)contract_connected_in_embedding(g, rs, std::vector<VertexId>{vert(0), vert(2)}), GraphError);
    }
}

namespace {

void check_bipartite_split(const Multigraph& g) {
    auto embeddings = all_planar_embeddings(g);
    REQUIRE(!embeddings.empty());
    for (const auto& rs : embeddings) {
        auto s = split_bipartite_embedding(g, rs);
        CHECK(genus(s.contract_b.graph, s.contract_b.rotation) == 0);
        CHECK(genus(s.contract_a.graph, s.contract_a.rotation) == 0);
        HalfEdgeMap phi;
        for (auto [a, b] : s.phi_xy) phi.emplace(a, b);
        CyclicOrder mapped;
        for (HalfEdgeId h : s.contract_b.rotation.at(s.contract_b.v)) mapped.push_back(phi.at(h));
        INFO("graph with ", g.num_vertices(), " vertices and ", g.num_edges(), " edges");
        CHECK(cyclic_equal(reversed(mapped), s.contract_a.rotation.at(s.contract_a.v)));
    }
}

}  // namespace

TEST_CASE("split_bipartite_embedding is compatible with phi") {
    check_bipartite_split(cycle(4));
    check_bipartite_split(from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}));
    // 2x3 grid
    check_bipartite_split(from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}));
    // multi-edges
    check_bipartite_split(from_edges(4, {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 1}}));
    // a tree
    check_bipartite_split(from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}));
    CHECK_THROWS_AS((void)split_bipartite_embedding(cycle(3), incidence_rotation(cycle(3))), GraphError);
}
