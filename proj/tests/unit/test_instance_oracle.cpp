#include <doctest.h>

#include "support.hpp"
#include "syncplan/embedding.hpp"
#include "syncplan/oracle.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

// Two k-stars with centers 0 and k+1; phi pairs ray i of the first with ray perm[i] of the second.
SyncPlanInstance piped_stars(int k, const std::vector<int>& perm) {
    SyncPlanInstance inst;
    std::vector<std::pair<int, int>> e;
    for (int a = 1; a <= k; ++a) e.emplace_back(0, a);
    for (int a = 1; a <= k; ++a) e.emplace_back(k + 1, k + 1 + a);
    inst.g = from_edges(2 * k + 2, e);
    HalfEdgeMap phi;
    for (int i = 0; i < k; ++i) phi.emplace(half(2 * i), half(2 * (k + perm[static_cast<std::size_t>(i)])));
    inst.add_pipe(vert(0), vert(k + 1), phi);
    return inst;
}

std::vector<int> identity(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
}

}  // namespace

TEST_CASE("check_wellformed") {
    auto ok = piped_stars(4, identity(4));
    CHECK(check_wellformed(ok).empty());

    SyncPlanInstance bad;
    bad.g = from_edges(11, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}, {5, 7}, {5, 8}, {5, 9}, {5, 10}});
    HalfEdgeMap phi;
    for (int i = 0; i < 4; ++i) phi.emplace(half(2 * i), half(2 * (4 + i)));
    bad.add_pipe(vert(0), vert(5), phi);
    auto v = check_wellformed(bad);
    REQUIRE(!v.empty());
    CHECK(v[0].find("degree mismatch") != std::string::npos);

    auto twice = piped_stars(4, identity(4));
    twice.g.add_vertex(vert(100));
    for (int i = 0; i < 4; ++i) {
        twice.g.add_vertex(vert(101 + i));
        twice.g.add_edge(EdgeId{100 + i}, vert(100), vert(101 + i), half(200 + 2 * i), half(201 + 2 * i));
    }
    HalfEdgeMap phi2;
    for (int i = 0; i < 4; ++i) phi2.emplace(half(2 * i), half(200 + 2 * i));
    twice.add_pipe(vert(0), vert(100), phi2);
    bool matching = false;
    for (auto& s : check_wellformed(twice)) matching = matching || s.find("matching") != std::string::npos;
    CHECK(matching);
}

TEST_CASE("is_valid_embedding") {
    auto inst = piped_stars(4, identity(4));
    RotationSystem rs = incidence_rotation(inst.g);
    CyclicOrder rv;
    for (HalfEdgeId h : rs.at(vert(0))) rv.push_back(inst.pipe(0).phi_uv.at(h));
    rs[vert(5)] = reversed(rv);
    CHECK(is_valid_embedding(inst, rs));
    rs[vert(5)] = rv;
    CHECK_FALSE(is_valid_embedding(inst, rs));

    SyncPlanInstance q;
    q.g = from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}});
    for (int v : {0, 4}) {
        q.set_kind(vert(v), VertexKind::Q);
        q.set_psi(vert(v), halves_at(q.g, vert(v)));
    }
    q.add_cell({vert(0), vert(4)});
    RotationSystem qs = incidence_rotation(q.g);
    CHECK(is_valid_embedding(q, qs));
    qs[vert(4)] = reversed(qs.at(vert(4)));
    CHECK_FALSE(is_valid_embedding(q, qs));
    qs[vert(0)] = reversed(qs.at(vert(0)));
    CHECK(is_valid_embedding(q, qs));
}

TEST_CASE("potential") {
    auto blocks = piped_stars(4, identity(4));
    // Star centers are cut vertices; turn them into block vertices by closing a cycle of rays.
    CHECK(potential(blocks) == 2 * 1 - 1);

    SyncPlanInstance bv;
    bv.g = from_edges(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    HalfEdgeMap phi;
    for (int i = 0; i < 4; ++i) phi.emplace(half(2 * i), half(2 * i + 1));
    bv.add_pipe(vert(0), vert(1), phi);
    CHECK(potential(bv) == 1);

    auto five = piped_stars(5, identity(5));
    CHECK(potential(five) == 3);
    SyncPlanInstance none;
    none.g = complete(4);
    CHECK(potential(none) == 0);
}

TEST_CASE("normalize_small") {
    SyncPlanInstance a;
    a.g = star(3);
    auto r = normalize_small(a);
    CHECK(a.kind(vert(0)) == VertexKind::Q);
    CHECK(a.cell(a.cell_of(vert(0))).size() == 1);
    CHECK(check_wellformed(a).empty());

    auto b = piped_stars(3, {1, 2, 0});
    normalize_small(b);
    CHECK(b.num_pipes() == 0);
    CHECK(b.cell_of(vert(0)) == b.cell_of(vert(4)));
    CyclicOrder mapped;
    Pipe p{vert(0), vert(4), {}, {}};
    for (int i = 0; i < 3; ++i) p.phi_uv.emplace(half(2 * i), half(2 * (3 + (i + 1) % 3)));
    for (auto it = b.psi(vert(0)).rbegin(); it != b.psi(vert(0)).rend(); ++it) mapped.push_back(p.phi_uv.at(*it));
    CHECK(cyclic_equal(mapped, b.psi(vert(4))));
    CHECK(check_wellformed(b).empty());

    auto c = piped_stars(4, identity(4));
    normalize_small(c);
    CHECK(c.num_pipes() == 1);
    CHECK(c.kind(vert(0)) == VertexKind::P);
}

TEST_CASE("json round trip") {
    auto inst = piped_stars(4, {1, 0, 3, 2});
    inst.g.add_vertex(vert(20));
    for (int i = 0; i < 3; ++i) {
        inst.g.add_vertex(vert(21 + i));
        inst.g.add_edge(EdgeId{30 + i}, vert(20), vert(21 + i), half(60 + 2 * i), half(61 + 2 * i));
    }
    inst.set_kind(vert(20), VertexKind::Q);
    inst.set_psi(vert(20), halves_at(inst.g, vert(20)));
    inst.add_cell({vert(20)});
    auto j = instance_to_json(inst);
    auto back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);
    CHECK(check_wellformed(back).empty());
    nlohmann::json nested = {{"graph", graph_to_json(inst.g)}};
    CHECK(instance_from_json(nested).g.num_edges() == inst.g.num_edges());
    CHECK_THROWS((void)instance_from_json(nlohmann::json::parse(R"({"vertices":[0,1],"edges":[{"u":0,"v":0}]})")));
    CHECK_THROWS((void)instance_from_json(nlohmann::json::parse(R"({"vertices":["x"],"edges":[]})")));
}

TEST_CASE("oracle enumeration counts") {
    CHECK(all_planar_embeddings(cycle(3)).size() == 1);
    CHECK(all_planar_embeddings(complete(4)).size() == 2);
    CHECK(all_planar_embeddings(star(4)).size() == 6);
    CHECK(all_planar_embeddings(complete(5)).empty());
    CHECK(all_planar_embeddings(k33()).empty());
    CHECK(all_planar_embeddings(octahedron()).size() == 2);
    // Every enumerated system is planar, and the count is relabeling invariant.
    auto g = from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
    auto h = from_edges(5, {{4, 3}, {3, 2}, {2, 4}, {2, 1}, {1, 0}, {0, 2}});
    auto eg = all_planar_embeddings(g);
    for (auto& rs : eg) CHECK(genus(g, rs) == 0);
    CHECK(eg.size() == all_planar_embeddings(h).size());
    CHECK(eg.size() == 4);
}

TEST_CASE("oracle budget") {
    OracleBudget tiny{10};
    CHECK_THROWS_AS((void)all_planar_embeddings(complete(5), tiny), OracleBudgetExceeded);
}

TEST_CASE("brute_solve_syncplan") {
    auto stars = piped_stars(4, {2, 0, 3, 1});
    auto v = brute_solve_syncplan(stars);
    CHECK(v.satisfiable);
    REQUIRE(v.witness);
    CHECK(is_valid_embedding(stars, *v.witness));

    // 4-bond with its poles piped: pi = phi o delta.
    auto toroidal = [](const std::vector<int>& perm) {
        SyncPlanInstance inst;
        inst.g = bond(4);
        HalfEdgeMap phi;
        for (int i = 0; i < 4; ++i) phi.emplace(half(2 * i), half(2 * perm[static_cast<std::size_t>(i)] + 1));
        inst.add_pipe(vert(0), vert(1), phi);
        return inst;
    };
    CHECK(brute_solve_syncplan(toroidal({1, 2, 3, 0})).satisfiable);
    CHECK_FALSE(brute_solve_syncplan(toroidal({0, 2, 3, 1})).satisfiable);
    CHECK(brute_solve_syncplan(toroidal({1, 0, 3, 2})).satisfiable);
    CHECK(brute_solve_syncplan(toroidal({0, 1, 2, 3})).satisfiable);
}
