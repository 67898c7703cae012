#include <doctest.h>

#include "support.hpp"
#include "syncplan/embedding.hpp"
#include "syncplan/generators.hpp"
#include "syncplan/oracle.hpp"
#include "syncplan/reductions.hpp"
#include "syncplan/solver.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

ClusteredGraph clustered(Multigraph g, const std::vector<std::vector<int>>& leaf_clusters) {
    ClusteredGraph cg;
    cg.g = std::move(g);
    for (const auto& vs : leaf_clusters) {
        cg.clusters[0].children.push_back(static_cast<int>(cg.clusters.size()));
        ClusteredGraph::Cluster c;
        for (int v : vs) c.vertices.push_back(vert(v));
        cg.clusters.push_back(std::move(c));
    }
    return cg;
}

// Solves the reduction and checks the lifted witness against the source problem.
bool solve_clustered(const ClusteredGraph& cg) {
    const Reduction r = clustered_to_syncplan(cg);
    CHECK(check_wellformed(r.instance).empty());
    const Verdict v = solve(r.instance);
    if (v.satisfiable) {
        REQUIRE(v.witness);
        CHECK(is_cplanar_embedding(cg, r.sources[0].lift(cg.g, *v.witness)));
    }
    return v.satisfiable;
}

}  // namespace

TEST_CASE("cd-tree of a single cluster is the graph itself") {
    const auto cg = clustered(k33(), {});
    const CDTree t = build_cd_tree(cg);
    REQUIRE(t.skeletons.size() == 1);
    CHECK(t.skeletons[0].g.num_edges() == 9);
    const Reduction r = clustered_to_syncplan(cg);
    CHECK(r.instance.num_pipes() == 0);
    CHECK_FALSE(solve(r.instance).satisfiable);
    CHECK_FALSE(brute_cplanar_direct(cg));
    CHECK(solve_clustered(clustered(octahedron(), {})));
}

TEST_CASE("cd-tree skeletons contract children and the outside") {
    // Path 0-1-2-3 with cluster {1,2} nested in the root.
    const auto cg = clustered(from_edges(4, {{0, 1}, {1, 2}, {2, 3}}), {{1, 2}});
    const CDTree t = build_cd_tree(cg);
    REQUIRE(t.skeletons.size() == 2);
    CHECK(t.skeletons[0].g.num_vertices() == 3);  // 0, 3 and the child
    CHECK(t.skeletons[0].g.num_edges() == 2);
    CHECK(t.skeletons[1].g.num_vertices() == 3);  // 1, 2 and the parent
    CHECK(t.skeletons[1].g.num_edges() == 3);
    CHECK(clustered_to_syncplan(cg).instance.num_pipes() == 1);
}

TEST_CASE("interleaved clusters on a six-cycle are not c-planar") {
    const auto cg = clustered(cycle(6), {{0, 3}, {1, 4}, {2, 5}});
    CHECK_FALSE(brute_cplanar_direct(cg));
    CHECK_FALSE(brute_cplanar(cg));
    CHECK_FALSE(solve_clustered(cg));
    // Two interleaved clusters still fit on opposite sides.
    const auto two = clustered(cycle(4), {{0, 2}, {1, 3}});
    CHECK(brute_cplanar_direct(two));
    CHECK(solve_clustered(two));
}

TEST_CASE("connected cluster on a triangle is c-planar") {
    const auto cg = clustered(cycle(3), {{0, 1}});
    CHECK(brute_cplanar_direct(cg));
    CHECK(brute_cplanar(cg));
    CHECK(solve_clustered(cg));
}

TEST_CASE("malformed cluster trees are rejected") {
    auto cg = clustered(cycle(3), {{0}, {0}});
    CHECK_THROWS_AS((void)build_cd_tree(cg), std::invalid_argument);
    auto empty = clustered(cycle(3), {{}});
    CHECK_THROWS_AS((void)clustered_to_syncplan(empty), std::invalid_argument);
    auto multi = clustered(bond(2), {});
    CHECK_THROWS_AS((void)clustered_to_syncplan(multi), std::invalid_argument);
}

TEST_CASE("clustered reduction matches the direct oracle on random inputs") {
    Rng rng(77);
    int sat = 0, unsat = 0, planar_unsat = 0;
    for (int round = 0; round < 200; ++round) {
        const int n = 5 + round % 3;
        const auto cg = random_clustered_graph(rng, n, 3 + round % 6, 2 + round % 3, round % 4 != 3);
        CAPTURE(clustered_to_json(cg).dump());
        bool expected = false;
        try {
            expected = brute_cplanar_direct(cg, OracleBudget{2'000'000});
        } catch (const OracleBudgetExceeded&) {
            continue;
        }
        CHECK(solve_clustered(cg) == expected);
        (expected ? sat : unsat)++;
        if (!expected && planar_embed(cg.g)) ++planar_unsat;
    }
    MESSAGE("c-planar " << sat << ", not c-planar " << unsat << " of which planar " << planar_unsat);
    CHECK(sat > 20);
    CHECK(unsat > 10);
    CHECK(planar_unsat > 5);
}

TEST_CASE("sefe of identical triangles") {
    SefeInstance s{cycle(3), cycle(3)};
    const Reduction r = sefe_to_syncplan(s);
    CHECK(check_wellformed(r.instance).empty());
    const Verdict v = solve(r.instance);
    REQUIRE(v.satisfiable);
    CHECK(is_sefe_pair(s, r.sources[0].lift(s.g1, *v.witness), r.sources[1].lift(s.g2, *v.witness)));
}

TEST_CASE("sefe no-instance from private edges") {
    // Shared star at 0 with rays 1..4; each side adds a private cycle through
    // the rays forcing different cyclic orders around 0.
    Multigraph g1 = star(4), g2 = star(4);
    auto ring = [](Multigraph& g, int first, const std::vector<int>& order) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int e = first + static_cast<int>(i);
            g.add_edge(EdgeId{e}, vert(order[i]), vert(order[(i + 1) % order.size()]), half(2 * e), half(2 * e + 1));
        }
    };
    ring(g1, 4, {1, 2, 3, 4});
    ring(g2, 8, {1, 3, 2, 4});
    SefeInstance s{g1, g2};
    CHECK_FALSE(brute_sefe(s).satisfiable);
    CHECK_FALSE(solve(sefe_to_syncplan(s).instance).satisfiable);
}

TEST_CASE("sefe rejects a disconnected shared graph") {
    SefeInstance s{from_edges(4, {{0, 1}, {2, 3}}), from_edges(4, {{0, 1}, {2, 3}})};
    CHECK_THROWS_AS((void)sefe_to_syncplan(s), std::invalid_argument);
}

TEST_CASE("sefe reduction matches pair enumeration") {
    Rng rng(5);
    int sat = 0, unsat = 0;
    for (int round = 0; round < 120; ++round) {
        const auto s = random_sefe_instance(rng, 3 + round % 3, 1 + round % 3, 1 + round % 2, 2 + round % 4);
        CAPTURE(sefe_to_json(s).dump());
        SefeVerdict expected;
        try {
            expected = brute_sefe(s, OracleBudget{2'000'000});
        } catch (const OracleBudgetExceeded&) {
            continue;
        }
        const Reduction r = sefe_to_syncplan(s);
        CHECK(check_wellformed(r.instance).empty());
        const Verdict v = solve(r.instance);
        CHECK(v.satisfiable == expected.satisfiable);
        if (v.satisfiable) CHECK(is_sefe_pair(s, r.sources[0].lift(s.g1, *v.witness), r.sources[1].lift(s.g2, *v.witness)));
        (expected.satisfiable ? sat : unsat)++;
    }
    MESSAGE("sefe yes " << sat << ", no " << unsat);
    CHECK(sat > 10);
    CHECK(unsat > 10);
}

TEST_CASE("pq constraint with a trivial tree is plain planarity") {
    PQConstrainedInstance p{octahedron(), {}};
    const auto at0 = halves_at(p.g, vert(0));
    p.constraints.emplace_back(vert(0), PQTree::trivial(at0));
    CHECK(solve(pqconstrained_to_syncplan(p).instance).satisfiable);
    PQConstrainedInstance q{k33(), {}};
    q.constraints.emplace_back(vert(0), PQTree::trivial(halves_at(q.g, vert(0))));
    CHECK_FALSE(solve(pqconstrained_to_syncplan(q).instance).satisfiable);
}

TEST_CASE("pq constraint on a degree-6 cut-vertex") {
    // Three triangles sharing vertex 0; halves at 0 are 0,2 / 4,6 / 8,10.
    const Multigraph g = from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 2}, {3, 4}, {5, 6}});
    auto check = [&](const char* tree, bool expect) {
        PQConstrainedInstance p{g, {}};
        p.constraints.emplace_back(vert(0), PQTree::parse(tree));
        CAPTURE(tree);
        CHECK(brute_pqconstrained(p).satisfiable == expect);
        const Reduction r = pqconstrained_to_syncplan(p);
        CHECK(check_wellformed(r.instance).empty());
        const Verdict v = solve(r.instance);
        CHECK(v.satisfiable == expect);
        if (v.satisfiable) CHECK(satisfies_pq_constraints(p, r.sources[0].lift(p.g, *v.witness)));
    };
    check("Q(0,2,4,6,8,10)", true);
    check("Q(0,4,2,6,8,10)", false);  // splits the first triangle around a second one
    check("Q(0,4,8,2,6,10)", false);
    check("P(Q(0,4,2),6,8,10)", false);
    check("P(Q(0,2,4),6,8,10)", true);
    check("Q(0,2,8,10,4,6)", true);
    check("Q(0,2,4,8,6,10)", false);
}

TEST_CASE("pq reduction matches the oracle on random subsets") {
    Rng rng(11);
    int sat = 0, unsat = 0;
    for (int round = 0; round < 150; ++round) {
        Multigraph g = random_connected_multigraph(rng, 5, 3 + round % 4, 6);
        const auto best = g.sorted_vertices();
        VertexId v = best.front();
        for (VertexId x : best)
            if (g.degree(x) > g.degree(v)) v = x;
        if (g.degree(v) < 3) continue;
        auto hs = halves_at(g, v);
        std::shuffle(hs.begin(), hs.end(), rng);
        hs.resize(static_cast<std::size_t>(std::uniform_int_distribution<int>(3, static_cast<int>(hs.size()))(rng)));
        PQConstrainedInstance p{g, {}};
        p.constraints.emplace_back(v, round % 2 == 0 ? PQTree::fixed_order(hs) : PQTree::trivial(hs));
        CAPTURE(pqconstrained_to_json(p).dump());
        Verdict expected;
        try {
            expected = brute_pqconstrained(p, OracleBudget{2'000'000});
        } catch (const OracleBudgetExceeded&) {
            continue;
        }
        const Reduction r = pqconstrained_to_syncplan(p);
        CHECK(check_wellformed(r.instance).empty());
        const Verdict got = solve(r.instance);
        CHECK(got.satisfiable == expected.satisfiable);
        if (got.satisfiable) CHECK(satisfies_pq_constraints(p, r.sources[0].lift(p.g, *got.witness)));
        (expected.satisfiable ? sat : unsat)++;
    }
    MESSAGE("pq yes " << sat << ", no " << unsat);
    CHECK(sat > 10);
    CHECK(unsat > 10);
}

TEST_CASE("atomic pairs of stars and a rigid conflict") {
    AtomicInstance a;
    a.atoms = {star(4), star(4)};
    AtomicInstance::Pair pr{0, 1, vert(0), vert(0), {}};
    for (int i = 0; i < 4; ++i) pr.map.emplace(half(2 * i), half(2 * i));
    a.pairs.push_back(pr);
    const Reduction r = atomic_to_syncplan(a);
    CHECK(check_wellformed(r.instance).empty());
    CHECK(solve(r.instance).satisfiable);

    // Two octahedra: vertex 0 of one paired with vertex 0 of the other so that
    // the forced rotations disagree.
    AtomicInstance b;
    b.atoms = {octahedron(), octahedron()};
    AtomicInstance::Pair q{0, 1, vert(0), vert(0), {}};
    const std::vector<int> target{0, 4, 2, 6};  // swaps the images of neighbours 2 and 3
    for (int i = 0; i < 4; ++i) q.map.emplace(half(2 * i), half(target[static_cast<std::size_t>(i)]));
    b.pairs.push_back(q);
    const Reduction rb = atomic_to_syncplan(b);
    CHECK(solve(rb.instance).satisfiable == brute_solve_syncplan(rb.instance).satisfiable);
    CHECK_FALSE(solve(rb.instance).satisfiable);

    AtomicInstance bad = a;
    bad.atoms[1] = star(3);
    CHECK_THROWS_AS((void)atomic_to_syncplan(bad), std::invalid_argument);
}

TEST_CASE("frontend json round trips") {
    Rng rng(3);
    const auto cg = random_clustered_graph(rng, 6, 3, 3);
    CHECK(clustered_to_json(clustered_from_json(clustered_to_json(cg))) == clustered_to_json(cg));
    const auto s = random_sefe_instance(rng, 4, 2, 2, 2);
    CHECK(sefe_to_json(sefe_from_json(sefe_to_json(s))) == sefe_to_json(s));
    PQConstrainedInstance p{octahedron(), {}};
    p.constraints.emplace_back(vert(0), PQTree::parse("Q(0,2,4,6)"));
    CHECK(pqconstrained_to_json(pqconstrained_from_json(pqconstrained_to_json(p))) == pqconstrained_to_json(p));
}

TEST_CASE("benchmark-style frontends produce satisfiable instances") {
    const auto cg = gen_cluster_like_graph(300, 1);
    const Reduction rc = clustered_to_syncplan(cg);
    CHECK(check_wellformed(rc.instance).empty());
    CHECK(solve(rc.instance).satisfiable);
    const auto s = gen_sefe_like_pair(300, 2);
    const Reduction rs = sefe_to_syncplan(s);
    CHECK(check_wellformed(rs.instance).empty());
    const Verdict v = solve(rs.instance);
    REQUIRE(v.satisfiable);
    CHECK(is_sefe_pair(s, rs.sources[0].lift(s.g1, *v.witness), rs.sources[1].lift(s.g2, *v.witness)));
}
