#include <doctest.h>

#include <map>

#include "support.hpp"
#include "syncplan/generators.hpp"
#include "syncplan/operations.hpp"
#include "syncplan/oracle.hpp"
#include "syncplan/solver.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

SyncPlanInstance piped_stars(int k) {
    SyncPlanInstance inst;
    std::vector<std::pair<int, int>> e;
    for (int a = 1; a <= k; ++a) e.emplace_back(0, a);
    for (int a = 1; a <= k; ++a) e.emplace_back(k + 1, k + 1 + a);
    inst.g = from_edges(2 * k + 2, e);
    HalfEdgeMap phi;
    for (int i = 0; i < k; ++i) phi.emplace(half(2 * i), half(2 * (k + i)));
    inst.add_pipe(vert(0), vert(k + 1), phi);
    return inst;
}

}  // namespace

TEST_CASE("two-sat") {
    SUBCASE("unit clause") {
        TwoSatFormula f;
        const int a = f.add_variable();
        f.add_clause(TwoSatFormula::pos(a), TwoSatFormula::pos(a));
        auto r = two_sat_solve(f);
        REQUIRE(r);
        CHECK((*r)[0] == 1);
    }
    SUBCASE("all four clauses") {
        TwoSatFormula f;
        const int a = f.add_variable(), b = f.add_variable();
        using F = TwoSatFormula;
        f.add_clause(F::pos(a), F::pos(b));
        f.add_clause(F::neg(a), F::pos(b));
        f.add_clause(F::pos(a), F::neg(b));
        f.add_clause(F::neg(a), F::neg(b));
        CHECK_FALSE(two_sat_solve(f));
    }
    SUBCASE("equivalence chain") {
        TwoSatFormula f;
        for (int i = 0; i < 50; ++i) f.add_variable();
        for (int i = 0; i + 1 < 50; ++i) f.add_equal(i, i + 1);
        f.add_clause(TwoSatFormula::neg(17), TwoSatFormula::neg(17));
        auto r = two_sat_solve(f);
        REQUIRE(r);
        for (int i = 0; i < 50; ++i) CHECK((*r)[static_cast<std::size_t>(i)] == 0);
    }
}

TEST_CASE("permutation cycles") {
    HalfEdgeMap pi{{half(0), half(2)}, {half(2), half(0)}, {half(4), half(6)}, {half(6), half(4)}};
    CHECK(uniform_cycles(pi));
    auto sigma = invariant_order(pi);
    REQUIRE(sigma.size() == 4);
    CyclicOrder image;
    for (HalfEdgeId h : sigma) image.push_back(pi.at(h));
    CHECK(cyclic_equal(image, sigma));
    HalfEdgeMap skew{{half(0), half(0)}, {half(2), half(4)}, {half(4), half(6)}, {half(6), half(2)}};
    CHECK_FALSE(uniform_cycles(skew));
}

TEST_CASE("select_operation fixtures") {
    SyncPlanInstance plain;
    plain.g = octahedron();
    CHECK(select_operation(plain).kind == SelectedOp::Kind::None);

    auto stars = piped_stars(4);
    auto sel = select_operation(stars);
    CHECK(sel.kind == SelectedOp::Kind::EncapsulateAndJoin);
    CHECK(sel.pipe == 0);

    // Octahedron vertex 0 piped to the center of a 4-star.
    SyncPlanInstance mixed;
    std::vector<std::pair<int, int>> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}};
    for (int a = 7; a <= 10; ++a) e.emplace_back(6, a);
    mixed.g = from_edges(11, e);
    HalfEdgeMap phi;
    for (int i = 0; i < 4; ++i) phi.emplace(half(2 * i), half(2 * (12 + i)));
    mixed.add_pipe(vert(0), vert(6), phi);
    sel = select_operation(mixed);
    CHECK(sel.kind == SelectedOp::Kind::PropagatePQ);
    CHECK(sel.vertex == vert(0));
}

TEST_CASE("toroidal pipes") {
    const std::vector<std::pair<std::vector<int>, bool>> cases{
        {{4}, true}, {{2, 2}, true}, {{1, 1, 1, 1}, true}, {{1, 3}, false}, {{2, 3}, false}, {{1, 2}, false}, {{3, 3}, true}};
    for (const auto& [cycles, sat] : cases) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto inst = gen_toroidal(cycles, seed);
            CAPTURE(cycles.size());
            CHECK(brute_solve_syncplan(inst).satisfiable == sat);
            auto v = solve(inst);
            CHECK(v.satisfiable == sat);
        }
    }
}

TEST_CASE("solve agrees with the oracle on small random instances") {
    Rng rng(99);
    SmallInstanceParams params;
    int sat = 0, unsat = 0;
    for (int round = 0; round < 400; ++round) {
        auto inst = random_small_instance(rng, params);
        CAPTURE(round);
        CAPTURE(instance_to_json(inst).dump());
        REQUIRE(check_wellformed(inst).empty());
        const bool expected = brute_solve_syncplan(inst).satisfiable;
        const Verdict got = solve(inst);
        CHECK(got.satisfiable == expected);
        if (got.satisfiable) {
            REQUIRE(got.witness);
            CHECK(is_valid_embedding(inst, *got.witness));
        }
        (expected ? sat : unsat)++;
    }
    CHECK(sat > 50);
    CHECK(unsat > 50);
}

TEST_CASE("random instances exercise every operation") {
    Rng rng(5);
    SmallInstanceParams params;
    params.groups = 3;
    params.min_vertices = 2;
    params.max_vertices = 5;
    params.extra_edges = 7;
    params.max_pipes = 4;
    std::map<OpTag, int> seen;
    int sat = 0;
    for (int round = 0; round < 300; ++round) {
        auto inst = random_small_instance(rng, params);
        auto work = inst;
        normalize_small(work);
        auto red = reduce_instance(work);
        for (const auto& rec : red.log) seen[rec.tag]++;
        CAPTURE(round);
        CAPTURE(instance_to_json(inst).dump());
        const Verdict got = solve(inst);
        const bool expected = brute_solve_syncplan(inst).satisfiable;
        CHECK(got.satisfiable == expected);
        sat += expected;
    }
    for (auto [tag, n] : seen) MESSAGE(to_string(tag) << " " << n);
    MESSAGE("satisfiable " << sat);
    CHECK(seen[OpTag::EncapsulateAndJoin] > 4);
    CHECK(seen[OpTag::PropagatePQ] > 20);
    CHECK(seen[OpTag::SimplifyMatchingI] > 3);
    CHECK(seen[OpTag::SimplifyMatchingII] > 5);
    CHECK(seen[OpTag::SimplifyMatchingIII] > 3);
}

TEST_CASE("potential ledger") {
    auto check_ledger = [](const SyncPlanInstance& original) {
        auto work = original;
        normalize_small(work);
        const long long phi0 = potential(work);
        CHECK(phi0 < 2 * static_cast<long long>(original.g.num_edges()) + 1);
        ReduceOptions opt;
        opt.ledger = true;
        auto red = reduce_instance(work, opt);
        CHECK(static_cast<long long>(red.log.size()) <= phi0);
        for (const auto& e : red.ledger) {
            const long long d = e.phi_before - e.phi_after;
            CAPTURE(to_string(e.tag));
            CHECK(d >= 1);
            CHECK(e.delta_vertices <= 2 * d + 12);
            CHECK(e.delta_component_edges <= 2 * d);
        }
        return red.ledger.size();
    };
    Rng rng(11);
    SmallInstanceParams params;
    params.groups = 3;
    params.max_vertices = 6;
    params.extra_edges = 5;
    params.max_pipes = 4;
    std::size_t entries = 0;
    for (int round = 0; round < 300; ++round) {
        params.hub_bias = round % 2 ? 0.8 : 0.0;
        entries += check_ledger(random_small_instance(rng, params));
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) entries += check_ledger(gen_random_pipes(400, seed));
    MESSAGE("ledger entries " << entries);
    CHECK(entries > 250);
}

TEST_CASE("random-pipes family is satisfiable") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto inst = gen_random_pipes(400, seed);
        CHECK(check_wellformed(inst).empty());
        SolveStats stats;
        auto v = solve(inst, &stats);
        MESSAGE("m " << inst.g.num_edges() << " pipes " << inst.num_pipes() << " ops " << stats.operations);
        CHECK(v.satisfiable);
    }
}
