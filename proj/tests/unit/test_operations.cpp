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

struct OpCounts {
    std::map<OpTag, int> applied, satisfiable;
    int skipped = 0;
};

// Applies every applicable operation to a copy of inst and compares oracle verdicts.
void check_all_operations(const SyncPlanInstance& inst, OpCounts& counts) {
    std::vector<SelectedOp> ops;
    try {
        ops = applicable_operations(inst);
    } catch (const NonPlanarError&) {
        return;
    }
    Verdict before;
    try {
        before = brute_solve_syncplan(inst, OracleBudget{2'000'000});
    } catch (const OracleBudgetExceeded&) {
        counts.skipped++;
        return;
    }
    for (const SelectedOp& op : ops) {
        SyncPlanInstance after = inst;
        auto rec = apply_operation(after, op);
        if (!rec) {
            CHECK_FALSE(before.satisfiable);
            counts.applied[OpTag::SimplifyMatchingII]++;
            continue;
        }
        CHECK(check_wellformed(after).empty());
        Verdict v;
        try {
            v = brute_solve_syncplan(after, OracleBudget{2'000'000});
        } catch (const OracleBudgetExceeded&) {
            counts.skipped++;
            continue;
        }
        CAPTURE(to_string(rec->tag));
        CHECK(v.satisfiable == before.satisfiable);
        counts.applied[rec->tag]++;
        if (!v.satisfiable) continue;
        counts.satisfiable[rec->tag]++;
        RotationSystem rs = *v.witness;
        undo_embedding(*rec, rs, static_cast<std::int32_t>(after.g.half_bound()) + 1);
        CHECK(is_valid_embedding(inst, rs));
    }
}

}  // namespace

TEST_CASE("operations preserve the verdict and undo to valid embeddings") {
    Rng rng(2024);
    SmallInstanceParams params;
    params.groups = 3;
    params.max_vertices = 5;
    params.extra_edges = 7;
    params.max_pipes = 4;
    OpCounts counts;
    for (int round = 0; round < 250; ++round) {
        const bool hub = round % 2 != 0;
        params.hub_bias = hub ? 0.8 : 0.0;
        params.max_vertices = hub ? 6 : 5;
        params.extra_edges = hub ? 3 : 7;
        auto inst = random_small_instance(rng, params);
        normalize_small(inst);
        CAPTURE(round);
        CAPTURE(instance_to_json(inst).dump());
        check_all_operations(inst, counts);
    }
    for (auto [tag, n] : counts.applied) MESSAGE(to_string(tag) << " applied " << n << ", satisfiable " << counts.satisfiable[tag]);
    MESSAGE("skipped " << counts.skipped);
    CHECK(counts.applied[OpTag::EncapsulateAndJoin] > 20);
    CHECK(counts.applied[OpTag::PropagatePQ] > 20);
    CHECK(counts.applied[OpTag::SimplifyMatchingI] > 5);
    CHECK(counts.applied[OpTag::SimplifyMatchingIII] > 5);
}

TEST_CASE("convert small keeps the verdict") {
    Rng rng(31);
    SmallInstanceParams params;
    params.max_pipes = 3;
    int applied = 0;
    for (int round = 0; round < 300; ++round) {
        auto inst = random_small_instance(rng, params);
        for (VertexId v : inst.g.sorted_vertices()) {
            if (inst.kind(v) != VertexKind::P || inst.g.degree(v) >= 4 || inst.pipe_of(v) < 0) continue;
            auto after = inst;
            (void)convert_small(after, v);
            CHECK(check_wellformed(after).empty());
            CHECK(brute_solve_syncplan(after).satisfiable == brute_solve_syncplan(inst).satisfiable);
            ++applied;
            break;
        }
    }
    CHECK(applied > 50);
}

TEST_CASE("propagate_pq rejects trivial trees and simplify reports toroidal no-instances") {
    auto inst = gen_toroidal({1, 3}, 7);
    CHECK_THROWS_AS((void)propagate_pq(inst, vert(0), embedding_tree(inst, vert(0))), std::invalid_argument);
    const auto ops = applicable_operations(inst);
    REQUIRE(!ops.empty());
    auto copy = inst;
    CHECK_FALSE(apply_operation(copy, ops.front()));
}
