#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "syncplan/instance.hpp"
#include "syncplan/multigraph.hpp"
#include "syncplan/reductions.hpp"

namespace syncplan {

struct OracleBudget {
    std::uint64_t max_candidates = 10'000'000;  // partial rotation systems visited
};

class OracleBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Default budget, overridden by SYNCPLAN_ORACLE_BUDGET.
[[nodiscard]] OracleBudget default_oracle_budget();

// Visits every genus-0 rotation system of g once, vertices in id order and
// rotations in lexicographic order. visit returns false to stop early.
std::uint64_t enumerate_planar_embeddings(const Multigraph& g, const std::function<bool(const RotationSystem&)>& visit,
                                          OracleBudget budget = default_oracle_budget());
[[nodiscard]] std::vector<RotationSystem> all_planar_embeddings(const Multigraph& g,
                                                                OracleBudget budget = default_oracle_budget());

// Exhaustive search; vertices coupled by edges, pipes or cells are searched jointly.
[[nodiscard]] Verdict brute_solve_syncplan(const SyncPlanInstance& inst, OracleBudget budget = default_oracle_budget());

// c-planarity through the cluster reduction and the exhaustive SyncPlan search.
[[nodiscard]] bool brute_cplanar(const ClusteredGraph& cg, OracleBudget budget = default_oracle_budget());
// c-planarity without the reduction: some minimal set of added edges makes every
// cluster connected and the result has a planar embedding in which, for every
// cluster, the rest of the graph lies in a single face of the cluster.
[[nodiscard]] bool brute_cplanar_direct(const ClusteredGraph& cg, OracleBudget budget = default_oracle_budget());
// Same test with the rotations of the original edges fixed to rs.
[[nodiscard]] bool cplanar_extends(const ClusteredGraph& cg, const RotationSystem& rs, OracleBudget budget = default_oracle_budget());

// Planar embedding pairs inducing equal rotations on the shared graph.
struct SefeVerdict {
    bool satisfiable = false;
    std::optional<std::pair<RotationSystem, RotationSystem>> witness;
};
[[nodiscard]] SefeVerdict brute_sefe(const SefeInstance& s, OracleBudget budget = default_oracle_budget());

[[nodiscard]] Verdict brute_pqconstrained(const PQConstrainedInstance& p, OracleBudget budget = default_oracle_budget());

}  // namespace syncplan
