#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syncplan/decomposition.hpp"
#include "syncplan/instance.hpp"
#include "syncplan/operations.hpp"

namespace syncplan {

// 2-SAT over variables 0..n-1; literal 2x is x, 2x+1 is not x.
struct TwoSatFormula {
    int variables = 0;
    std::vector<std::array<int, 2>> clauses;

    int add_variable() { return variables++; }
    static int pos(int x) { return 2 * x; }
    static int neg(int x) { return 2 * x + 1; }
    void add_clause(int a, int b) { clauses.push_back({a, b}); }
    void add_equal(int x, int y) {
        add_clause(pos(x), neg(y));
        add_clause(neg(x), pos(y));
    }
    void add_differ(int x, int y) {
        add_clause(pos(x), pos(y));
        add_clause(neg(x), neg(y));
    }
};
[[nodiscard]] std::optional<std::vector<char>> two_sat_solve(const TwoSatFormula& f);

struct SelectedOp {
    enum class Kind { None, EncapsulateAndJoin, PropagatePQ, SimplifyMatching };
    Kind kind = Kind::None;
    int pipe = -1;
    VertexId vertex;  // vertex the operation is applied at (unused for EncapsulateAndJoin)
};

// Component structures of an instance, refreshed after each operation only
// for the components the operation touched.
class StructureCache {
public:
    explicit StructureCache(const SyncPlanInstance& inst);
    ~StructureCache();
    StructureCache(const StructureCache&) = delete;
    StructureCache& operator=(const StructureCache&) = delete;

    // Throws NonPlanarError when a component that must be inspected is not planar.
    [[nodiscard]] SelectedOp select();
    [[nodiscard]] const PQTree& tree(VertexId v);
    [[nodiscard]] BondPoles bond_poles(VertexId u);
    void update(const OpRecord& rec);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

[[nodiscard]] SelectedOp select_operation(const SyncPlanInstance& inst);

// Every operation whose preconditions hold, pipe by pipe. Throws NonPlanarError.
[[nodiscard]] std::vector<SelectedOp> applicable_operations(const SyncPlanInstance& inst);

// Applies op, recomputing the structure it needs; nullopt marks a no-instance.
std::optional<OpRecord> apply_operation(SyncPlanInstance& inst, const SelectedOp& op);

// Per-operation measurements of the potential argument.
struct LedgerEntry {
    OpTag tag = OpTag::ConvertSmall;
    long long phi_before = 0, phi_after = 0;
    long long delta_vertices = 0;
    long long delta_component_edges = 0;  // largest growth of a touched component
};

struct ReduceOptions {
    bool ledger = false;
    std::function<void(const OpRecord&)> on_op;
};

struct ReduceResult {
    SyncPlanInstance instance;
    std::vector<OpRecord> log;
    std::vector<LedgerEntry> ledger;
    bool no_instance = false;
    std::string reason;
};

// Applies operations until no pipe is left. The input should be normalized.
[[nodiscard]] ReduceResult reduce_instance(SyncPlanInstance inst, const ReduceOptions& options = {});

// Requires a pipe-free instance.
[[nodiscard]] std::optional<RotationSystem> solve_reduced(const SyncPlanInstance& inst);

[[nodiscard]] RotationSystem extract_embedding(const SyncPlanInstance& reduced, std::span<const OpRecord> log,
                                               RotationSystem rs_reduced);

struct SolveStats {
    std::size_t operations = 0;
    long long initial_potential = 0;
    std::size_t reduced_vertices = 0;
    std::size_t reduced_edges = 0;
    std::string reason;  // why the instance was rejected, if it was
};

// normalize, reduce, solve the pipe-free rest and map the witness back.
[[nodiscard]] Verdict solve(const SyncPlanInstance& inst, SolveStats* stats = nullptr, const ReduceOptions& options = {});

// Runs fn on a thread with a large stack; exceptions are rethrown.
void run_with_large_stack(const std::function<void()>& fn);

}  // namespace syncplan
