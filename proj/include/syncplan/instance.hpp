#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "syncplan/multigraph.hpp"

namespace syncplan {

enum class VertexKind : std::uint8_t { P, Q };

using HalfEdgeMap = std::unordered_map<HalfEdgeId, HalfEdgeId>;

// Pipe (u, v, phi_uv); the map is stored in both directions.
struct Pipe {
    VertexId u, v;
    HalfEdgeMap phi_uv, phi_vu;

    [[nodiscard]] VertexId other(VertexId x) const { return x == u ? v : u; }
    [[nodiscard]] const HalfEdgeMap& from(VertexId x) const { return x == u ? phi_uv : phi_vu; }
    [[nodiscard]] std::size_t degree() const { return phi_uv.size(); }
};

class SyncPlanInstance {
public:
    Multigraph g;

    [[nodiscard]] VertexKind kind(VertexId v) const { return kind_.get_or(v, VertexKind::P); }
    void set_kind(VertexId v, VertexKind k) { kind_.ensure(v) = k; }

    [[nodiscard]] const CyclicOrder& psi(VertexId v) const;
    void set_psi(VertexId v, CyclicOrder order) { psi_.ensure(v) = std::move(order); }

    // Cells; ids stay stable, removed cells are left empty.
    int add_cell(std::vector<VertexId> members);
    void add_to_cell(int c, VertexId v);
    void remove_from_cell(VertexId v);
    [[nodiscard]] int cell_of(VertexId v) const { return cell_of_.get_or(v, -1); }
    [[nodiscard]] const std::vector<VertexId>& cell(int c) const { return cells_[static_cast<std::size_t>(c)]; }
    [[nodiscard]] std::vector<int> cell_ids() const;
    [[nodiscard]] std::size_t cell_bound() const { return cells_.size(); }

    // Pipes; ids stay stable.
    int add_pipe(VertexId u, VertexId v, HalfEdgeMap phi_uv);
    void remove_pipe(int p);
    [[nodiscard]] int pipe_of(VertexId v) const { return pipe_of_.get_or(v, -1); }
    [[nodiscard]] const Pipe& pipe(int p) const { return *pipes_[static_cast<std::size_t>(p)]; }
    [[nodiscard]] bool has_pipe(int p) const {
        return p >= 0 && static_cast<std::size_t>(p) < pipes_.size() && pipes_[static_cast<std::size_t>(p)].has_value();
    }
    [[nodiscard]] std::vector<int> pipe_ids() const;
    [[nodiscard]] std::size_t num_pipes() const { return pipe_count_; }
    [[nodiscard]] std::size_t pipe_bound() const { return pipes_.size(); }
    [[nodiscard]] VertexId partner(VertexId v) const;

    // Removes v and its incident edges; v must be unmatched.
    void remove_vertex(VertexId v);

private:
    IdVector<VertexId, VertexKind> kind_{VertexKind::P};
    IdVector<VertexId, CyclicOrder> psi_;
    IdVector<VertexId, int> cell_of_{-1};
    std::vector<std::vector<VertexId>> cells_;
    IdVector<VertexId, int> pipe_of_{-1};
    std::vector<std::optional<Pipe>> pipes_;
    std::size_t pipe_count_ = 0;
};

[[nodiscard]] std::vector<std::string> check_wellformed(const SyncPlanInstance& inst);
[[nodiscard]] bool pipe_satisfied(const Pipe& p, const RotationSystem& rs);
[[nodiscard]] bool cell_satisfied(const SyncPlanInstance& inst, int c, const RotationSystem& rs);
[[nodiscard]] bool is_valid_embedding(const SyncPlanInstance& inst, const RotationSystem& rs);

// Per-vertex flag: lies in at least two blocks.
[[nodiscard]] IdVector<VertexId, char> cut_vertices(const Multigraph& g);
[[nodiscard]] inline int reduced_degree(std::size_t d) { return d > 3 ? static_cast<int>(d) - 3 : 0; }
[[nodiscard]] long long potential(const SyncPlanInstance& inst);

// Pairs given as ConvertSmall results, used by the operation log.
struct ConvertSmallResult {
    std::vector<VertexId> converted;
    std::vector<int> removed_pipes;
};
// Turns the P-vertex v (degree < 4) into a Q-vertex, together with its pipe partner.
ConvertSmallResult convert_small(SyncPlanInstance& inst, VertexId v);
// Applies convert_small until no P-vertex has degree < 4.
ConvertSmallResult normalize_small(SyncPlanInstance& inst);

struct Verdict {
    bool satisfiable = false;
    std::optional<RotationSystem> witness;
};

// JSON formats.
[[nodiscard]] nlohmann::json graph_to_json(const Multigraph& g);
[[nodiscard]] Multigraph graph_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json rotation_to_json(const Multigraph& g, const RotationSystem& rs);
[[nodiscard]] RotationSystem rotation_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json instance_to_json(const SyncPlanInstance& inst);
[[nodiscard]] SyncPlanInstance instance_from_json(const nlohmann::json& j);

}  // namespace syncplan
