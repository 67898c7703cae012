#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "syncplan/instance.hpp"
#include "syncplan/pq_tree.hpp"
#include "syncplan/spqr.hpp"
#include "syncplan/static_graph.hpp"

namespace syncplan {

class NonPlanarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BlockCutTree {
    std::vector<std::vector<EdgeId>> blocks;
    std::vector<VertexId> cut_vertices;
    std::vector<std::array<int, 2>> links;  // (block index, index into cut_vertices)
};
[[nodiscard]] BlockCutTree block_cut_tree(const Multigraph& g);

// Copy of some components where every Q-vertex of degree >= 3 became the
// center of a wheel. Gadget vertices and halves map to invalid ids.
struct WheelGraph {
    StaticGraph graph;
    std::vector<VertexId> vertex;
    std::vector<HalfEdgeId> half;
    std::unordered_map<VertexId, int> local;
    std::unordered_map<HalfEdgeId, int> local_half;

    [[nodiscard]] bool is_gadget(int v) const { return !vertex[static_cast<std::size_t>(v)].valid(); }
};
[[nodiscard]] WheelGraph make_wheel_graph(const SyncPlanInstance& inst, std::span<const VertexId> vertices);
// Whole-instance wheel replacement; original ids are kept, gadget ids are fresh.
[[nodiscard]] Multigraph wheel_replace(const SyncPlanInstance& inst);

// Pole u of the bond that alone determines its rotation, with the branches
// of that bond. Branch i holds pole_halves[i] at u and partner_halves[i] at the partner.
struct BondPoles {
    VertexId pole, partner;
    std::vector<HalfEdgeId> pole_halves;
    std::vector<std::vector<HalfEdgeId>> partner_halves;
};

// Block structure of one or more components of an instance, computed on the
// wheel-replaced graph. SPQR trees and rigid embeddings are built on demand.
class ComponentStructure {
public:
    ComponentStructure(const SyncPlanInstance& inst, std::span<const VertexId> vertices);
    ~ComponentStructure();
    ComponentStructure(ComponentStructure&&) noexcept;
    ComponentStructure& operator=(ComponentStructure&&) noexcept;

    [[nodiscard]] const WheelGraph& wheel() const { return wheel_; }
    [[nodiscard]] bool planar() const;
    [[nodiscard]] bool is_cut(VertexId v) const;

    // Requires a P-vertex of degree >= 3 lying in one block, or a cut-vertex
    // meeting every block once; throws NonPlanarError.
    [[nodiscard]] PQTree embedding_tree(VertexId v) const;
    // Throws std::invalid_argument when the embedding tree of u is not trivial.
    [[nodiscard]] BondPoles bond_pole_bijections(VertexId u) const;

    // Rigid node holding the wheel of a Q-vertex, and whether its reference
    // embedding shows psi (true) or its reverse (false).
    struct RigidRef {
        int block = -1;
        int node = -1;
        bool agrees = true;
    };
    [[nodiscard]] std::optional<RigidRef> rigid_of_center(VertexId c) const;
    // Rigid nodes of all blocks as (block, node) pairs.
    [[nodiscard]] std::vector<std::array<int, 2>> rigid_nodes() const;

    // Planar embedding of the original vertices where rigid (block, node) is
    // mirrored iff flip returns true. Throws NonPlanarError.
    [[nodiscard]] RotationSystem embed(const std::function<bool(int, int)>& flip) const;

private:
    struct Block;
    Block& block(int b) const;
    int block_of_vertex(int local) const;

    const SyncPlanInstance* inst_;
    WheelGraph wheel_;
    Biconnected bic_;
    mutable std::vector<std::unique_ptr<Block>> blocks_;
    mutable int planar_ = -1;
};

[[nodiscard]] PQTree embedding_tree(const SyncPlanInstance& inst, VertexId v);
[[nodiscard]] PQTree embedding_tree(const Multigraph& g, VertexId v);

}  // namespace syncplan
