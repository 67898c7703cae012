#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "syncplan/multigraph.hpp"
#include "syncplan/static_graph.hpp"

namespace syncplan {

struct FaceTrace {
    std::vector<std::vector<HalfEdgeId>> faces;
    int genus = 0;
};

// Face successor of h is succ at head(h) of twin(h).
[[nodiscard]] FaceTrace trace_faces(const Multigraph& g, const RotationSystem& rs);
[[nodiscard]] int genus(const Multigraph& g, const RotationSystem& rs);
[[nodiscard]] std::optional<RotationSystem> planar_embed(const Multigraph& g);

// Static copy of (a subset of) a multigraph with maps back to global identifiers.
struct StaticView {
    StaticGraph graph;
    std::vector<VertexId> vertex;
    std::vector<HalfEdgeId> half;
    std::unordered_map<VertexId, int> local;
};
[[nodiscard]] StaticView make_static(const Multigraph& g, std::span<const VertexId> vertices);
[[nodiscard]] StaticView make_static(const Multigraph& g);

using HalfEdgePairs = std::vector<std::pair<HalfEdgeId, HalfEdgeId>>;

struct SplitResult {
    Multigraph g1;  // side X plus x; other components of g stay here too
    Multigraph g2;  // side Y plus y
    VertexId x, y;
    HalfEdgePairs phi_xy;  // half at x -> half at y
};
[[nodiscard]] SplitResult split_at_cut(const Multigraph& g, const Cut& c);
[[nodiscard]] Multigraph join_at_vertices(const Multigraph& g1, VertexId x, const Multigraph& g2, VertexId y,
                                          const HalfEdgePairs& phi_xy);

struct Contraction {
    Multigraph graph;
    RotationSystem rotation;
    VertexId v;
};
[[nodiscard]] Contraction contract_connected_in_embedding(const Multigraph& g, const RotationSystem& rs,
                                                          std::span<const VertexId> s);

struct BipartiteSplit {
    Contraction contract_b;  // class A kept, class B contracted to x
    Contraction contract_a;  // class B kept, class A contracted to y
    HalfEdgePairs phi_xy;
};
[[nodiscard]] BipartiteSplit split_bipartite_embedding(const Multigraph& g, const RotationSystem& rs);

// Rotations of a region stored as circular linked lists, so chords can be
// spliced in while walking.
class EmbeddedPatch {
public:
    void add_vertex(VertexId v, std::span<const HalfEdgeId> rotation);
    void set_twin(HalfEdgeId a, HalfEdgeId b);
    void insert_before(HalfEdgeId anchor, HalfEdgeId h);
    void insert_after(HalfEdgeId anchor, HalfEdgeId h);

    [[nodiscard]] bool contains(HalfEdgeId h) const { return links_.count(h) != 0; }
    [[nodiscard]] HalfEdgeId succ(HalfEdgeId h) const { return links_.at(h).next; }
    [[nodiscard]] VertexId owner(HalfEdgeId h) const { return links_.at(h).owner; }
    [[nodiscard]] std::optional<HalfEdgeId> twin(HalfEdgeId h) const;
    [[nodiscard]] CyclicOrder rotation(VertexId v) const;

    // Boundary order obtained by contracting `region` along the spanning tree
    // formed by the `tree` halves; halves in `skip` vanish.
    [[nodiscard]] CyclicOrder contract(VertexId start, const std::unordered_set<HalfEdgeId>& tree,
                                       const std::unordered_set<HalfEdgeId>& skip) const;

private:
    struct Link {
        HalfEdgeId prev, next, twin;
        VertexId owner;
    };
    std::unordered_map<HalfEdgeId, Link> links_;
    std::unordered_map<VertexId, HalfEdgeId> first_;
};

// Contracts class `b_side` of a planar bipartite patch (twins known for all
// A-B halves) into one vertex and returns its rotation over the B-side halves.
// Same-class chords are added at corners of A-vertices until B is connected
// per component; components are concatenated in order of their smallest B vertex.
[[nodiscard]] CyclicOrder contract_bipartite_class(const EmbeddedPatch& patch, std::span<const VertexId> a_side,
                                                   std::span<const VertexId> b_side, std::int32_t fresh_half);

}  // namespace syncplan
