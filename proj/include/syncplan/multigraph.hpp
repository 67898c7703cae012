#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncplan/ids.hpp"

namespace syncplan {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loop-free multigraph with stable vertex, edge and half-edge identifiers.
//
// A half-edge belongs to one vertex and, while paired, to one edge. Surgery
// routines may temporarily leave half-edges unpaired (see unpair / pair);
// every public algorithm expects a fully paired graph.
class Multigraph {
public:
    VertexId add_vertex();
    void add_vertex(VertexId v);

    EdgeId add_edge(VertexId u, VertexId v);
    // Inserts an edge with caller-chosen identifiers (used by the JSON reader).
    EdgeId add_edge(EdgeId e, VertexId u, VertexId v, HalfEdgeId hu, HalfEdgeId hv);

    HalfEdgeId add_half(VertexId v);
    void add_half(HalfEdgeId h, VertexId v);
    EdgeId pair(HalfEdgeId a, HalfEdgeId b);
    void unpair(EdgeId e);
    void remove_half(HalfEdgeId h);
    void move_half(HalfEdgeId h, VertexId to);

    void remove_edge(EdgeId e);
    // Removes v together with all incident edges.
    void remove_vertex(VertexId v);

    [[nodiscard]] bool has_vertex(VertexId v) const { return vertex_alive_.contains(v) && vertex_alive_[v]; }
    [[nodiscard]] bool has_edge(EdgeId e) const { return edge_alive_.contains(e) && edge_alive_[e]; }
    [[nodiscard]] bool has_half(HalfEdgeId h) const { return half_vertex_.contains(h) && half_vertex_[h].valid(); }

    [[nodiscard]] VertexId vertex_of(HalfEdgeId h) const { return half_vertex_[h]; }
    [[nodiscard]] EdgeId edge_of(HalfEdgeId h) const { return half_edge_[h]; }
    [[nodiscard]] HalfEdgeId twin(HalfEdgeId h) const;
    [[nodiscard]] VertexId head(HalfEdgeId h) const { return vertex_of(twin(h)); }
    [[nodiscard]] std::array<HalfEdgeId, 2> halves(EdgeId e) const { return edge_halves_[e]; }
    [[nodiscard]] std::span<const HalfEdgeId> incident(VertexId v) const { return incidence_[v]; }
    [[nodiscard]] int degree(VertexId v) const { return static_cast<int>(incidence_[v].size()); }

    [[nodiscard]] const std::vector<VertexId>& vertices() const { return vertex_list_; }
    [[nodiscard]] const std::vector<EdgeId>& edges() const { return edge_list_; }
    [[nodiscard]] std::vector<VertexId> sorted_vertices() const;
    [[nodiscard]] std::vector<EdgeId> sorted_edges() const;
    [[nodiscard]] std::size_t num_vertices() const { return vertex_list_.size(); }
    [[nodiscard]] std::size_t num_edges() const { return edge_list_.size(); }

    [[nodiscard]] std::size_t vertex_bound() const { return static_cast<std::size_t>(next_vertex_); }
    [[nodiscard]] std::size_t edge_bound() const { return static_cast<std::size_t>(next_edge_); }
    [[nodiscard]] std::size_t half_bound() const { return static_cast<std::size_t>(next_half_); }

    // Raises the id counters so that fresh ids never collide with ids used elsewhere.
    void reserve_ids(std::size_t vertices, std::size_t edges, std::size_t halves);

    // Throws GraphError on loops, unpaired halves or broken cross references.
    void validate() const;

private:
    void attach(HalfEdgeId h, VertexId v);
    void detach(HalfEdgeId h);

    IdVector<VertexId, char> vertex_alive_{0};
    IdVector<VertexId, std::vector<HalfEdgeId>> incidence_;
    IdVector<VertexId, int> vertex_pos_{-1};
    std::vector<VertexId> vertex_list_;

    IdVector<EdgeId, char> edge_alive_{0};
    IdVector<EdgeId, std::array<HalfEdgeId, 2>> edge_halves_;
    IdVector<EdgeId, int> edge_pos_{-1};
    std::vector<EdgeId> edge_list_;

    IdVector<HalfEdgeId, VertexId> half_vertex_;
    IdVector<HalfEdgeId, EdgeId> half_edge_;
    IdVector<HalfEdgeId, int> half_pos_{-1};

    std::int32_t next_vertex_ = 0;
    std::int32_t next_edge_ = 0;
    std::int32_t next_half_ = 0;
};

using CyclicOrder = std::vector<HalfEdgeId>;

// Rotation per vertex; vertices without an entry have an empty rotation.
class RotationSystem {
public:
    CyclicOrder& operator[](VertexId v) { return rot_.ensure(v); }
    [[nodiscard]] const CyclicOrder& at(VertexId v) const {
        static const CyclicOrder empty;
        return rot_.contains(v) ? rot_[v] : empty;
    }
    void erase(VertexId v) {
        if (rot_.contains(v)) rot_[v].clear();
    }
    [[nodiscard]] std::size_t bound() const { return rot_.size(); }

    friend bool operator==(const RotationSystem& a, const RotationSystem& b);

private:
    IdVector<VertexId, CyclicOrder> rot_;
};

[[nodiscard]] bool is_rotation_system(const Multigraph& g, const RotationSystem& rs);
// Incidence-list order as rotation for every vertex.
[[nodiscard]] RotationSystem incidence_rotation(const Multigraph& g);
void reverse_all(const Multigraph& g, RotationSystem& rs);

// Cyclic-sequence helpers.
[[nodiscard]] CyclicOrder canonical_cyclic(std::span<const HalfEdgeId> seq);
[[nodiscard]] bool cyclic_equal(std::span<const HalfEdgeId> a, std::span<const HalfEdgeId> b);
[[nodiscard]] CyclicOrder reversed(std::span<const HalfEdgeId> seq);

struct Cut {
    std::vector<VertexId> side_x;
    std::vector<VertexId> side_y;

    [[nodiscard]] std::vector<EdgeId> cut_edges(const Multigraph& g) const;
};

[[nodiscard]] std::vector<std::vector<VertexId>> connected_components(const Multigraph& g);

}  // namespace syncplan
