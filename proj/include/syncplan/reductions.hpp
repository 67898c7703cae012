#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "syncplan/instance.hpp"
#include "syncplan/pq_tree.hpp"

namespace syncplan {

// Where the vertices and halves of one source graph went in a generated
// instance; used to read source embeddings off instance embeddings.
struct SourceMap {
    std::unordered_map<VertexId, VertexId> vertex;
    std::unordered_map<HalfEdgeId, HalfEdgeId> half;  // source half -> instance half
    bool mirrored = false;                             // reverse rotations when lifting

    [[nodiscard]] RotationSystem lift(const Multigraph& source, const RotationSystem& rs) const;
};

struct Reduction {
    SyncPlanInstance instance;
    std::vector<SourceMap> sources;  // one per source graph
    std::vector<VertexId> padding;   // degree-1 vertices added to match pipe degrees
};

// Cluster 0 is the root and contains every vertex not listed elsewhere.
struct ClusteredGraph {
    struct Cluster {
        std::vector<VertexId> vertices;  // vertices directly in this cluster
        std::vector<int> children;
    };
    Multigraph g;
    std::vector<Cluster> clusters{Cluster{}};

    // Leaf cluster of every vertex; throws std::invalid_argument on malformed input.
    [[nodiscard]] IdVector<VertexId, int> leaf_cluster() const;
    // Vertex set of every cluster including its descendants.
    [[nodiscard]] std::vector<std::vector<VertexId>> cluster_vertices() const;
    [[nodiscard]] std::vector<int> parents() const;
};

// Skeleton of one cluster: the graph with child clusters and the outside
// (for non-root clusters) contracted to virtual vertices.
struct CDSkeleton {
    int cluster = -1;
    Multigraph g;
    std::vector<VertexId> own;  // vertices of the cluster itself
    std::unordered_map<VertexId, VertexId> from_source;
    std::vector<std::pair<int, VertexId>> child_virtual;  // (child cluster, vertex)
    VertexId parent_virtual;                               // invalid for the root
    std::unordered_map<HalfEdgeId, EdgeId> source_edge;    // skeleton half -> source edge
};
struct CDTree {
    std::vector<CDSkeleton> skeletons;  // indexed by cluster
};
[[nodiscard]] CDTree build_cd_tree(const ClusteredGraph& cg);

[[nodiscard]] Reduction clustered_to_syncplan(const ClusteredGraph& cg);

// Shared vertices and edges carry the same ids in both graphs; every other
// id is private to its graph. The shared graph must be connected.
struct SefeInstance {
    Multigraph g1, g2;
    [[nodiscard]] std::vector<VertexId> shared_vertices() const;
    [[nodiscard]] std::vector<EdgeId> shared_edges() const;
};
// Lifts to (E1, E2) with E2 already un-mirrored.
[[nodiscard]] Reduction sefe_to_syncplan(const SefeInstance& s);

// Per constrained vertex a PQ-tree over some of its half-edges.
struct PQConstrainedInstance {
    Multigraph g;
    std::vector<std::pair<VertexId, PQTree>> constraints;
};
[[nodiscard]] Reduction pqconstrained_to_syncplan(const PQConstrainedInstance& p);

// One graph per atom; every pair links a virtual vertex of one atom to one of
// another (or the same) atom through a bijection of their halves.
struct AtomicInstance {
    struct Pair {
        int atom_a = -1, atom_b = -1;
        VertexId a, b;
        HalfEdgeMap map;  // half at a -> half at b
    };
    std::vector<Multigraph> atoms;
    std::vector<Pair> pairs;
};
[[nodiscard]] Reduction atomic_to_syncplan(const AtomicInstance& a);

// Definitional checks of lifted witnesses.
[[nodiscard]] bool is_cplanar_embedding(const ClusteredGraph& cg, const RotationSystem& rs);
[[nodiscard]] bool is_sefe_pair(const SefeInstance& s, const RotationSystem& e1, const RotationSystem& e2);
[[nodiscard]] bool satisfies_pq_constraints(const PQConstrainedInstance& p, const RotationSystem& rs);

// JSON formats.
[[nodiscard]] ClusteredGraph clustered_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json clustered_to_json(const ClusteredGraph& cg);
[[nodiscard]] SefeInstance sefe_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json sefe_to_json(const SefeInstance& s);
[[nodiscard]] PQConstrainedInstance pqconstrained_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json pqconstrained_to_json(const PQConstrainedInstance& p);
[[nodiscard]] AtomicInstance atomic_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json atomic_to_json(const AtomicInstance& a);

}  // namespace syncplan
