#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "syncplan/decomposition.hpp"
#include "syncplan/embedding.hpp"
#include "syncplan/instance.hpp"
#include "syncplan/pq_tree.hpp"

namespace syncplan {

enum class OpTag : std::uint8_t { ConvertSmall, EncapsulateAndJoin, PropagatePQ, SimplifyMatchingI, SimplifyMatchingII, SimplifyMatchingIII };
[[nodiscard]] std::string_view to_string(OpTag tag);

// One applied operation, with what is needed to map an embedding of the
// result back to an embedding of the instance before it.
struct OpRecord {
    OpTag tag = OpTag::ConvertSmall;
    VertexId u, v;  // pipe endpoints; for SimplifyMatching u and its bond partner
    std::vector<int> removed_pipes;
    std::vector<int> created_pipes;
    std::vector<int> created_cells;
    std::vector<VertexId> created_vertices;
    std::vector<VertexId> removed_vertices;
    ConvertSmallResult small;  // ConvertSmall applied to the pipes this operation created

    HalfEdgeMap phi_uv;  // map of the removed pipe at u (EncapsulateAndJoin, SimplifyMatching-ii)

    // EncapsulateAndJoin: rays of the two multi-stars and, for every half at
    // a v-ray, the original half of u it stands for.
    std::vector<VertexId> u_rays, v_rays;
    HalfEdgePairs joined;  // (half at a u-ray, half at a v-ray) per joined edge
    HalfEdgeMap ray_to_u;

    // PropagatePQ: inner vertices of both trees and the halves of their tree
    // edges, listed pairwise.
    std::vector<VertexId> tree_u, tree_v;
    std::vector<HalfEdgeId> tree_halves_u, tree_halves_v;

    // SimplifyMatching: the bond branches at u and at its partner, and the
    // pipe partners u' of u and v' of v with their maps into u and v.
    std::vector<HalfEdgeId> pole_halves;
    std::vector<std::vector<HalfEdgeId>> partner_halves;
    VertexId u_mate, v_mate;
    HalfEdgeMap phi_mate_u, phi_mate_v;
};

[[nodiscard]] nlohmann::json op_record_to_json(const OpRecord& rec);

// Both endpoints of pipe p must be cut-vertices. Throws std::invalid_argument.
OpRecord encapsulate_and_join(SyncPlanInstance& inst, int p);

// u is matched and tree is its non-trivial embedding tree. Throws std::invalid_argument.
OpRecord propagate_pq(SyncPlanInstance& inst, VertexId u, const PQTree& tree);

// u is matched, its embedding tree is trivial and poles describes its bond.
// Returns nullopt when the instance is a no-instance (toroidal case with
// non-uniform cycles); the instance is left unchanged then.
std::optional<OpRecord> simplify_matching(SyncPlanInstance& inst, VertexId u, const BondPoles& poles);

// Cycles of a permutation given as a map, each starting at its smallest element.
[[nodiscard]] std::vector<std::vector<HalfEdgeId>> permutation_cycles(const HalfEdgeMap& pi);
[[nodiscard]] bool uniform_cycles(const HalfEdgeMap& pi);
// Cyclic order sigma with pi(sigma) == sigma; requires uniform cycles.
[[nodiscard]] CyclicOrder invariant_order(const HalfEdgeMap& pi);

// Turns an embedding of the instance after rec into one of the instance
// before it. fresh_half must exceed every half id in use.
void undo_embedding(const OpRecord& rec, RotationSystem& rs, std::int32_t fresh_half);

}  // namespace syncplan
