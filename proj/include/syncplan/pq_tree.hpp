#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syncplan/multigraph.hpp"

namespace syncplan {

// Unrooted PQ-tree over half-edge labels. The adjacency list of a Q-node is
// its reference cyclic order; P-node adjacency order carries no meaning.
class PQTree {
public:
    enum class Kind : std::uint8_t { Leaf, P, Q };
    struct Node {
        Kind kind = Kind::Leaf;
        HalfEdgeId label;
        std::vector<int> adj;
    };

    PQTree() = default;
    explicit PQTree(std::vector<Node> nodes);

    static PQTree trivial(std::span<const HalfEdgeId> labels);
    static PQTree fixed_order(std::span<const HalfEdgeId> order);
    // Text form such as P(1,Q(2,3,4),5); integers are leaf labels.
    static PQTree parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool admits(std::span<const HalfEdgeId> order) const;
    [[nodiscard]] std::set<CyclicOrder> enumerate_orders() const;
    [[nodiscard]] bool is_trivial() const;
    [[nodiscard]] std::vector<HalfEdgeId> leaves() const;
    [[nodiscard]] int inner_count() const;
    [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
    [[nodiscard]] int leaf_node(HalfEdgeId label) const { return leaf_index_.at(label); }

private:
    std::vector<Node> nodes_;
    std::unordered_map<HalfEdgeId, int> leaf_index_;
};

// Inner nodes become vertices, inner-inner adjacencies become tree edges and
// every leaf names the inner vertex it hangs off.
struct TreeFragment {
    struct Slot {
        int tree_edge = -1;  // >= 0: tree edge index
        HalfEdgeId leaf;     // valid when tree_edge < 0
    };
    std::vector<PQTree::Kind> kinds;
    std::vector<std::array<int, 2>> tree_edges;
    std::vector<std::vector<Slot>> around;  // cyclic order per inner vertex
    std::unordered_map<HalfEdgeId, int> leaf_attachment;
};

[[nodiscard]] TreeFragment tree_to_graph_fragment(const PQTree& t);

}  // namespace syncplan
