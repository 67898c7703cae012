#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "syncplan/static_graph.hpp"

namespace syncplan {

// Triconnected component decomposition of a biconnected multigraph.
// Edge ids below num_real are the input edges; the others are virtual and
// each one occurs in exactly two nodes.
struct SPQRTree {
    enum class Kind : std::uint8_t { Bond, Polygon, Rigid };
    struct Node {
        Kind kind = Kind::Rigid;
        std::vector<int> edges;
    };

    int num_real = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<Node> nodes;
    std::vector<std::array<int, 2>> virtual_nodes;  // indexed by edge id - num_real
    std::vector<int> node_of_real;

    [[nodiscard]] bool is_virtual(int e) const { return e >= num_real; }
    [[nodiscard]] int other_node(int virt, int node) const {
        const auto& p = virtual_nodes[static_cast<std::size_t>(virt - num_real)];
        return p[0] == node ? p[1] : p[0];
    }
    // Distinct skeleton vertices of a node, in first-occurrence order.
    [[nodiscard]] std::vector<int> vertices(int node) const;
};

// Requires g biconnected with at least two vertices. Throws std::invalid_argument otherwise.
[[nodiscard]] SPQRTree spqr_tree(const StaticGraph& g);

}  // namespace syncplan
