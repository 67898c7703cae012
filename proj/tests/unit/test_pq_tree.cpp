#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "syncplan/pq_tree.hpp"

using namespace syncplan;
using namespace syncplan::testing;

namespace {

std::vector<HalfEdgeId> labels(std::initializer_list<int> xs) {
    std::vector<HalfEdgeId> out;
    for (int x : xs) out.push_back(half(x));
    return out;
}

// All cyclic orders of the leaves, first leaf fixed.
std::vector<CyclicOrder> all_cyclic(std::vector<HalfEdgeId> ls) {
    std::sort(ls.begin(), ls.end());
    std::vector<CyclicOrder> out;
    do {
        out.push_back(ls);
    } while (std::next_permutation(ls.begin() + 1, ls.end()));
    return out;
}

void check_admits_matches_enumeration(const PQTree& t) {
    auto set = t.enumerate_orders();
    for (const auto& o : all_cyclic(t.leaves())) CHECK(t.admits(o) == (set.count(canonical_cyclic(o)) == 1));
    for (const auto& o : set) CHECK(set.count(canonical_cyclic(reversed(o))) == 1);
}

}  // namespace

TEST_CASE("trivial tree") {
    auto t = PQTree::trivial(labels({1, 2, 3, 4}));
    CHECK(t.is_trivial());
    CHECK(t.enumerate_orders().size() == 6);
    CHECK(t.admits(labels({1, 2, 3, 4})));
    CHECK(t.admits(labels({1, 3, 2, 4})));
    CHECK_THROWS((void)PQTree::trivial(labels({1, 2})));
}

TEST_CASE("fixed order tree") {
    auto t = PQTree::fixed_order(labels({1, 2, 3, 4}));
    CHECK_FALSE(t.is_trivial());
    CHECK(t.admits(labels({1, 2, 3, 4})));
    CHECK(t.admits(labels({4, 3, 2, 1})));
    CHECK(t.admits(labels({3, 4, 1, 2})));
    CHECK_FALSE(t.admits(labels({1, 3, 2, 4})));
    CHECK(t.enumerate_orders().size() == 2);
}

TEST_CASE("P-root with Q-children") {
    // Two groups {1,2} and {3,4} hanging off a P-node of degree 3 with leaf 5.
    auto t = PQTree::parse("P(Q(1,2,6),Q(3,4,7),5)");
    CHECK(t.admits(labels({1, 2, 6, 3, 4, 7, 5})));
    CHECK_FALSE(t.admits(labels({1, 3, 2, 6, 4, 7, 5})));
    check_admits_matches_enumeration(t);
    CHECK(t.enumerate_orders().size() == 2 * 2 * 2);
}

TEST_CASE("text round trip") {
    for (const char* s : {"P(1,Q(2,3,4),5)", "Q(1,2,P(3,4,5))", "P(1,2,3,4)", "Q(P(1,2,3),Q(4,5,6),7)"}) {
        auto t = PQTree::parse(s);
        CHECK(t.to_string() == s);
        check_admits_matches_enumeration(t);
    }
    CHECK_THROWS((void)PQTree::parse("P(1,2"));
    CHECK_THROWS((void)PQTree::parse("P(1,1,2)"));
    CHECK_THROWS((void)PQTree::parse("P(1,2)"));
    CHECK_THROWS((void)PQTree::parse("X"));
}

TEST_CASE("P-node of degree 3 with a Q-child over three leaves") {
    auto t = PQTree::parse("P(Q(1,2,3),4,5)");
    check_admits_matches_enumeration(t);
    // P of degree 3 contributes 2, Q contributes 2.
    CHECK(t.enumerate_orders().size() == 4);
}

TEST_CASE("random trees: admits agrees with enumeration") {
    std::mt19937 rng(7);
    for (int round = 0; round < 60; ++round) {
        // Grow a random tree by repeatedly expanding leaves.
        std::vector<PQTree::Node> nodes;
        nodes.push_back({rng() % 2 ? PQTree::Kind::P : PQTree::Kind::Q, {}, {}});
        int label = 0;
        for (int k = 0; k < 3; ++k) {
            nodes.push_back({PQTree::Kind::Leaf, half(label++), {0}});
            nodes[0].adj.push_back(static_cast<int>(nodes.size() - 1));
        }
        const int leaves_wanted = 3 + static_cast<int>(rng() % 5);
        while (label < leaves_wanted) {
            std::vector<int> leaf_ids;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (nodes[i].kind == PQTree::Kind::Leaf) leaf_ids.push_back(static_cast<int>(i));
            const int l = leaf_ids[rng() % leaf_ids.size()];
            const int add = std::min(leaves_wanted - label + 1, 2 + static_cast<int>(rng() % 2));
            auto& node = nodes[static_cast<std::size_t>(l)];
            node.kind = rng() % 2 ? PQTree::Kind::P : PQTree::Kind::Q;
            node.label = {};
            for (int k = 0; k < add; ++k) {
                nodes.push_back({PQTree::Kind::Leaf, half(label++), {l}});
                nodes[static_cast<std::size_t>(l)].adj.push_back(static_cast<int>(nodes.size() - 1));
            }
        }
        PQTree t(nodes);
        check_admits_matches_enumeration(t);
    }
}

TEST_CASE("tree_to_graph_fragment") {
    auto q = PQTree::fixed_order(labels({1, 2, 3, 4}));
    auto f = tree_to_graph_fragment(q);
    REQUIRE(f.kinds.size() == 1);
    CHECK(f.kinds[0] == PQTree::Kind::Q);
    CHECK(f.tree_edges.empty());
    REQUIRE(f.around[0].size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(f.around[0][static_cast<std::size_t>(i)].leaf == half(i + 1));

    auto t = PQTree::parse("P(Q(1,2,P(3,4,5)),6,7)");
    auto g = tree_to_graph_fragment(t);
    CHECK(g.kinds.size() == 3);
    CHECK(g.tree_edges.size() == 2);
    CHECK(g.leaf_attachment.size() == 7);
    int degree_sum = 0;
    for (auto& a : g.around) degree_sum += static_cast<int>(a.size());
    // leaves + twice the inner edges
    CHECK(degree_sum == 7 + 2 * 2);
}
