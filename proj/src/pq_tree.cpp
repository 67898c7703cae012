#include "syncplan/pq_tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace syncplan {

PQTree::PQTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    std::size_t degree_sum = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        degree_sum += n.adj.size();
        if (n.kind == Kind::Leaf) {
            if (n.adj.size() != 1) throw std::invalid_argument("PQ-tree leaf must have degree 1");
            if (!leaf_index_.emplace(n.label, static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate PQ-tree leaf label");
        } else if (n.adj.size() < 3) {
            throw std::invalid_argument("PQ-tree inner node of degree < 3");
        }
        for (int j : n.adj) {
            const auto& back = nodes_.at(static_cast<std::size_t>(j)).adj;
            if (std::count(back.begin(), back.end(), static_cast<int>(i)) != 1)
                throw std::invalid_argument("PQ-tree adjacency is not symmetric");
        }
    }
    if (nodes_.empty() || degree_sum != 2 * (nodes_.size() - 1)) throw std::invalid_argument("PQ-tree is not a tree");
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : nodes_[static_cast<std::size_t>(v)].adj) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    if (count != nodes_.size()) throw std::invalid_argument("PQ-tree is not connected");
}

namespace {

PQTree single_inner(std::span<const HalfEdgeId> labels, PQTree::Kind kind) {
    if (labels.size() < 3) throw std::invalid_argument("PQ-tree needs at least 3 leaves");
    std::vector<PQTree::Node> nodes(labels.size() + 1);
    nodes[0].kind = kind;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        nodes[i + 1].kind = PQTree::Kind::Leaf;
        nodes[i + 1].label = labels[i];
        nodes[i + 1].adj = {0};
        nodes[0].adj.push_back(static_cast<int>(i + 1));
    }
    return PQTree(std::move(nodes));
}

}  // namespace

PQTree PQTree::trivial(std::span<const HalfEdgeId> labels) { return single_inner(labels, Kind::P); }

PQTree PQTree::fixed_order(std::span<const HalfEdgeId> order) { return single_inner(order, Kind::Q); }

PQTree PQTree::parse(std::string_view text) {
    std::vector<Node> nodes;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const char* what) {
        throw std::invalid_argument(std::string("PQ-tree text: ") + what + " at offset " + std::to_string(i));
    };
    std::function<int()> node = [&]() -> int {
        skip();
        if (i >= text.size()) fail("unexpected end");
        const int id = static_cast<int>(nodes.size());
        if (text[i] == 'P' || text[i] == 'Q') {
            nodes.push_back(Node{text[i] == 'P' ? Kind::P : Kind::Q, HalfEdgeId{}, {}});
            ++i;
            skip();
            if (i >= text.size() || text[i] != '(') fail("expected '('");
            ++i;
            while (true) {
                const int child = node();
                nodes[static_cast<std::size_t>(id)].adj.push_back(child);
                nodes[static_cast<std::size_t>(child)].adj.insert(nodes[static_cast<std::size_t>(child)].adj.begin(), id);
                skip();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < text.size() && text[i] == ')') {
                    ++i;
                    break;
                }
                fail("expected ',' or ')'");
            }
            return id;
        }
        std::size_t start = i;
        if (text[i] == '-') ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("expected leaf label");
        const long long value = std::stoll(std::string(text.substr(start, i - start)));
        if (value < 0 || value > std::numeric_limits<std::int32_t>::max()) fail("leaf label out of range");
        nodes.push_back(Node{Kind::Leaf, HalfEdgeId{static_cast<std::int32_t>(value)}, {}});
        return id;
    };
    node();
    skip();
    if (i != text.size()) fail("trailing characters");
    return PQTree(std::move(nodes));
}

std::string PQTree::to_string() const {
    int root = -1;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].kind != Kind::Leaf) {
            root = static_cast<int>(i);
            break;
        }
    }
    if (root < 0) throw std::logic_error("PQ-tree without inner node");
    std::ostringstream os;
    std::function<void(int, int)> emit = [&](int v, int parent) {
        const Node& n = nodes_[static_cast<std::size_t>(v)];
        if (n.kind == Kind::Leaf) {
            os << n.label.value;
            return;
        }
        os << (n.kind == Kind::P ? 'P' : 'Q') << '(';
        const std::size_t k = n.adj.size();
        std::size_t start = 0;
        if (parent >= 0) start = static_cast<std::size_t>(std::find(n.adj.begin(), n.adj.end(), parent) - n.adj.begin()) + 1;
        bool first = true;
        for (std::size_t j = 0; j < k; ++j) {
            const int w = n.adj[(start + j) % k];
            if (w == parent) continue;
            if (!first) os << ',';
            first = false;
            emit(w, v);
        }
        os << ')';
    };
    emit(root, -1);
    return os.str();
}

namespace {

// Rooted view: parent and a top-down order, starting from a leaf.
struct Rooted {
    std::vector<int> parent;
    std::vector<int> order;
};

Rooted root_at(const std::vector<PQTree::Node>& nodes, int root) {
    Rooted r;
    r.parent.assign(nodes.size(), -1);
    r.order.push_back(root);
    r.parent[static_cast<std::size_t>(root)] = root;
    for (std::size_t i = 0; i < r.order.size(); ++i) {
        const int v = r.order[i];
        for (int w : nodes[static_cast<std::size_t>(v)].adj) {
            if (r.parent[static_cast<std::size_t>(w)] == -1) {
                r.parent[static_cast<std::size_t>(w)] = v;
                r.order.push_back(w);
            }
        }
    }
    r.parent[static_cast<std::size_t>(root)] = -1;
    return r;
}

// Children in the cyclic order following the parent.
std::vector<int> children_after_parent(const PQTree::Node& n, int parent) {
    const std::size_t k = n.adj.size();
    const std::size_t start =
        static_cast<std::size_t>(std::find(n.adj.begin(), n.adj.end(), parent) - n.adj.begin()) + 1;
    std::vector<int> out;
    for (std::size_t j = 0; j + 1 < k; ++j) out.push_back(n.adj[(start + j) % k]);
    return out;
}

}  // namespace

bool PQTree::admits(std::span<const HalfEdgeId> order) const {
    if (order.size() != leaf_index_.size()) return false;
    std::vector<int> pos(nodes_.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto it = leaf_index_.find(order[i]);
        if (it == leaf_index_.end() || pos[static_cast<std::size_t>(it->second)] != -1) return false;
        pos[static_cast<std::size_t>(it->second)] = static_cast<int>(i);
    }
    const int root = leaf_index_.at(order[0]);
    Rooted r = root_at(nodes_, root);
    const auto n = nodes_.size();
    std::vector<int> lo(n, std::numeric_limits<int>::max()), hi(n, -1), cnt(n, 0);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        const auto v = static_cast<std::size_t>(*it);
        if (*it == root) continue;
        if (nodes_[v].kind == Kind::Leaf) {
            lo[v] = hi[v] = pos[v];
            cnt[v] = 1;
        }
        if (hi[v] - lo[v] + 1 != cnt[v]) return false;
        const auto p = static_cast<std::size_t>(r.parent[v]);
        lo[p] = std::min(lo[p], lo[v]);
        hi[p] = std::max(hi[p], hi[v]);
        cnt[p] += cnt[v];
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (nodes_[v].kind != Kind::Q) continue;
        std::vector<int> kids = children_after_parent(nodes_[v], r.parent[v]);
        std::vector<int> sorted = kids;
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return lo[static_cast<std::size_t>(a)] < lo[static_cast<std::size_t>(b)]; });
        if (sorted != kids) {
            std::reverse(kids.begin(), kids.end());
            if (sorted != kids) return false;
        }
    }
    return true;
}

std::set<CyclicOrder> PQTree::enumerate_orders() const {
    HalfEdgeId smallest = leaf_index_.begin()->first;
    for (auto& [label, idx] : leaf_index_) smallest = std::min(smallest, label);
    const int root = leaf_index_.at(smallest);

    std::function<std::vector<std::vector<HalfEdgeId>>(int, int)> gen = [&](int v, int parent) {
        const Node& n = nodes_[static_cast<std::size_t>(v)];
        if (n.kind == Kind::Leaf) return std::vector<std::vector<HalfEdgeId>>{{n.label}};
        std::vector<int> kids = children_after_parent(n, parent);
        std::vector<std::vector<int>> arrangements;
        if (n.kind == Kind::Q) {
            arrangements.push_back(kids);
            arrangements.emplace_back(kids.rbegin(), kids.rend());
        } else {
            std::sort(kids.begin(), kids.end());
            do {
                arrangements.push_back(kids);
            } while (std::next_permutation(kids.begin(), kids.end()));
        }
        std::vector<std::vector<HalfEdgeId>> out;
        for (const auto& arr : arrangements) {
            std::vector<std::vector<HalfEdgeId>> partial{{}};
            for (int c : arr) {
                auto sub = gen(c, v);
                std::vector<std::vector<HalfEdgeId>> next;
                for (const auto& pre : partial) {
                    for (const auto& s : sub) {
                        auto joined = pre;
                        joined.insert(joined.end(), s.begin(), s.end());
                        next.push_back(std::move(joined));
                    }
                }
                partial = std::move(next);
            }
            out.insert(out.end(), partial.begin(), partial.end());
        }
        return out;
    };
    std::set<CyclicOrder> result;
    const int top = nodes_[static_cast<std::size_t>(root)].adj[0];
    for (auto& seq : gen(top, root)) {
        CyclicOrder cyc{smallest};
        cyc.insert(cyc.end(), seq.begin(), seq.end());
        result.insert(canonical_cyclic(cyc));
    }
    return result;
}

bool PQTree::is_trivial() const {
    int inner = 0;
    bool p = false;
    for (const Node& n : nodes_) {
        if (n.kind != Kind::Leaf) {
            ++inner;
            p = n.kind == Kind::P;
        }
    }
    return inner == 1 && p;
}

std::vector<HalfEdgeId> PQTree::leaves() const {
    std::vector<HalfEdgeId> out;
    for (const Node& n : nodes_) {
        if (n.kind == Kind::Leaf) out.push_back(n.label);
    }
    return out;
}

int PQTree::inner_count() const {
    return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind != Kind::Leaf; }));
}

TreeFragment tree_to_graph_fragment(const PQTree& t) {
    TreeFragment f;
    const auto& nodes = t.nodes();
    std::vector<int> inner_index(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind == PQTree::Kind::Leaf) continue;
        inner_index[i] = static_cast<int>(f.kinds.size());
        f.kinds.push_back(nodes[i].kind);
    }
    f.around.resize(f.kinds.size());
    std::unordered_map<long long, int> edge_of_pair;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int a = inner_index[i];
        if (a < 0) continue;
        for (int j : nodes[i].adj) {
            const auto& nb = nodes[static_cast<std::size_t>(j)];
            TreeFragment::Slot slot;
            if (nb.kind == PQTree::Kind::Leaf) {
                slot.leaf = nb.label;
                f.leaf_attachment[nb.label] = a;
            } else {
                const int b = inner_index[static_cast<std::size_t>(j)];
                const long long key = static_cast<long long>(std::min(a, b)) * (1LL << 32) + std::max(a, b);
                auto it = edge_of_pair.find(key);
                if (it == edge_of_pair.end()) {
                    it = edge_of_pair.emplace(key, static_cast<int>(f.tree_edges.size())).first;
                    f.tree_edges.push_back({std::min(a, b), std::max(a, b)});
                }
                slot.tree_edge = it->second;
            }
            f.around[static_cast<std::size_t>(a)].push_back(slot);
        }
    }
    return f;
}

}  // namespace syncplan
