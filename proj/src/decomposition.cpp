#include "syncplan/decomposition.hpp"

#include <algorithm>
#include <set>
#include <deque>

#include "syncplan/embedding.hpp"

namespace syncplan {

BlockCutTree block_cut_tree(const Multigraph& g) {
    StaticView view = make_static(g);
    Biconnected bic = biconnected_components(view.graph);
    BlockCutTree out;
    std::vector<int> cut_index(static_cast<std::size_t>(view.graph.n), -1);
    for (int v = 0; v < view.graph.n; ++v) {
        if (!bic.is_cut[static_cast<std::size_t>(v)]) continue;
        cut_index[static_cast<std::size_t>(v)] = static_cast<int>(out.cut_vertices.size());
        out.cut_vertices.push_back(view.vertex[static_cast<std::size_t>(v)]);
    }
    for (std::size_t b = 0; b < bic.blocks.size(); ++b) {
        auto& edges = out.blocks.emplace_back();
        std::vector<int> cuts;
        for (int e : bic.blocks[b]) {
            edges.push_back(g.edge_of(view.half[static_cast<std::size_t>(2 * e)]));
            for (int x : view.graph.ends[static_cast<std::size_t>(e)]) {
                const int c = cut_index[static_cast<std::size_t>(x)];
                if (c >= 0 && std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
            }
        }
        std::sort(edges.begin(), edges.end());
        for (int c : cuts) out.links.push_back({static_cast<int>(b), c});
    }
    return out;
}

WheelGraph make_wheel_graph(const SyncPlanInstance& inst, std::span<const VertexId> vertices) {
    const Multigraph& g = inst.g;
    WheelGraph w;
    auto add_vertex = [&](VertexId v) {
        const int i = w.graph.add_vertex();
        w.vertex.push_back(v);
        if (v.valid()) w.local.emplace(v, i);
        return i;
    };
    auto add_edge = [&](int a, HalfEdgeId ha, int b, HalfEdgeId hb) {
        const int e = w.graph.add_edge(a, b);
        w.half.push_back(ha);
        w.half.push_back(hb);
        if (ha.valid()) w.local_half.emplace(ha, 2 * e);
        if (hb.valid()) w.local_half.emplace(hb, 2 * e + 1);
    };
    auto wheeled = [&](VertexId v) { return inst.kind(v) == VertexKind::Q && g.degree(v) >= 3; };

    for (VertexId v : vertices) add_vertex(v);
    std::unordered_map<HalfEdgeId, int> sub;
    for (VertexId v : vertices) {
        if (!wheeled(v)) continue;
        for (HalfEdgeId h : inst.psi(v)) sub.emplace(h, add_vertex(VertexId{}));
    }
    for (VertexId v : vertices) {
        for (HalfEdgeId h : g.incident(v)) {
            const HalfEdgeId t = g.twin(h);
            if (t < h) continue;
            const VertexId x = g.vertex_of(t);
            auto it = w.local.find(x);
            if (it == w.local.end()) throw std::logic_error("make_wheel_graph: vertex set is not closed");
            int a = w.local.at(v), b = it->second;
            HalfEdgeId ha = h, hb = t;
            if (wheeled(v)) {
                add_edge(a, h, sub.at(h), HalfEdgeId{});
                a = sub.at(h);
                ha = HalfEdgeId{};
            }
            if (wheeled(x)) {
                add_edge(sub.at(t), HalfEdgeId{}, b, t);
                b = sub.at(t);
                hb = HalfEdgeId{};
            }
            add_edge(a, ha, b, hb);
        }
    }
    for (VertexId v : vertices) {
        if (!wheeled(v)) continue;
        const auto& psi = inst.psi(v);
        for (std::size_t i = 0; i < psi.size(); ++i) add_edge(sub.at(psi[i]), HalfEdgeId{}, sub.at(psi[(i + 1) % psi.size()]), HalfEdgeId{});
    }
    return w;
}

Multigraph wheel_replace(const SyncPlanInstance& inst) {
    const Multigraph& g = inst.g;
    const auto vs = g.sorted_vertices();
    WheelGraph w = make_wheel_graph(inst, vs);
    Multigraph out;
    std::vector<VertexId> id(static_cast<std::size_t>(w.graph.n));
    auto next_vertex = static_cast<std::int32_t>(g.vertex_bound());
    for (int v = 0; v < w.graph.n; ++v) {
        id[static_cast<std::size_t>(v)] = w.is_gadget(v) ? VertexId{next_vertex++} : w.vertex[static_cast<std::size_t>(v)];
        out.add_vertex(id[static_cast<std::size_t>(v)]);
    }
    auto next_half = static_cast<std::int32_t>(g.half_bound());
    auto next_edge = static_cast<std::int32_t>(g.edge_bound());
    for (int e = 0; e < w.graph.m(); ++e) {
        HalfEdgeId a = w.half[static_cast<std::size_t>(2 * e)], b = w.half[static_cast<std::size_t>(2 * e + 1)];
        const bool original = a.valid() && b.valid() && g.twin(a) == b;
        EdgeId eid = original ? g.edge_of(a) : EdgeId{next_edge++};
        if (!a.valid()) a = HalfEdgeId{next_half++};
        if (!b.valid()) b = HalfEdgeId{next_half++};
        auto [x, y] = w.graph.ends[static_cast<std::size_t>(e)];
        out.add_edge(eid, id[static_cast<std::size_t>(x)], id[static_cast<std::size_t>(y)], a, b);
    }
    return out;
}

// Block of the wheel graph with its SPQR tree and rigid embeddings.
struct ComponentStructure::Block {
    StaticGraph g;
    std::vector<int> wheel_vertex;
    std::vector<int> wheel_edge;
    std::unordered_map<int, int> local;
    std::optional<SPQRTree> spqr;
    std::unordered_map<int, std::unordered_map<int, std::vector<int>>> rigid_rot;

    // Block half of x on block edge e.
    [[nodiscard]] int half_at(int e, int x) const { return g.ends[static_cast<std::size_t>(e)][0] == x ? 2 * e : 2 * e + 1; }

    [[nodiscard]] std::vector<int> edges_at(int node, int x) const {
        std::vector<int> out;
        for (int e : spqr->nodes[static_cast<std::size_t>(node)].edges) {
            const auto& ends = spqr->ends[static_cast<std::size_t>(e)];
            if (ends[0] == x || ends[1] == x) out.push_back(e);
        }
        return out;
    }

    // Nearest bond or rigid node whose skeleton contains x, reached through polygons.
    [[nodiscard]] int start_node(int x) const {
        const auto& t = *spqr;
        const int e0 = StaticGraph::edge_of(g.inc[static_cast<std::size_t>(x)].front());
        std::deque<int> queue{t.node_of_real[static_cast<std::size_t>(e0)]};
        std::vector<char> seen(t.nodes.size(), 0);
        seen[static_cast<std::size_t>(queue.front())] = 1;
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            if (t.nodes[static_cast<std::size_t>(n)].kind != SPQRTree::Kind::Polygon) return n;
            for (int e : edges_at(n, x)) {
                if (!t.is_virtual(e)) continue;
                const int m = t.other_node(e, n);
                if (!seen[static_cast<std::size_t>(m)]) {
                    seen[static_cast<std::size_t>(m)] = 1;
                    queue.push_back(m);
                }
            }
        }
        throw std::logic_error("no bond or rigid node at vertex");
    }

    const std::vector<int>& rigid_rotation(int node, int x) {
        auto it = rigid_rot.find(node);
        if (it == rigid_rot.end()) {
            const auto& sk = spqr->nodes[static_cast<std::size_t>(node)];
            const auto verts = spqr->vertices(node);
            std::unordered_map<int, int> loc;
            StaticGraph s;
            for (int v : verts) loc.emplace(v, s.add_vertex());
            for (int e : sk.edges) {
                const auto& ends = spqr->ends[static_cast<std::size_t>(e)];
                s.add_edge(loc.at(ends[0]), loc.at(ends[1]));
            }
            auto rot = planar_rotation(s);
            if (!rot) throw NonPlanarError("rigid component is not planar");
            std::unordered_map<int, std::vector<int>> per;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                auto& r = per[verts[i]];
                for (int h : (*rot)[i]) r.push_back(sk.edges[static_cast<std::size_t>(h >> 1)]);
            }
            it = rigid_rot.emplace(node, std::move(per)).first;
        }
        return it->second.at(x);
    }

    // Skeleton rotation at x as skeleton edge ids.
    std::vector<int> rotation(int node, int x, bool flip) {
        const auto& sk = spqr->nodes[static_cast<std::size_t>(node)];
        switch (sk.kind) {
            case SPQRTree::Kind::Bond: {
                std::vector<int> r = sk.edges;
                if (spqr->ends[static_cast<std::size_t>(sk.edges[0])][0] != x) std::reverse(r.begin(), r.end());
                return r;
            }
            case SPQRTree::Kind::Polygon:
                return edges_at(node, x);
            case SPQRTree::Kind::Rigid: {
                std::vector<int> r = rigid_rotation(node, x);
                if (flip) std::reverse(r.begin(), r.end());
                return r;
            }
        }
        return {};
    }
};

ComponentStructure::ComponentStructure(const SyncPlanInstance& inst, std::span<const VertexId> vertices)
    : inst_(&inst), wheel_(make_wheel_graph(inst, vertices)), bic_(biconnected_components(wheel_.graph)) {
    blocks_.resize(bic_.blocks.size());
}
ComponentStructure::~ComponentStructure() = default;
ComponentStructure::ComponentStructure(ComponentStructure&&) noexcept = default;
ComponentStructure& ComponentStructure::operator=(ComponentStructure&&) noexcept = default;

bool ComponentStructure::planar() const {
    if (planar_ < 0) planar_ = planar_rotation(wheel_.graph).has_value() ? 1 : 0;
    return planar_ == 1;
}

bool ComponentStructure::is_cut(VertexId v) const { return bic_.is_cut[static_cast<std::size_t>(wheel_.local.at(v))]; }

int ComponentStructure::block_of_vertex(int local) const {
    const auto& inc = wheel_.graph.inc[static_cast<std::size_t>(local)];
    if (inc.empty()) return -1;
    return bic_.block_of_edge[static_cast<std::size_t>(StaticGraph::edge_of(inc.front()))];
}

ComponentStructure::Block& ComponentStructure::block(int b) const {
    auto& slot = blocks_[static_cast<std::size_t>(b)];
    if (!slot) {
        slot = std::make_unique<Block>();
        Block& B = *slot;
        for (int e : bic_.blocks[static_cast<std::size_t>(b)]) {
            int ends[2];
            for (int k = 0; k < 2; ++k) {
                const int x = wheel_.graph.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
                auto it = B.local.find(x);
                if (it == B.local.end()) {
                    it = B.local.emplace(x, B.g.add_vertex()).first;
                    B.wheel_vertex.push_back(x);
                }
                ends[k] = it->second;
            }
            B.g.add_edge(ends[0], ends[1]);
            B.wheel_edge.push_back(e);
        }
        if (B.g.m() >= 2) B.spqr = spqr_tree(B.g);
    }
    return *slot;
}

PQTree ComponentStructure::embedding_tree(VertexId v) const {
    if (!planar()) throw NonPlanarError("component is not planar");
    const int lv = wheel_.local.at(v);
    if (wheel_.graph.degree(lv) < 3) throw std::invalid_argument("embedding_tree: degree below 3");
    if (bic_.is_cut[static_cast<std::size_t>(lv)]) {
        // Free only if no block meets v twice, e.g. the center of a star.
        std::set<int> seen;
        std::vector<HalfEdgeId> labels;
        for (int h : wheel_.graph.inc[static_cast<std::size_t>(lv)]) {
            if (!seen.insert(bic_.block_of_edge[static_cast<std::size_t>(h >> 1)]).second)
                throw std::invalid_argument("embedding_tree: vertex is a cut-vertex");
            labels.push_back(wheel_.half[static_cast<std::size_t>(h)]);
        }
        return PQTree::trivial(labels);
    }
    Block& B = block(block_of_vertex(lv));
    const int x = B.local.at(lv);
    const SPQRTree& t = *B.spqr;

    auto label = [&](int e) {
        const int bh = B.half_at(e, x);
        const int wh = 2 * B.wheel_edge[static_cast<std::size_t>(bh >> 1)] + (bh & 1);
        return wheel_.half[static_cast<std::size_t>(wh)];
    };

    const int start = B.start_node(x);

    std::vector<PQTree::Node> nodes;
    std::function<int(int, int, int)> through_edge;
    std::function<int(int, int, int)> build = [&](int n, int via, int parent) -> int {
        const auto& sk = t.nodes[static_cast<std::size_t>(n)];
        if (sk.kind == SPQRTree::Kind::Polygon) {
            for (int e : B.edges_at(n, x)) {
                if (e != via) return through_edge(e, n, parent);
            }
            throw std::logic_error("embedding_tree: polygon without second edge");
        }
        const int idx = static_cast<int>(nodes.size());
        nodes.push_back({sk.kind == SPQRTree::Kind::Bond ? PQTree::Kind::P : PQTree::Kind::Q, HalfEdgeId{}, {}});
        if (parent >= 0) nodes[static_cast<std::size_t>(idx)].adj.push_back(parent);
        std::vector<int> order = sk.kind == SPQRTree::Kind::Bond ? sk.edges : B.rigid_rotation(n, x);
        if (via >= 0) {
            auto pos = std::find(order.begin(), order.end(), via);
            std::rotate(order.begin(), pos, order.end());
            order.erase(order.begin());
        }
        for (int e : order) {
            const int child = through_edge(e, n, idx);
            nodes[static_cast<std::size_t>(idx)].adj.push_back(child);
        }
        return idx;
    };
    through_edge = [&](int e, int n, int parent) -> int {
        if (!t.is_virtual(e)) {
            const int idx = static_cast<int>(nodes.size());
            nodes.push_back({PQTree::Kind::Leaf, label(e), {parent}});
            return idx;
        }
        return build(t.other_node(e, n), e, parent);
    };
    build(start, -1, -1);
    for (auto& n : nodes) {
        if (n.kind == PQTree::Kind::Q && n.adj.size() == 3) n.kind = PQTree::Kind::P;
    }
    return PQTree(std::move(nodes));
}

BondPoles ComponentStructure::bond_pole_bijections(VertexId u) const {
    const PQTree tree = embedding_tree(u);
    if (!tree.is_trivial()) throw std::invalid_argument("bond_pole_bijections: embedding tree is not trivial");
    const int lu = wheel_.local.at(u);
    Block& B = block(block_of_vertex(lu));
    const int x = B.local.at(lu);
    const SPQRTree& t = *B.spqr;

    const int bond = B.start_node(x);
    if (t.nodes[static_cast<std::size_t>(bond)].kind != SPQRTree::Kind::Bond)
        throw std::invalid_argument("bond_pole_bijections: vertex is not a bond pole");
    const auto& sk = t.nodes[static_cast<std::size_t>(bond)];
    const auto& pe = t.ends[static_cast<std::size_t>(sk.edges[0])];
    const int y = pe[0] == x ? pe[1] : pe[0];

    // Branch index of every node, by the bond edge it hangs off.
    std::vector<int> branch(t.nodes.size(), -1);
    std::deque<int> queue;
    for (std::size_t i = 0; i < sk.edges.size(); ++i) {
        const int e = sk.edges[i];
        if (!t.is_virtual(e)) continue;
        const int m = t.other_node(e, bond);
        branch[static_cast<std::size_t>(m)] = static_cast<int>(i);
        queue.push_back(m);
    }
    std::vector<std::vector<int>> adj(t.nodes.size());
    for (std::size_t k = 0; k < t.virtual_nodes.size(); ++k) {
        auto [a, b] = t.virtual_nodes[k];
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    while (!queue.empty()) {
        const int n = queue.front();
        queue.pop_front();
        for (int m : adj[static_cast<std::size_t>(n)]) {
            if (m == bond || branch[static_cast<std::size_t>(m)] >= 0) continue;
            branch[static_cast<std::size_t>(m)] = branch[static_cast<std::size_t>(n)];
            queue.push_back(m);
        }
    }
    auto branch_of_edge = [&](int e) {
        const int n = t.node_of_real[static_cast<std::size_t>(e)];
        if (n == bond) return static_cast<int>(std::find(sk.edges.begin(), sk.edges.end(), e) - sk.edges.begin());
        return branch[static_cast<std::size_t>(n)];
    };
    auto original_half = [&](int bh) {
        const int wh = 2 * B.wheel_edge[static_cast<std::size_t>(bh >> 1)] + (bh & 1);
        return wheel_.half[static_cast<std::size_t>(wh)];
    };

    BondPoles out;
    out.pole = u;
    out.partner = wheel_.vertex[static_cast<std::size_t>(B.wheel_vertex[static_cast<std::size_t>(y)])];
    if (!out.partner.valid()) throw std::logic_error("bond_pole_bijections: partner is a gadget vertex");
    out.pole_halves.assign(sk.edges.size(), HalfEdgeId{});
    out.partner_halves.assign(sk.edges.size(), {});
    for (int h : B.g.inc[static_cast<std::size_t>(x)]) {
        out.pole_halves[static_cast<std::size_t>(branch_of_edge(StaticGraph::edge_of(h)))] = original_half(h);
    }
    for (int h : B.g.inc[static_cast<std::size_t>(y)]) {
        out.partner_halves[static_cast<std::size_t>(branch_of_edge(StaticGraph::edge_of(h)))].push_back(original_half(h));
    }
    return out;
}

std::optional<ComponentStructure::RigidRef> ComponentStructure::rigid_of_center(VertexId c) const {
    if (inst_->kind(c) != VertexKind::Q || inst_->g.degree(c) < 3) return std::nullopt;
    const int lc = wheel_.local.at(c);
    const int b = block_of_vertex(lc);
    Block& B = block(b);
    const int x = B.local.at(lc);
    const SPQRTree& t = *B.spqr;
    const int e0 = StaticGraph::edge_of(B.g.inc[static_cast<std::size_t>(x)].front());
    const int node = t.node_of_real[static_cast<std::size_t>(e0)];
    if (t.nodes[static_cast<std::size_t>(node)].kind != SPQRTree::Kind::Rigid)
        throw std::logic_error("rigid_of_center: wheel center outside a rigid node");
    CyclicOrder rot;
    for (int e : B.rigid_rotation(node, x)) {
        if (t.is_virtual(e)) throw std::logic_error("rigid_of_center: virtual spoke");
        const int bh = B.half_at(e, x);
        rot.push_back(wheel_.half[static_cast<std::size_t>(2 * B.wheel_edge[static_cast<std::size_t>(bh >> 1)] + (bh & 1))]);
    }
    RigidRef ref{b, node, true};
    const auto& psi = inst_->psi(c);
    if (cyclic_equal(rot, psi)) return ref;
    if (cyclic_equal(rot, reversed(psi))) {
        ref.agrees = false;
        return ref;
    }
    throw std::logic_error("rigid_of_center: wheel center rotation differs from psi");
}

std::vector<std::array<int, 2>> ComponentStructure::rigid_nodes() const {
    std::vector<std::array<int, 2>> out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        Block& B = block(static_cast<int>(b));
        if (!B.spqr) continue;
        for (std::size_t n = 0; n < B.spqr->nodes.size(); ++n) {
            if (B.spqr->nodes[n].kind == SPQRTree::Kind::Rigid) out.push_back({static_cast<int>(b), static_cast<int>(n)});
        }
    }
    return out;
}

RotationSystem ComponentStructure::embed(const std::function<bool(int, int)>& flip) const {
    if (!planar()) throw NonPlanarError("component is not planar");
    std::vector<std::vector<int>> wrot(static_cast<std::size_t>(wheel_.graph.n));
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const int b = static_cast<int>(bi);
        Block& B = block(b);
        auto emit = [&](int x, int bh) {
            wrot[static_cast<std::size_t>(B.wheel_vertex[static_cast<std::size_t>(x)])].push_back(
                2 * B.wheel_edge[static_cast<std::size_t>(bh >> 1)] + (bh & 1));
        };
        if (!B.spqr) {
            emit(B.g.ends[0][0], 0);
            emit(B.g.ends[0][1], 1);
            continue;
        }
        const SPQRTree& t = *B.spqr;
        // Top node per vertex: first node containing it in breadth-first order from node 0.
        std::vector<std::vector<int>> adj(t.nodes.size());
        for (std::size_t k = 0; k < t.virtual_nodes.size(); ++k) {
            auto [p, q] = t.virtual_nodes[k];
            adj[static_cast<std::size_t>(p)].push_back(q);
            adj[static_cast<std::size_t>(q)].push_back(p);
        }
        std::vector<int> top(static_cast<std::size_t>(B.g.n), -1);
        std::vector<char> seen(t.nodes.size(), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            for (int v : t.vertices(n)) {
                if (top[static_cast<std::size_t>(v)] < 0) top[static_cast<std::size_t>(v)] = n;
            }
            for (int m : adj[static_cast<std::size_t>(n)]) {
                if (!seen[static_cast<std::size_t>(m)]) {
                    seen[static_cast<std::size_t>(m)] = 1;
                    queue.push_back(m);
                }
            }
        }
        std::function<void(int, int, int)> expand = [&](int n, int x, int via) {
            const bool f = t.nodes[static_cast<std::size_t>(n)].kind == SPQRTree::Kind::Rigid && flip(b, n);
            std::vector<int> order = B.rotation(n, x, f);
            if (via >= 0) {
                auto pos = std::find(order.begin(), order.end(), via);
                std::rotate(order.begin(), pos, order.end());
                order.erase(order.begin());
            }
            for (int e : order) {
                if (t.is_virtual(e)) {
                    expand(t.other_node(e, n), x, e);
                } else {
                    emit(x, B.half_at(e, x));
                }
            }
        };
        for (int x = 0; x < B.g.n; ++x) expand(top[static_cast<std::size_t>(x)], x, -1);
    }
    RotationSystem out;
    for (int v = 0; v < wheel_.graph.n; ++v) {
        if (wheel_.is_gadget(v)) continue;
        auto& r = out[wheel_.vertex[static_cast<std::size_t>(v)]];
        r.clear();
        for (int wh : wrot[static_cast<std::size_t>(v)]) r.push_back(wheel_.half[static_cast<std::size_t>(wh)]);
    }
    return out;
}

PQTree embedding_tree(const SyncPlanInstance& inst, VertexId v) {
    std::vector<VertexId> comp;
    for (auto& c : connected_components(inst.g)) {
        if (std::find(c.begin(), c.end(), v) != c.end()) {
            comp = std::move(c);
            break;
        }
    }
    ComponentStructure cs(inst, comp);
    return cs.embedding_tree(v);
}

PQTree embedding_tree(const Multigraph& g, VertexId v) {
    SyncPlanInstance inst;
    inst.g = g;
    return embedding_tree(inst, v);
}

}  // namespace syncplan
