#include "syncplan/embedding.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace syncplan {

FaceTrace trace_faces(const Multigraph& g, const RotationSystem& rs) {
    IdVector<HalfEdgeId, int> pos{-1};
    pos.resize(g.half_bound());
    for (VertexId v : g.vertices()) {
        const auto& r = rs.at(v);
        for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = static_cast<int>(i);
    }
    IdVector<HalfEdgeId, char> seen{0};
    seen.resize(g.half_bound());
    FaceTrace out;
    for (EdgeId e : g.sorted_edges()) {
        for (HalfEdgeId h0 : g.halves(e)) {
            if (seen[h0]) continue;
            auto& face = out.faces.emplace_back();
            HalfEdgeId h = h0;
            while (!seen[h]) {
                seen[h] = true;
                face.push_back(h);
                HalfEdgeId t = g.twin(h);
                const auto& r = rs.at(g.vertex_of(t));
                h = r[(static_cast<std::size_t>(pos[t]) + 1) % r.size()];
            }
        }
    }
    int faces = static_cast<int>(out.faces.size());
    for (VertexId v : g.vertices()) {
        if (g.degree(v) == 0) ++faces;
    }
    const int comps = static_cast<int>(connected_components(g).size());
    out.genus = (2 * comps - static_cast<int>(g.num_vertices()) + static_cast<int>(g.num_edges()) - faces) / 2;
    return out;
}

int genus(const Multigraph& g, const RotationSystem& rs) { return trace_faces(g, rs).genus; }

StaticView make_static(const Multigraph& g, std::span<const VertexId> vertices) {
    StaticView view;
    view.vertex.assign(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        view.local.emplace(vertices[i], static_cast<int>(i));
        view.graph.add_vertex();
    }
    for (VertexId v : vertices) {
        for (HalfEdgeId h : g.incident(v)) {
            auto hs = g.halves(g.edge_of(h));
            if (hs[0] != h) continue;
            auto it = view.local.find(g.vertex_of(hs[1]));
            if (it == view.local.end()) continue;
            view.graph.add_edge(view.local.at(v), it->second);
            view.half.push_back(hs[0]);
            view.half.push_back(hs[1]);
        }
    }
    return view;
}

StaticView make_static(const Multigraph& g) {
    auto vs = g.sorted_vertices();
    return make_static(g, vs);
}

std::optional<RotationSystem> planar_embed(const Multigraph& g) {
    StaticView view = make_static(g);
    auto rot = planar_rotation(view.graph);
    if (!rot) return std::nullopt;
    RotationSystem rs;
    for (std::size_t i = 0; i < view.vertex.size(); ++i) {
        auto& r = rs[view.vertex[i]];
        for (int h : (*rot)[i]) r.push_back(view.half[static_cast<std::size_t>(h)]);
    }
    return rs;
}

namespace {

void copy_edge(const Multigraph& from, Multigraph& to, EdgeId e) {
    auto [a, b] = from.halves(e);
    to.add_edge(e, from.vertex_of(a), from.vertex_of(b), a, b);
}

std::vector<VertexId> component_of(const Multigraph& g, VertexId s) {
    std::vector<VertexId> out;
    std::unordered_set<VertexId> seen{s};
    std::deque<VertexId> queue{s};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        out.push_back(v);
        for (HalfEdgeId h : g.incident(v)) {
            VertexId w = g.head(h);
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return out;
}

}  // namespace

SplitResult split_at_cut(const Multigraph& g, const Cut& c) {
    if (c.side_x.empty() || c.side_y.empty()) throw GraphError("cut side is empty");
    std::unordered_set<VertexId> xs(c.side_x.begin(), c.side_x.end());
    std::unordered_set<VertexId> ys(c.side_y.begin(), c.side_y.end());
    for (VertexId v : ys) {
        if (xs.count(v)) throw GraphError("cut sides overlap");
    }
    auto comp = component_of(g, c.side_x.front());
    if (comp.size() != xs.size() + ys.size()) throw GraphError("cut does not cover its component");
    for (VertexId v : comp) {
        if (!xs.count(v) && !ys.count(v)) throw GraphError("cut does not cover its component");
    }

    SplitResult out;
    out.x = VertexId{static_cast<std::int32_t>(g.vertex_bound())};
    out.y = VertexId{out.x.value + 1};
    for (VertexId v : g.sorted_vertices()) {
        (ys.count(v) ? out.g2 : out.g1).add_vertex(v);
    }
    out.g1.add_vertex(out.x);
    out.g2.add_vertex(out.y);
    for (EdgeId e : g.sorted_edges()) {
        auto [a, b] = g.halves(e);
        const bool ay = ys.count(g.vertex_of(a)) != 0;
        const bool by = ys.count(g.vertex_of(b)) != 0;
        if (ay == by) {
            copy_edge(g, ay ? out.g2 : out.g1, e);
            continue;
        }
        HalfEdgeId hx = ay ? b : a;  // half on the X side
        HalfEdgeId hy = ay ? a : b;
        out.g1.add_edge(e, g.vertex_of(hx), out.x, hx, hy);
        out.g2.add_edge(e, out.y, g.vertex_of(hy), hx, hy);
        out.phi_xy.emplace_back(hy, hx);
    }
    for (Multigraph* part : {&out.g1, &out.g2}) {
        part->reserve_ids(g.vertex_bound() + 2, g.edge_bound(), g.half_bound());
    }
    return out;
}

Multigraph join_at_vertices(const Multigraph& g1, VertexId x, const Multigraph& g2, VertexId y,
                            const HalfEdgePairs& phi_xy) {
    if (g1.degree(x) != g2.degree(y)) throw GraphError("join: degree mismatch");
    if (phi_xy.size() != static_cast<std::size_t>(g1.degree(x))) throw GraphError("join: phi is not a bijection");
    std::unordered_set<HalfEdgeId> dom, img;
    for (auto [hx, hy] : phi_xy) {
        if (!g1.has_half(hx) || g1.vertex_of(hx) != x) throw GraphError("join: phi domain is not incident to x");
        if (!g2.has_half(hy) || g2.vertex_of(hy) != y) throw GraphError("join: phi image is not incident to y");
        dom.insert(hx);
        img.insert(hy);
    }
    if (dom.size() != phi_xy.size() || img.size() != phi_xy.size()) throw GraphError("join: phi is not a bijection");

    Multigraph out;
    for (VertexId v : g1.sorted_vertices()) {
        if (v != x) out.add_vertex(v);
    }
    for (VertexId v : g2.sorted_vertices()) {
        if (v != y) out.add_vertex(v);
    }
    for (EdgeId e : g1.sorted_edges()) {
        auto [a, b] = g1.halves(e);
        if (g1.vertex_of(a) != x && g1.vertex_of(b) != x) copy_edge(g1, out, e);
    }
    for (EdgeId e : g2.sorted_edges()) {
        auto [a, b] = g2.halves(e);
        if (g2.vertex_of(a) != y && g2.vertex_of(b) != y) copy_edge(g2, out, e);
    }
    for (auto [hx, hy] : phi_xy) {
        HalfEdgeId tx = g1.twin(hx), ty = g2.twin(hy);
        out.add_edge(g1.edge_of(hx), g1.vertex_of(tx), g2.vertex_of(ty), tx, ty);
    }
    out.reserve_ids(std::max(g1.vertex_bound(), g2.vertex_bound()), std::max(g1.edge_bound(), g2.edge_bound()),
                    std::max(g1.half_bound(), g2.half_bound()));
    return out;
}

void EmbeddedPatch::add_vertex(VertexId v, std::span<const HalfEdgeId> rotation) {
    const std::size_t k = rotation.size();
    for (std::size_t i = 0; i < k; ++i) {
        links_[rotation[i]] = Link{rotation[(i + k - 1) % k], rotation[(i + 1) % k], HalfEdgeId{}, v};
    }
    if (k > 0) first_[v] = rotation[0];
}

void EmbeddedPatch::set_twin(HalfEdgeId a, HalfEdgeId b) {
    links_.at(a).twin = b;
    links_.at(b).twin = a;
}

void EmbeddedPatch::insert_before(HalfEdgeId anchor, HalfEdgeId h) {
    const Link an = links_.at(anchor);
    HalfEdgeId p = an.prev;
    links_[h] = Link{p, anchor, HalfEdgeId{}, an.owner};
    links_.at(p).next = h;
    links_.at(anchor).prev = h;
}

void EmbeddedPatch::insert_after(HalfEdgeId anchor, HalfEdgeId h) {
    const Link an = links_.at(anchor);
    HalfEdgeId nx = an.next;
    links_[h] = Link{anchor, nx, HalfEdgeId{}, an.owner};
    links_.at(nx).prev = h;
    links_.at(anchor).next = h;
}

std::optional<HalfEdgeId> EmbeddedPatch::twin(HalfEdgeId h) const {
    const Link& l = links_.at(h);
    if (!l.twin.valid()) return std::nullopt;
    return l.twin;
}

CyclicOrder EmbeddedPatch::rotation(VertexId v) const {
    CyclicOrder out;
    auto it = first_.find(v);
    if (it == first_.end()) return out;
    HalfEdgeId h = it->second;
    do {
        out.push_back(h);
        h = links_.at(h).next;
    } while (h != it->second);
    return out;
}

CyclicOrder EmbeddedPatch::contract(VertexId start, const std::unordered_set<HalfEdgeId>& tree,
                                    const std::unordered_set<HalfEdgeId>& skip) const {
    CyclicOrder out;
    auto it = first_.find(start);
    if (it == first_.end()) return out;
    const HalfEdgeId h0 = it->second;
    HalfEdgeId h = h0;
    std::size_t guard = 0;
    do {
        if (tree.count(h)) {
            h = links_.at(links_.at(h).twin).next;
        } else {
            if (!skip.count(h)) out.push_back(h);
            h = links_.at(h).next;
        }
        if (++guard > 4 * links_.size() + 4) throw GraphError("contraction walk does not close");
    } while (h != h0);
    return out;
}

CyclicOrder contract_bipartite_class(const EmbeddedPatch& patch, std::span<const VertexId> a_side,
                                     std::span<const VertexId> b_side, std::int32_t fresh_half) {
    EmbeddedPatch work = patch;
    std::unordered_map<VertexId, int> index;
    for (std::size_t i = 0; i < b_side.size(); ++i) index.emplace(b_side[i], static_cast<int>(i));
    std::vector<int> parent(b_side.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::unordered_set<HalfEdgeId> tree;
    for (VertexId a : a_side) {
        const CyclicOrder rot = work.rotation(a);
        if (rot.size() < 2) continue;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            HalfEdgeId t1 = *work.twin(rot[i]);
            HalfEdgeId t2 = *work.twin(rot[(i + 1) % rot.size()]);
            const int r1 = find(index.at(work.owner(t1)));
            const int r2 = find(index.at(work.owner(t2)));
            if (r1 == r2) continue;
            HalfEdgeId c1{fresh_half++}, c2{fresh_half++};
            work.insert_before(t1, c1);
            work.insert_after(t2, c2);
            work.set_twin(c1, c2);
            tree.insert(c1);
            tree.insert(c2);
            parent[static_cast<std::size_t>(r1)] = r2;
        }
    }
    std::map<int, VertexId> starts;  // root -> smallest member
    for (std::size_t i = 0; i < b_side.size(); ++i) {
        const int r = find(static_cast<int>(i));
        auto it = starts.find(r);
        if (it == starts.end() || b_side[i] < it->second) starts[r] = b_side[i];
    }
    std::vector<VertexId> order;
    for (auto& [r, v] : starts) order.push_back(v);
    std::sort(order.begin(), order.end());
    CyclicOrder out;
    for (VertexId s : order) {
        auto part = work.contract(s, tree, {});
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Contraction contract_connected_in_embedding(const Multigraph& g, const RotationSystem& rs,
                                            std::span<const VertexId> s) {
    if (s.empty()) throw GraphError("contraction set is empty");
    std::unordered_set<VertexId> in(s.begin(), s.end());
    EmbeddedPatch patch;
    for (VertexId v : s) patch.add_vertex(v, rs.at(v));

    std::unordered_set<HalfEdgeId> tree, skip;
    std::unordered_set<VertexId> reached{s.front()};
    std::deque<VertexId> queue{s.front()};
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (HalfEdgeId h : g.incident(v)) {
            HalfEdgeId t = g.twin(h);
            VertexId w = g.vertex_of(t);
            if (!in.count(w)) continue;
            patch.set_twin(h, t);
            if (reached.insert(w).second) {
                tree.insert(h);
                tree.insert(t);
                queue.push_back(w);
            }
        }
    }
    if (reached.size() != in.size()) throw GraphError("contraction set is not connected");
    for (VertexId v : s) {
        for (HalfEdgeId h : g.incident(v)) {
            if (in.count(g.head(h)) && !tree.count(h)) skip.insert(h);
        }
    }

    Contraction out;
    out.v = VertexId{static_cast<std::int32_t>(g.vertex_bound())};
    for (VertexId v : g.sorted_vertices()) {
        if (!in.count(v)) out.graph.add_vertex(v);
    }
    out.graph.add_vertex(out.v);
    for (EdgeId e : g.sorted_edges()) {
        auto [a, b] = g.halves(e);
        const bool ia = in.count(g.vertex_of(a)) != 0, ib = in.count(g.vertex_of(b)) != 0;
        if (ia && ib) continue;
        out.graph.add_edge(e, ia ? out.v : g.vertex_of(a), ib ? out.v : g.vertex_of(b), a, b);
    }
    out.graph.reserve_ids(g.vertex_bound() + 1, g.edge_bound(), g.half_bound());
    for (VertexId v : out.graph.vertices()) {
        if (v != out.v) out.rotation[v] = rs.at(v);
    }
    out.rotation[out.v] = patch.contract(s.front(), tree, skip);
    return out;
}

BipartiteSplit split_bipartite_embedding(const Multigraph& g, const RotationSystem& rs) {
    IdVector<VertexId, int> color{-1};
    color.resize(g.vertex_bound());
    std::vector<VertexId> a_side, b_side;
    for (VertexId s : g.sorted_vertices()) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::deque<VertexId> queue{s};
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            (color[v] == 0 ? a_side : b_side).push_back(v);
            for (HalfEdgeId h : g.incident(v)) {
                VertexId w = g.head(h);
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if (color[w] == color[v]) {
                    throw GraphError("graph is not bipartite");
                }
            }
        }
    }
    std::sort(a_side.begin(), a_side.end());
    std::sort(b_side.begin(), b_side.end());

    EmbeddedPatch patch;
    for (VertexId v : g.sorted_vertices()) patch.add_vertex(v, rs.at(v));
    for (EdgeId e : g.edges()) {
        auto [a, b] = g.halves(e);
        patch.set_twin(a, b);
    }
    const auto fresh = static_cast<std::int32_t>(g.half_bound());

    BipartiteSplit out;
    const auto x = static_cast<std::int32_t>(g.vertex_bound());
    auto build = [&](Contraction& c, const std::vector<VertexId>& keep, int keep_color, std::int32_t id) {
        c.v = VertexId{id};
        for (VertexId v : keep) c.graph.add_vertex(v);
        c.graph.add_vertex(c.v);
        for (EdgeId e : g.sorted_edges()) {
            auto [a, b] = g.halves(e);
            const bool a_kept = color[g.vertex_of(a)] == keep_color;
            c.graph.add_edge(e, a_kept ? g.vertex_of(a) : c.v, a_kept ? c.v : g.vertex_of(b), a, b);
        }
        c.graph.reserve_ids(g.vertex_bound() + 2, g.edge_bound(), g.half_bound());
        for (VertexId v : keep) c.rotation[v] = rs.at(v);
    };
    build(out.contract_b, a_side, 0, x);
    build(out.contract_a, b_side, 1, x + 1);
    for (EdgeId e : g.sorted_edges()) {
        auto [a, b] = g.halves(e);
        HalfEdgeId ha = color[g.vertex_of(a)] == 0 ? a : b;
        HalfEdgeId hb = ha == a ? b : a;
        out.phi_xy.emplace_back(hb, ha);
    }
    // Only class B is contracted along chords; y takes the compatible reversed
    // order, which the A-side augmentation would produce from the same embedding.
    const CyclicOrder rx = contract_bipartite_class(patch, a_side, b_side, fresh);
    out.contract_b.rotation[out.contract_b.v] = rx;
    auto& ry = out.contract_a.rotation[out.contract_a.v];
    for (auto it = rx.rbegin(); it != rx.rend(); ++it) ry.push_back(g.twin(*it));
    return out;
}

}  // namespace syncplan
