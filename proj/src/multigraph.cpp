#include "syncplan/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace syncplan {

namespace {

template <class IdT>
void list_insert(std::vector<IdT>& list, IdVector<IdT, int>& pos, IdT id) {
    pos.ensure(id) = static_cast<int>(list.size());
    list.push_back(id);
}

template <class IdT>
void list_erase(std::vector<IdT>& list, IdVector<IdT, int>& pos, IdT id) {
    const int p = pos[id];
    const IdT last = list.back();
    list[static_cast<std::size_t>(p)] = last;
    pos[last] = p;
    list.pop_back();
    pos[id] = -1;
}

}  // namespace

VertexId Multigraph::add_vertex() {
    VertexId v{next_vertex_};
    add_vertex(v);
    return v;
}

void Multigraph::add_vertex(VertexId v) {
    if (!v.valid()) throw GraphError("invalid vertex id");
    if (has_vertex(v)) throw GraphError("duplicate vertex id " + std::to_string(v.value));
    vertex_alive_.ensure(v) = true;
    incidence_.ensure(v).clear();
    list_insert(vertex_list_, vertex_pos_, v);
    next_vertex_ = std::max(next_vertex_, v.value + 1);
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v) {
    HalfEdgeId hu = add_half(u);
    HalfEdgeId hv = add_half(v);
    return pair(hu, hv);
}

EdgeId Multigraph::add_edge(EdgeId e, VertexId u, VertexId v, HalfEdgeId hu, HalfEdgeId hv) {
    if (!e.valid() || has_edge(e)) throw GraphError("invalid or duplicate edge id " + std::to_string(e.value));
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u.value));
    add_half(hu, u);
    add_half(hv, v);
    edge_alive_.ensure(e) = true;
    edge_halves_.ensure(e) = {hu, hv};
    half_edge_.ensure(hu) = e;
    half_edge_.ensure(hv) = e;
    list_insert(edge_list_, edge_pos_, e);
    next_edge_ = std::max(next_edge_, e.value + 1);
    return e;
}

HalfEdgeId Multigraph::add_half(VertexId v) {
    HalfEdgeId h{next_half_};
    add_half(h, v);
    return h;
}

void Multigraph::add_half(HalfEdgeId h, VertexId v) {
    if (!h.valid() || has_half(h)) throw GraphError("invalid or duplicate half-edge id " + std::to_string(h.value));
    if (!has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v.value));
    half_edge_.ensure(h) = EdgeId{};
    attach(h, v);
    next_half_ = std::max(next_half_, h.value + 1);
}

EdgeId Multigraph::pair(HalfEdgeId a, HalfEdgeId b) {
    if (half_edge_[a].valid() || half_edge_[b].valid()) throw GraphError("pairing an already paired half-edge");
    if (half_vertex_[a] == half_vertex_[b]) throw GraphError("pairing would create a loop");
    EdgeId e{next_edge_++};
    edge_alive_.ensure(e) = true;
    edge_halves_.ensure(e) = {a, b};
    half_edge_[a] = e;
    half_edge_[b] = e;
    list_insert(edge_list_, edge_pos_, e);
    return e;
}

void Multigraph::unpair(EdgeId e) {
    if (!has_edge(e)) throw GraphError("unknown edge " + std::to_string(e.value));
    for (HalfEdgeId h : edge_halves_[e]) half_edge_[h] = EdgeId{};
    edge_alive_[e] = false;
    list_erase(edge_list_, edge_pos_, e);
}

void Multigraph::remove_half(HalfEdgeId h) {
    if (half_edge_[h].valid()) throw GraphError("removing a paired half-edge");
    detach(h);
    half_vertex_[h] = VertexId{};
}

void Multigraph::move_half(HalfEdgeId h, VertexId to) {
    if (!has_vertex(to)) throw GraphError("unknown vertex " + std::to_string(to.value));
    if (half_edge_[h].valid()) {
        HalfEdgeId t = twin(h);
        if (half_vertex_[t] == to) throw GraphError("moving half-edge would create a loop");
    }
    detach(h);
    attach(h, to);
}

void Multigraph::remove_edge(EdgeId e) {
    auto hs = halves(e);
    unpair(e);
    remove_half(hs[0]);
    remove_half(hs[1]);
}

void Multigraph::remove_vertex(VertexId v) {
    if (!has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v.value));
    while (!incidence_[v].empty()) {
        HalfEdgeId h = incidence_[v].back();
        if (half_edge_[h].valid()) {
            remove_edge(half_edge_[h]);
        } else {
            remove_half(h);
        }
    }
    vertex_alive_[v] = false;
    list_erase(vertex_list_, vertex_pos_, v);
}

HalfEdgeId Multigraph::twin(HalfEdgeId h) const {
    const auto& hs = edge_halves_[half_edge_[h]];
    return hs[0] == h ? hs[1] : hs[0];
}

std::vector<VertexId> Multigraph::sorted_vertices() const {
    auto out = vertex_list_;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeId> Multigraph::sorted_edges() const {
    auto out = edge_list_;
    std::sort(out.begin(), out.end());
    return out;
}

void Multigraph::reserve_ids(std::size_t vertices, std::size_t edges, std::size_t halves) {
    next_vertex_ = std::max<std::int32_t>(next_vertex_, static_cast<std::int32_t>(vertices));
    next_edge_ = std::max<std::int32_t>(next_edge_, static_cast<std::int32_t>(edges));
    next_half_ = std::max<std::int32_t>(next_half_, static_cast<std::int32_t>(halves));
}

void Multigraph::attach(HalfEdgeId h, VertexId v) {
    half_vertex_.ensure(h) = v;
    auto& inc = incidence_[v];
    half_pos_.ensure(h) = static_cast<int>(inc.size());
    inc.push_back(h);
}

void Multigraph::detach(HalfEdgeId h) {
    auto& inc = incidence_[half_vertex_[h]];
    const int p = half_pos_[h];
    const HalfEdgeId last = inc.back();
    inc[static_cast<std::size_t>(p)] = last;
    half_pos_[last] = p;
    inc.pop_back();
    half_pos_[h] = -1;
}

void Multigraph::validate() const {
    for (VertexId v : vertex_list_) {
        for (std::size_t i = 0; i < incidence_[v].size(); ++i) {
            HalfEdgeId h = incidence_[v][i];
            if (half_vertex_[h] != v || half_pos_[h] != static_cast<int>(i))
                throw GraphError("broken incidence at vertex " + std::to_string(v.value));
            if (!half_edge_[h].valid()) throw GraphError("unpaired half-edge " + std::to_string(h.value));
        }
    }
    for (EdgeId e : edge_list_) {
        auto [a, b] = edge_halves_[e];
        if (half_edge_[a] != e || half_edge_[b] != e) throw GraphError("broken edge " + std::to_string(e.value));
        if (half_vertex_[a] == half_vertex_[b]) throw GraphError("loop edge " + std::to_string(e.value));
    }
}

bool operator==(const RotationSystem& a, const RotationSystem& b) {
    const std::size_t n = std::max(a.bound(), b.bound());
    for (std::size_t i = 0; i < n; ++i) {
        VertexId v{static_cast<std::int32_t>(i)};
        if (!cyclic_equal(a.at(v), b.at(v))) return false;
    }
    return true;
}

bool is_rotation_system(const Multigraph& g, const RotationSystem& rs) {
    for (VertexId v : g.vertices()) {
        const auto& r = rs.at(v);
        auto inc = g.incident(v);
        if (r.size() != inc.size()) return false;
        std::vector<HalfEdgeId> a(r.begin(), r.end()), b(inc.begin(), inc.end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

RotationSystem incidence_rotation(const Multigraph& g) {
    RotationSystem rs;
    for (VertexId v : g.vertices()) {
        auto inc = g.incident(v);
        rs[v].assign(inc.begin(), inc.end());
    }
    return rs;
}

void reverse_all(const Multigraph& g, RotationSystem& rs) {
    for (VertexId v : g.vertices()) std::reverse(rs[v].begin(), rs[v].end());
}

CyclicOrder canonical_cyclic(std::span<const HalfEdgeId> seq) {
    CyclicOrder out(seq.begin(), seq.end());
    if (!out.empty()) std::rotate(out.begin(), std::min_element(out.begin(), out.end()), out.end());
    return out;
}

bool cyclic_equal(std::span<const HalfEdgeId> a, std::span<const HalfEdgeId> b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    std::size_t off = static_cast<std::size_t>(it - b.begin());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[(off + i) % b.size()]) return false;
    }
    return true;
}

CyclicOrder reversed(std::span<const HalfEdgeId> seq) { return CyclicOrder(seq.rbegin(), seq.rend()); }

std::vector<EdgeId> Cut::cut_edges(const Multigraph& g) const {
    std::unordered_set<VertexId> xs(side_x.begin(), side_x.end());
    std::unordered_set<VertexId> ys(side_y.begin(), side_y.end());
    std::vector<EdgeId> out;
    for (EdgeId e : g.sorted_edges()) {
        auto [a, b] = g.halves(e);
        VertexId va = g.vertex_of(a), vb = g.vertex_of(b);
        if ((xs.count(va) && ys.count(vb)) || (xs.count(vb) && ys.count(va))) out.push_back(e);
    }
    return out;
}

std::vector<std::vector<VertexId>> connected_components(const Multigraph& g) {
    IdVector<VertexId, char> seen{0};
    seen.resize(g.vertex_bound());
    std::vector<std::vector<VertexId>> out;
    for (VertexId s : g.sorted_vertices()) {
        if (seen[s]) continue;
        auto& comp = out.emplace_back();
        std::deque<VertexId> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (HalfEdgeId h : g.incident(v)) {
                VertexId w = g.head(h);
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    return out;
}

}  // namespace syncplan
