#include "syncplan/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "syncplan/embedding.hpp"

namespace syncplan {

using nlohmann::json;

RotationSystem SourceMap::lift(const Multigraph& source, const RotationSystem& rs) const {
    std::unordered_map<HalfEdgeId, HalfEdgeId> back;
    back.reserve(half.size());
    for (auto [s, t] : half) back.emplace(t, s);
    RotationSystem out;
    for (VertexId v : source.sorted_vertices()) {
        CyclicOrder rot;
        for (HalfEdgeId t : rs.at(vertex.at(v))) {
            auto it = back.find(t);
            if (it != back.end() && source.vertex_of(it->second) == v) rot.push_back(it->second);
        }
        if (mirrored) std::reverse(rot.begin(), rot.end());
        out[v] = std::move(rot);
    }
    return out;
}

namespace {

// Copies g into target and records where everything went.
SourceMap copy_into(Multigraph& target, const Multigraph& g) {
    SourceMap map;
    for (VertexId v : g.sorted_vertices()) map.vertex.emplace(v, target.add_vertex());
    for (EdgeId e : g.sorted_edges()) {
        const auto [a, b] = g.halves(e);
        const auto [ta, tb] = target.halves(target.add_edge(map.vertex.at(g.vertex_of(a)), map.vertex.at(g.vertex_of(b))));
        map.half.emplace(a, ta);
        map.half.emplace(b, tb);
    }
    return map;
}

// Pipe from x to a fresh vertex whose halves follow `images` and that is
// padded with degree-1 leaves for every half of x missing from `images`.
int pipe_with_padding(SyncPlanInstance& inst, VertexId x, VertexId cap, const HalfEdgeMap& images, std::vector<VertexId>& padding) {
    HalfEdgeMap phi;
    for (HalfEdgeId h : inst.g.incident(x)) {
        auto it = images.find(h);
        if (it != images.end()) {
            phi.emplace(h, it->second);
            continue;
        }
        const VertexId leaf = inst.g.add_vertex();
        padding.push_back(leaf);
        const auto [hc, hl] = inst.g.halves(inst.g.add_edge(cap, leaf));
        (void)hl;
        phi.emplace(h, hc);
    }
    return inst.add_pipe(x, cap, std::move(phi));
}

}  // namespace

// ---------------------------------------------------------------- clusters

std::vector<int> ClusteredGraph::parents() const {
    std::vector<int> parent(clusters.size(), -2);
    parent[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        for (int ch : clusters[static_cast<std::size_t>(c)].children) {
            if (ch <= 0 || static_cast<std::size_t>(ch) >= clusters.size()) throw std::invalid_argument("cluster child index out of range");
            if (parent[static_cast<std::size_t>(ch)] != -2) throw std::invalid_argument("cluster tree is not a tree");
            parent[static_cast<std::size_t>(ch)] = c;
            stack.push_back(ch);
        }
    }
    for (std::size_t c = 0; c < clusters.size(); ++c)
        if (parent[c] == -2) throw std::invalid_argument("cluster " + std::to_string(c) + " is not reachable from the root");
    return parent;
}

IdVector<VertexId, int> ClusteredGraph::leaf_cluster() const {
    (void)parents();
    IdVector<VertexId, int> leaf{-1};
    leaf.resize(g.vertex_bound());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (VertexId v : clusters[c].vertices) {
            if (!g.has_vertex(v)) throw std::invalid_argument("cluster lists unknown vertex " + std::to_string(v.value));
            if (leaf[v] >= 0) throw std::invalid_argument("vertex " + std::to_string(v.value) + " lies in two clusters");
            leaf[v] = static_cast<int>(c);
        }
    }
    for (VertexId v : g.vertices())
        if (leaf[v] < 0) leaf[v] = 0;
    return leaf;
}

std::vector<std::vector<VertexId>> ClusteredGraph::cluster_vertices() const {
    const auto parent = parents();
    const auto leaf = leaf_cluster();
    std::vector<std::vector<VertexId>> out(clusters.size());
    for (VertexId v : g.sorted_vertices()) {
        for (int c = leaf[v]; c >= 0; c = parent[static_cast<std::size_t>(c)]) out[static_cast<std::size_t>(c)].push_back(v);
    }
    for (std::size_t c = 1; c < out.size(); ++c)
        if (out[c].empty()) throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
    return out;
}

CDTree build_cd_tree(const ClusteredGraph& cg) {
    const auto parent = cg.parents();
    const auto leaf = cg.leaf_cluster();
    (void)cg.cluster_vertices();
    {
        std::set<std::pair<VertexId, VertexId>> seen;
        for (EdgeId e : cg.g.edges()) {
            const auto [a, b] = cg.g.halves(e);
            const std::pair<VertexId, VertexId> key = std::minmax(cg.g.vertex_of(a), cg.g.vertex_of(b));
            if (!seen.insert(key).second) throw std::invalid_argument("clustered graph must be simple");
        }
    }
    const std::size_t k = cg.clusters.size();
    std::vector<int> depth(k, 0);
    for (std::size_t c = 1; c < k; ++c) {
        for (int x = static_cast<int>(c); parent[static_cast<std::size_t>(x)] >= 0; x = parent[static_cast<std::size_t>(x)]) ++depth[c];
    }
    CDTree t;
    t.skeletons.resize(k);
    std::vector<std::unordered_map<int, VertexId>> child_vertex(k);
    for (std::size_t c = 0; c < k; ++c) {
        CDSkeleton& s = t.skeletons[c];
        s.cluster = static_cast<int>(c);
        if (c != 0) s.parent_virtual = s.g.add_vertex();
        for (int ch : cg.clusters[c].children) {
            const VertexId x = s.g.add_vertex();
            s.child_virtual.emplace_back(ch, x);
            child_vertex[c].emplace(ch, x);
        }
    }
    for (VertexId v : cg.g.sorted_vertices()) {
        CDSkeleton& s = t.skeletons[static_cast<std::size_t>(leaf[v])];
        const VertexId x = s.g.add_vertex();
        s.own.push_back(x);
        s.from_source.emplace(v, x);
    }
    for (EdgeId e : cg.g.sorted_edges()) {
        const auto [ha, hb] = cg.g.halves(e);
        const VertexId va = cg.g.vertex_of(ha), vb = cg.g.vertex_of(hb);
        // Cluster path from leaf(va) to leaf(vb).
        std::vector<int> up_a{leaf[va]}, up_b{leaf[vb]};
        while (up_a.back() != up_b.back()) {
            const int da = depth[static_cast<std::size_t>(up_a.back())], db = depth[static_cast<std::size_t>(up_b.back())];
            if (da >= db) {
                up_a.push_back(parent[static_cast<std::size_t>(up_a.back())]);
            } else {
                up_b.push_back(parent[static_cast<std::size_t>(up_b.back())]);
            }
        }
        std::vector<int> path = up_a;
        for (auto it = up_b.rbegin() + 1; it != up_b.rend(); ++it) path.push_back(*it);
        for (std::size_t i = 0; i < path.size(); ++i) {
            const int mu = path[i];
            CDSkeleton& s = t.skeletons[static_cast<std::size_t>(mu)];
            auto endpoint = [&](VertexId src, int neighbour) {
                if (neighbour < 0) return s.from_source.at(src);
                if (parent[static_cast<std::size_t>(neighbour)] == mu) return child_vertex[static_cast<std::size_t>(mu)].at(neighbour);
                return s.parent_virtual;
            };
            const VertexId xa = endpoint(va, i == 0 ? -1 : path[i - 1]);
            const VertexId xb = endpoint(vb, i + 1 == path.size() ? -1 : path[i + 1]);
            const auto [sa, sb] = s.g.halves(s.g.add_edge(xa, xb));
            s.source_edge.emplace(sa, e);
            s.source_edge.emplace(sb, e);
        }
    }
    return t;
}

Reduction clustered_to_syncplan(const ClusteredGraph& cg) {
    const CDTree t = build_cd_tree(cg);
    Reduction out;
    SyncPlanInstance& inst = out.instance;
    SourceMap source;
    std::vector<SourceMap> maps;
    for (const CDSkeleton& s : t.skeletons) maps.push_back(copy_into(inst.g, s.g));
    for (const CDSkeleton& s : t.skeletons) {
        const SourceMap& m = maps[static_cast<std::size_t>(s.cluster)];
        for (auto [v, x] : s.from_source) {
            source.vertex.emplace(v, m.vertex.at(x));
            for (HalfEdgeId h : s.g.incident(x)) {
                const EdgeId e = s.source_edge.at(h);
                const auto [a, b] = cg.g.halves(e);
                source.half.emplace(cg.g.vertex_of(a) == v ? a : b, m.half.at(h));
            }
        }
    }
    // Twin pipes: the child's virtual vertex in the parent skeleton and the
    // parent's virtual vertex in the child skeleton share their edge set.
    for (const CDSkeleton& s : t.skeletons) {
        for (auto [child, x] : s.child_virtual) {
            const CDSkeleton& c = t.skeletons[static_cast<std::size_t>(child)];
            std::unordered_map<EdgeId, HalfEdgeId> at_child;
            for (HalfEdgeId h : c.g.incident(c.parent_virtual))
                at_child.emplace(c.source_edge.at(h), maps[static_cast<std::size_t>(child)].half.at(h));
            HalfEdgeMap phi;
            for (HalfEdgeId h : s.g.incident(x))
                phi.emplace(maps[static_cast<std::size_t>(s.cluster)].half.at(h), at_child.at(s.source_edge.at(h)));
            inst.add_pipe(maps[static_cast<std::size_t>(s.cluster)].vertex.at(x), maps[static_cast<std::size_t>(child)].vertex.at(c.parent_virtual),
                          std::move(phi));
        }
    }
    out.sources.push_back(std::move(source));
    return out;
}

// ---------------------------------------------------------------- SEFE

std::vector<VertexId> SefeInstance::shared_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v : g1.sorted_vertices())
        if (g2.has_vertex(v)) out.push_back(v);
    return out;
}

std::vector<EdgeId> SefeInstance::shared_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e : g1.sorted_edges()) {
        if (!g2.has_edge(e)) continue;
        const auto [a1, b1] = g1.halves(e);
        const auto [a2, b2] = g2.halves(e);
        const std::pair<VertexId, VertexId> p1 = std::minmax(g1.vertex_of(a1), g1.vertex_of(b1));
        const std::pair<VertexId, VertexId> p2 = std::minmax(g2.vertex_of(a2), g2.vertex_of(b2));
        if (p1 != p2) throw std::invalid_argument("edge " + std::to_string(e.value) + " has different endpoints in the two graphs");
        out.push_back(e);
    }
    return out;
}

namespace {

// Half of edge e at vertex v in g.
HalfEdgeId half_at(const Multigraph& g, EdgeId e, VertexId v) {
    const auto [a, b] = g.halves(e);
    return g.vertex_of(a) == v ? a : b;
}

}  // namespace

Reduction sefe_to_syncplan(const SefeInstance& s) {
    const auto shared_v = s.shared_vertices();
    const auto shared_e = s.shared_edges();
    if (shared_v.empty()) throw std::invalid_argument("SEFE instance has no shared vertex");
    {
        // Shared graph must be connected.
        std::map<VertexId, std::vector<VertexId>> adj;
        for (EdgeId e : shared_e) {
            const auto [a, b] = s.g1.halves(e);
            adj[s.g1.vertex_of(a)].push_back(s.g1.vertex_of(b));
            adj[s.g1.vertex_of(b)].push_back(s.g1.vertex_of(a));
        }
        std::set<VertexId> seen{shared_v.front()};
        std::vector<VertexId> stack{shared_v.front()};
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : adj[x])
                if (seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != shared_v.size()) throw std::invalid_argument("shared graph is not connected");
    }
    Reduction out;
    SyncPlanInstance& inst = out.instance;
    SourceMap m1 = copy_into(inst.g, s.g1);
    SourceMap m2 = copy_into(inst.g, s.g2);
    m2.mirrored = true;
    std::vector<VertexId>& padding = out.padding;
    for (VertexId x : shared_v) {
        std::vector<EdgeId> at_x;
        for (HalfEdgeId h : s.g1.incident(x))
            if (s.g2.has_edge(s.g1.edge_of(h))) at_x.push_back(s.g1.edge_of(h));
        if (at_x.empty()) continue;
        const VertexId b1 = inst.g.add_vertex(), b2 = inst.g.add_vertex();
        HalfEdgeMap img1, img2;
        for (EdgeId e : at_x) {
            const auto [c1, c2] = inst.g.halves(inst.g.add_edge(b1, b2));
            img1.emplace(m1.half.at(half_at(s.g1, e, x)), c1);
            img2.emplace(m2.half.at(half_at(s.g2, e, x)), c2);
        }
        pipe_with_padding(inst, m1.vertex.at(x), b1, img1, padding);
        pipe_with_padding(inst, m2.vertex.at(x), b2, img2, padding);
    }
    out.sources.push_back(std::move(m1));
    out.sources.push_back(std::move(m2));
    return out;
}

// ---------------------------------------------------------------- PQ constraints

Reduction pqconstrained_to_syncplan(const PQConstrainedInstance& p) {
    Reduction out;
    SyncPlanInstance& inst = out.instance;
    SourceMap m = copy_into(inst.g, p.g);
    std::set<VertexId> constrained;
    std::vector<VertexId>& padding = out.padding;
    for (const auto& [v, tree] : p.constraints) {
        if (!p.g.has_vertex(v)) throw std::invalid_argument("constraint on unknown vertex " + std::to_string(v.value));
        if (!constrained.insert(v).second) throw std::invalid_argument("vertex " + std::to_string(v.value) + " constrained twice");
        for (HalfEdgeId h : tree.leaves())
            if (!p.g.has_half(h) || p.g.vertex_of(h) != v)
                throw std::invalid_argument("tree leaf " + std::to_string(h.value) + " is not a half-edge of vertex " + std::to_string(v.value));
        const TreeFragment frag = tree_to_graph_fragment(tree);
        const VertexId cap = inst.g.add_vertex();
        std::vector<VertexId> inner;
        for (std::size_t i = 0; i < frag.kinds.size(); ++i) inner.push_back(inst.g.add_vertex());
        std::vector<std::array<HalfEdgeId, 2>> tree_half;
        for (auto [a, b] : frag.tree_edges)
            tree_half.push_back(inst.g.halves(inst.g.add_edge(inner[static_cast<std::size_t>(a)], inner[static_cast<std::size_t>(b)])));
        HalfEdgeMap images;  // instance half of v -> cap half
        std::unordered_map<HalfEdgeId, HalfEdgeId> leaf_half;  // leaf label -> half at its inner vertex
        for (auto [label, node] : frag.leaf_attachment) {
            const auto [hi, hc] = inst.g.halves(inst.g.add_edge(inner[static_cast<std::size_t>(node)], cap));
            leaf_half.emplace(label, hi);
            images.emplace(m.half.at(label), hc);
        }
        for (std::size_t i = 0; i < frag.kinds.size(); ++i) {
            if (frag.kinds[i] != PQTree::Kind::Q) continue;
            CyclicOrder psi;
            for (const auto& slot : frag.around[i]) {
                if (slot.tree_edge < 0) {
                    psi.push_back(leaf_half.at(slot.leaf));
                } else {
                    const auto [a, b] = frag.tree_edges[static_cast<std::size_t>(slot.tree_edge)];
                    (void)b;
                    psi.push_back(tree_half[static_cast<std::size_t>(slot.tree_edge)][a == static_cast<int>(i) ? 0 : 1]);
                }
            }
            inst.set_kind(inner[i], VertexKind::Q);
            inst.set_psi(inner[i], std::move(psi));
            inst.add_cell({inner[i]});
        }
        pipe_with_padding(inst, m.vertex.at(v), cap, images, padding);
    }
    out.sources.push_back(std::move(m));
    return out;
}

// ---------------------------------------------------------------- atomic

Reduction atomic_to_syncplan(const AtomicInstance& a) {
    Reduction out;
    SyncPlanInstance& inst = out.instance;
    for (const Multigraph& g : a.atoms) out.sources.push_back(copy_into(inst.g, g));
    for (const auto& pr : a.pairs) {
        auto check_atom = [&](int i, VertexId v) {
            if (i < 0 || static_cast<std::size_t>(i) >= a.atoms.size()) throw std::invalid_argument("pair names an unknown atom");
            if (!a.atoms[static_cast<std::size_t>(i)].has_vertex(v)) throw std::invalid_argument("pair names an unknown vertex");
        };
        check_atom(pr.atom_a, pr.a);
        check_atom(pr.atom_b, pr.b);
        const Multigraph& ga = a.atoms[static_cast<std::size_t>(pr.atom_a)];
        const Multigraph& gb = a.atoms[static_cast<std::size_t>(pr.atom_b)];
        if (ga.degree(pr.a) != gb.degree(pr.b)) throw std::invalid_argument("paired virtual vertices differ in degree");
        const SourceMap& ma = out.sources[static_cast<std::size_t>(pr.atom_a)];
        const SourceMap& mb = out.sources[static_cast<std::size_t>(pr.atom_b)];
        HalfEdgeMap phi;
        std::set<HalfEdgeId> targets;
        for (auto [x, y] : pr.map) {
            if (!ga.has_half(x) || ga.vertex_of(x) != pr.a || !gb.has_half(y) || gb.vertex_of(y) != pr.b || !targets.insert(y).second)
                throw std::invalid_argument("pair map is not a bijection between the virtual vertices' half-edges");
            phi.emplace(ma.half.at(x), mb.half.at(y));
        }
        if (static_cast<int>(phi.size()) != ga.degree(pr.a)) throw std::invalid_argument("pair map does not cover every half-edge");
        const VertexId ua = ma.vertex.at(pr.a), ub = mb.vertex.at(pr.b);
        if (inst.pipe_of(ua) >= 0 || inst.pipe_of(ub) >= 0) throw std::invalid_argument("virtual vertex in two pairs");
        if (ua == ub) throw std::invalid_argument("vertex paired with itself");
        inst.add_pipe(ua, ub, std::move(phi));
    }
    return out;
}

// ---------------------------------------------------------------- checks

bool is_sefe_pair(const SefeInstance& s, const RotationSystem& e1, const RotationSystem& e2) {
    if (!is_rotation_system(s.g1, e1) || !is_rotation_system(s.g2, e2)) return false;
    if (genus(s.g1, e1) != 0 || genus(s.g2, e2) != 0) return false;
    for (VertexId x : s.shared_vertices()) {
        CyclicOrder r1, r2;
        for (HalfEdgeId h : e1.at(x))
            if (s.g2.has_edge(s.g1.edge_of(h))) r1.push_back(HalfEdgeId{s.g1.edge_of(h).value});
        for (HalfEdgeId h : e2.at(x))
            if (s.g1.has_edge(s.g2.edge_of(h))) r2.push_back(HalfEdgeId{s.g2.edge_of(h).value});
        if (!cyclic_equal(r1, r2)) return false;
    }
    return true;
}

bool satisfies_pq_constraints(const PQConstrainedInstance& p, const RotationSystem& rs) {
    if (!is_rotation_system(p.g, rs) || genus(p.g, rs) != 0) return false;
    for (const auto& [v, tree] : p.constraints) {
        const auto leaves = tree.leaves();
        const std::set<HalfEdgeId> in(leaves.begin(), leaves.end());
        CyclicOrder r;
        for (HalfEdgeId h : rs.at(v))
            if (in.count(h)) r.push_back(h);
        if (!tree.admits(r)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- JSON

namespace {

json cluster_json(const ClusteredGraph& cg, int c) {
    json out;
    out["vertices"] = json::array();
    for (VertexId v : cg.clusters[static_cast<std::size_t>(c)].vertices) out["vertices"].push_back(v.value);
    out["children"] = json::array();
    for (int ch : cg.clusters[static_cast<std::size_t>(c)].children) out["children"].push_back(cluster_json(cg, ch));
    return out;
}

int read_cluster(ClusteredGraph& cg, const json& j, int depth) {
    if (depth > 10000) throw std::invalid_argument("cluster tree too deep");
    if (!j.is_object()) throw std::invalid_argument("cluster must be an object");
    const int id = static_cast<int>(cg.clusters.size());
    cg.clusters.emplace_back();
    if (j.contains("vertices")) {
        for (const auto& v : j.at("vertices")) cg.clusters[static_cast<std::size_t>(id)].vertices.push_back(VertexId{v.get<std::int32_t>()});
    }
    if (j.contains("children")) {
        for (const auto& ch : j.at("children")) {
            const int c = read_cluster(cg, ch, depth + 1);
            cg.clusters[static_cast<std::size_t>(id)].children.push_back(c);
        }
    }
    return id;
}

}  // namespace

ClusteredGraph clustered_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph")) throw std::invalid_argument("clustered graph needs 'graph'");
    ClusteredGraph cg;
    cg.g = graph_from_json(j.at("graph"));
    cg.clusters.clear();
    if (j.contains("clusters")) {
        read_cluster(cg, j.at("clusters"), 0);
    } else {
        cg.clusters.emplace_back();
    }
    (void)cg.cluster_vertices();
    return cg;
}

json clustered_to_json(const ClusteredGraph& cg) { return {{"graph", graph_to_json(cg.g)}, {"clusters", cluster_json(cg, 0)}}; }

SefeInstance sefe_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g1") || !j.contains("g2")) throw std::invalid_argument("SEFE instance needs 'g1' and 'g2'");
    SefeInstance s{graph_from_json(j.at("g1")), graph_from_json(j.at("g2"))};
    (void)s.shared_edges();
    return s;
}

json sefe_to_json(const SefeInstance& s) { return {{"g1", graph_to_json(s.g1)}, {"g2", graph_to_json(s.g2)}}; }

PQConstrainedInstance pqconstrained_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph")) throw std::invalid_argument("PQ-constrained instance needs 'graph'");
    PQConstrainedInstance p;
    p.g = graph_from_json(j.at("graph"));
    if (j.contains("constraints")) {
        for (const auto& c : j.at("constraints")) {
            if (!c.contains("vertex") || !c.contains("tree")) throw std::invalid_argument("constraint needs 'vertex' and 'tree'");
            p.constraints.emplace_back(VertexId{c.at("vertex").get<std::int32_t>()}, PQTree::parse(c.at("tree").get<std::string>()));
        }
    }
    return p;
}

json pqconstrained_to_json(const PQConstrainedInstance& p) {
    json cs = json::array();
    for (const auto& [v, t] : p.constraints) cs.push_back({{"vertex", v.value}, {"tree", t.to_string()}});
    return {{"graph", graph_to_json(p.g)}, {"constraints", cs}};
}

AtomicInstance atomic_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms")) throw std::invalid_argument("atomic instance needs 'atoms'");
    AtomicInstance a;
    for (const auto& g : j.at("atoms")) a.atoms.push_back(graph_from_json(g));
    if (j.contains("pairs")) {
        for (const auto& p : j.at("pairs")) {
            if (!p.contains("a") || !p.contains("b") || !p.contains("map")) throw std::invalid_argument("pair needs 'a', 'b' and 'map'");
            AtomicInstance::Pair pr;
            pr.atom_a = p.at("a").at(0).get<int>();
            pr.a = VertexId{p.at("a").at(1).get<std::int32_t>()};
            pr.atom_b = p.at("b").at(0).get<int>();
            pr.b = VertexId{p.at("b").at(1).get<std::int32_t>()};
            for (const auto& [x, y] : p.at("map").items()) pr.map.emplace(HalfEdgeId{std::stoi(x)}, HalfEdgeId{y.get<std::int32_t>()});
            a.pairs.push_back(std::move(pr));
        }
    }
    return a;
}

json atomic_to_json(const AtomicInstance& a) {
    json atoms = json::array(), pairs = json::array();
    for (const auto& g : a.atoms) atoms.push_back(graph_to_json(g));
    for (const auto& pr : a.pairs) {
        std::map<HalfEdgeId, HalfEdgeId> sorted(pr.map.begin(), pr.map.end());
        json m = json::object();
        for (auto [x, y] : sorted) m[std::to_string(x.value)] = y.value;
        pairs.push_back({{"a", {pr.atom_a, pr.a.value}}, {"b", {pr.atom_b, pr.b.value}}, {"map", m}});
    }
    return {{"atoms", atoms}, {"pairs", pairs}};
}

}  // namespace syncplan
