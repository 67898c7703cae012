#include "syncplan/operations.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace syncplan {

std::string_view to_string(OpTag tag) {
    switch (tag) {
        case OpTag::ConvertSmall: return "ConvertSmall";
        case OpTag::EncapsulateAndJoin: return "EncapsulateAndJoin";
        case OpTag::PropagatePQ: return "PropagatePQ";
        case OpTag::SimplifyMatchingI: return "SimplifyMatching-i";
        case OpTag::SimplifyMatchingII: return "SimplifyMatching-ii";
        case OpTag::SimplifyMatchingIII: return "SimplifyMatching-iii";
    }
    return "?";
}

namespace {

using json = nlohmann::json;

json ids(std::span<const VertexId> vs) {
    json out = json::array();
    for (VertexId v : vs) out.push_back(v.value);
    return out;
}

CyclicOrder mapped(std::span<const HalfEdgeId> seq, const HalfEdgeMap& m) {
    CyclicOrder out;
    out.reserve(seq.size());
    for (HalfEdgeId h : seq) out.push_back(m.at(h));
    return out;
}

void absorb(ConvertSmallResult& into, const ConvertSmallResult& r) {
    into.converted.insert(into.converted.end(), r.converted.begin(), r.converted.end());
    into.removed_pipes.insert(into.removed_pipes.end(), r.removed_pipes.begin(), r.removed_pipes.end());
}

// Halves of x grouped by the component of (component of x) - x they lead into.
std::vector<std::vector<HalfEdgeId>> groups_at(const Multigraph& g, VertexId x) {
    IdVector<VertexId, int> label{-1};
    label.resize(g.vertex_bound());
    std::vector<std::vector<HalfEdgeId>> groups;
    const auto inc = g.incident(x);
    const CyclicOrder halves(inc.begin(), inc.end());
    for (HalfEdgeId h : halves) {
        if (!g.edge_of(h).valid()) throw std::logic_error("unpaired half-edge at pipe endpoint");
        const VertexId w = g.head(h);
        if (label[w] < 0) {
            const int id = static_cast<int>(groups.size());
            groups.emplace_back();
            label[w] = id;
            std::deque<VertexId> queue{w};
            while (!queue.empty()) {
                const VertexId y = queue.front();
                queue.pop_front();
                for (HalfEdgeId k : g.incident(y)) {
                    if (!g.edge_of(k).valid()) continue;
                    const VertexId z = g.head(k);
                    if (z == x || label[z] >= 0) continue;
                    label[z] = id;
                    queue.push_back(z);
                }
            }
        }
        groups[static_cast<std::size_t>(label[w])].push_back(h);
    }
    return groups;
}

struct Encapsulation {
    std::vector<VertexId> parts, rays;
    HalfEdgeMap ray_half;  // original half -> its copy at the ray
    std::vector<int> pipes;
};

// Splits x off every component of (component of x) - x. The halves of x move
// to the parts; the rays get fresh unpaired halves.
Encapsulation encapsulate(SyncPlanInstance& inst, VertexId x) {
    Multigraph& g = inst.g;
    Encapsulation out;
    for (const auto& group : groups_at(g, x)) {
        const VertexId part = g.add_vertex();
        const VertexId ray = g.add_vertex();
        HalfEdgeMap phi;
        for (HalfEdgeId h : group) {
            g.move_half(h, part);
            const HalfEdgeId a = g.add_half(ray);
            phi.emplace(h, a);
            out.ray_half.emplace(h, a);
        }
        out.parts.push_back(part);
        out.rays.push_back(ray);
        out.pipes.push_back(inst.add_pipe(part, ray, std::move(phi)));
    }
    return out;
}

// ConvertSmall on the new pipes of degree below 4.
void convert_new_small(SyncPlanInstance& inst, OpRecord& rec) {
    for (int p : rec.created_pipes) {
        if (!inst.has_pipe(p) || inst.pipe(p).degree() >= 4) continue;
        absorb(rec.small, convert_small(inst, inst.pipe(p).u));
    }
}

}  // namespace

json op_record_to_json(const OpRecord& rec) {
    json j;
    j["op"] = std::string(to_string(rec.tag));
    if (rec.u.valid()) j["u"] = rec.u.value;
    if (rec.v.valid()) j["v"] = rec.v.value;
    j["removed_pipes"] = rec.removed_pipes;
    j["created_pipes"] = rec.created_pipes;
    j["created_cells"] = rec.created_cells;
    j["created_vertices"] = ids(rec.created_vertices);
    j["removed_vertices"] = ids(rec.removed_vertices);
    j["converted"] = ids(rec.small.converted);
    if (!rec.u_rays.empty()) {
        j["u_rays"] = ids(rec.u_rays);
        j["v_rays"] = ids(rec.v_rays);
    }
    if (!rec.tree_u.empty()) {
        j["tree_u"] = ids(rec.tree_u);
        j["tree_v"] = ids(rec.tree_v);
    }
    if (rec.u_mate.valid()) j["u_mate"] = rec.u_mate.value;
    if (rec.v_mate.valid()) j["v_mate"] = rec.v_mate.value;
    return j;
}

OpRecord encapsulate_and_join(SyncPlanInstance& inst, int p) {
    if (!inst.has_pipe(p)) throw std::invalid_argument("encapsulate_and_join: unknown pipe");
    const Pipe rho = inst.pipe(p);
    const VertexId u = rho.u, v = rho.v;
    if (groups_at(inst.g, u).size() < 2 || groups_at(inst.g, v).size() < 2)
        throw std::invalid_argument("encapsulate_and_join: pipe endpoints must be cut-vertices");

    OpRecord rec;
    rec.tag = OpTag::EncapsulateAndJoin;
    rec.u = u;
    rec.v = v;
    rec.phi_uv = rho.phi_uv;
    rec.removed_pipes.push_back(p);
    const auto inc_u = inst.g.incident(u);
    const CyclicOrder halves_u(inc_u.begin(), inc_u.end());

    inst.remove_pipe(p);
    const Encapsulation eu = encapsulate(inst, u);
    const Encapsulation ev = encapsulate(inst, v);
    for (HalfEdgeId h : halves_u) {
        const HalfEdgeId a = eu.ray_half.at(h);
        const HalfEdgeId b = ev.ray_half.at(rho.phi_uv.at(h));
        inst.g.pair(a, b);
        rec.joined.emplace_back(a, b);
        rec.ray_to_u.emplace(b, h);
    }
    inst.remove_vertex(u);
    inst.remove_vertex(v);
    rec.removed_vertices = {u, v};

    for (const Encapsulation* e : {&eu, &ev}) {
        rec.created_vertices.insert(rec.created_vertices.end(), e->parts.begin(), e->parts.end());
        rec.created_vertices.insert(rec.created_vertices.end(), e->rays.begin(), e->rays.end());
        rec.created_pipes.insert(rec.created_pipes.end(), e->pipes.begin(), e->pipes.end());
    }
    rec.u_rays = eu.rays;
    rec.v_rays = ev.rays;
    convert_new_small(inst, rec);
    return rec;
}

OpRecord propagate_pq(SyncPlanInstance& inst, VertexId u, const PQTree& tree) {
    const int p = inst.pipe_of(u);
    if (p < 0) throw std::invalid_argument("propagate_pq: vertex is not matched");
    if (tree.is_trivial()) throw std::invalid_argument("propagate_pq: embedding tree is trivial");
    const Pipe rho = inst.pipe(p);
    const VertexId v = rho.other(u);
    const HalfEdgeMap& phi_vu = rho.from(v);
    Multigraph& g = inst.g;
    const TreeFragment frag = tree_to_graph_fragment(tree);
    const std::size_t k = frag.kinds.size();

    OpRecord rec;
    rec.tag = OpTag::PropagatePQ;
    rec.u = u;
    rec.v = v;
    rec.removed_pipes.push_back(p);
    inst.remove_pipe(p);

    std::vector<VertexId> alpha(k), beta(k);
    for (std::size_t i = 0; i < k; ++i) {
        alpha[i] = g.add_vertex();
        beta[i] = g.add_vertex();
    }
    HalfEdgeMap phi_t;  // half at T_u -> corresponding half at the copy
    std::vector<std::array<HalfEdgeId, 2>> edge_halves;
    for (auto [a, b] : frag.tree_edges) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        const HalfEdgeId ha = g.add_half(alpha[ua]), hb = g.add_half(alpha[ub]);
        g.pair(ha, hb);
        const HalfEdgeId ma = g.add_half(beta[ua]), mb = g.add_half(beta[ub]);
        g.pair(ma, mb);
        phi_t.emplace(ha, ma);
        phi_t.emplace(hb, mb);
        edge_halves.push_back({ha, hb});
        rec.tree_halves_u.insert(rec.tree_halves_u.end(), {ha, hb});
        rec.tree_halves_v.insert(rec.tree_halves_v.end(), {ma, mb});
    }
    {
        const auto inc = g.incident(u);
        for (HalfEdgeId h : CyclicOrder(inc.begin(), inc.end()))
            g.move_half(h, alpha[static_cast<std::size_t>(frag.leaf_attachment.at(h))]);
    }
    {
        const auto inc = g.incident(v);
        for (HalfEdgeId t : CyclicOrder(inc.begin(), inc.end())) {
            const HalfEdgeId h = phi_vu.at(t);
            g.move_half(t, beta[static_cast<std::size_t>(frag.leaf_attachment.at(h))]);
            phi_t.emplace(h, t);
        }
    }
    inst.remove_vertex(u);
    inst.remove_vertex(v);
    rec.removed_vertices = {u, v};

    for (std::size_t i = 0; i < k; ++i) {
        CyclicOrder around;
        for (const auto& slot : frag.around[i]) {
            if (slot.tree_edge >= 0) {
                const auto e = static_cast<std::size_t>(slot.tree_edge);
                around.push_back(frag.tree_edges[e][0] == static_cast<int>(i) ? edge_halves[e][0] : edge_halves[e][1]);
            } else {
                around.push_back(slot.leaf);
            }
        }
        if (frag.kinds[i] == PQTree::Kind::Q) {
            CyclicOrder mirror = reversed(mapped(around, phi_t));
            inst.set_kind(alpha[i], VertexKind::Q);
            inst.set_kind(beta[i], VertexKind::Q);
            inst.set_psi(alpha[i], std::move(around));
            inst.set_psi(beta[i], std::move(mirror));
            rec.created_cells.push_back(inst.add_cell({alpha[i], beta[i]}));
        } else {
            HalfEdgeMap phi;
            for (HalfEdgeId h : around) phi.emplace(h, phi_t.at(h));
            rec.created_pipes.push_back(inst.add_pipe(alpha[i], beta[i], std::move(phi)));
        }
        rec.created_vertices.push_back(alpha[i]);
        rec.created_vertices.push_back(beta[i]);
    }
    rec.tree_u = alpha;
    rec.tree_v = beta;
    convert_new_small(inst, rec);
    return rec;
}

std::optional<OpRecord> simplify_matching(SyncPlanInstance& inst, VertexId u, const BondPoles& poles) {
    const int p = inst.pipe_of(u);
    if (p < 0) throw std::invalid_argument("simplify_matching: vertex is not matched");
    if (poles.pole != u) throw std::invalid_argument("simplify_matching: bond data belongs to another vertex");
    const VertexId v = poles.partner;
    const Pipe rho = inst.pipe(p);
    const VertexId u_mate = rho.other(u);

    OpRecord rec;
    rec.u = u;
    rec.v = v;
    rec.pole_halves = poles.pole_halves;
    rec.partner_halves = poles.partner_halves;
    auto single_partner_halves = [&] {
        for (const auto& hs : poles.partner_halves)
            if (hs.size() != 1) throw std::invalid_argument("simplify_matching: partner embedding tree is not trivial");
    };

    if (u_mate == v) {
        single_partner_halves();
        rec.tag = OpTag::SimplifyMatchingII;
        rec.phi_uv = rho.from(u);
        HalfEdgeMap pi;
        for (std::size_t i = 0; i < poles.pole_halves.size(); ++i)
            pi.emplace(poles.partner_halves[i][0], rec.phi_uv.at(poles.pole_halves[i]));
        if (!uniform_cycles(pi)) return std::nullopt;
        inst.remove_pipe(p);
        rec.removed_pipes.push_back(p);
        return rec;
    }

    rec.u_mate = u_mate;
    rec.phi_mate_u = rho.from(u_mate);
    const int q = inst.pipe_of(v);
    if (q < 0) {
        if (inst.kind(v) != VertexKind::P) throw std::invalid_argument("simplify_matching: partner is a Q-vertex");
        rec.tag = OpTag::SimplifyMatchingI;
        inst.remove_pipe(p);
        rec.removed_pipes.push_back(p);
        return rec;
    }

    single_partner_halves();
    rec.tag = OpTag::SimplifyMatchingIII;
    const Pipe rho2 = inst.pipe(q);
    const VertexId v_mate = rho2.other(v);
    rec.v_mate = v_mate;
    rec.phi_mate_v = rho2.from(v_mate);
    HalfEdgeMap delta_uv;
    for (std::size_t i = 0; i < poles.pole_halves.size(); ++i) delta_uv.emplace(poles.pole_halves[i], poles.partner_halves[i][0]);
    const HalfEdgeMap& phi_vv = rho2.from(v);
    HalfEdgeMap phi;
    for (auto [hm, h] : rec.phi_mate_u) phi.emplace(hm, phi_vv.at(delta_uv.at(h)));
    inst.remove_pipe(p);
    inst.remove_pipe(q);
    rec.removed_pipes = {p, q};
    rec.created_pipes.push_back(inst.add_pipe(u_mate, v_mate, std::move(phi)));
    return rec;
}

std::vector<std::vector<HalfEdgeId>> permutation_cycles(const HalfEdgeMap& pi) {
    std::vector<HalfEdgeId> keys;
    keys.reserve(pi.size());
    for (const auto& kv : pi) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::unordered_set<HalfEdgeId> seen;
    std::vector<std::vector<HalfEdgeId>> out;
    for (HalfEdgeId s : keys) {
        if (seen.count(s)) continue;
        auto& cycle = out.emplace_back();
        HalfEdgeId x = s;
        do {
            seen.insert(x);
            cycle.push_back(x);
            x = pi.at(x);
        } while (x != s);
    }
    return out;
}

bool uniform_cycles(const HalfEdgeMap& pi) {
    const auto cycles = permutation_cycles(pi);
    return std::all_of(cycles.begin(), cycles.end(), [&](const auto& c) { return c.size() == cycles.front().size(); });
}

CyclicOrder invariant_order(const HalfEdgeMap& pi) {
    const auto cycles = permutation_cycles(pi);
    if (!uniform_cycles(pi)) throw std::invalid_argument("invariant_order: cycles differ in length");
    CyclicOrder out;
    if (cycles.empty()) return out;
    for (std::size_t i = 0; i < cycles.front().size(); ++i)
        for (const auto& c : cycles) out.push_back(c[i]);
    return out;
}

void undo_embedding(const OpRecord& rec, RotationSystem& rs, std::int32_t fresh_half) {
    switch (rec.tag) {
        case OpTag::ConvertSmall:
            return;
        case OpTag::EncapsulateAndJoin: {
            EmbeddedPatch patch;
            for (VertexId r : rec.u_rays) patch.add_vertex(r, rs.at(r));
            for (VertexId r : rec.v_rays) patch.add_vertex(r, rs.at(r));
            for (auto [a, b] : rec.joined) patch.set_twin(a, b);
            const CyclicOrder order = contract_bipartite_class(patch, rec.u_rays, rec.v_rays, fresh_half);
            for (VertexId x : rec.created_vertices) rs.erase(x);
            rs[rec.u] = mapped(order, rec.ray_to_u);
            rs[rec.v] = reversed(mapped(rs.at(rec.u), rec.phi_uv));
            return;
        }
        case OpTag::PropagatePQ: {
            auto contract_tree = [&](const std::vector<VertexId>& verts, const std::vector<HalfEdgeId>& halves) {
                EmbeddedPatch patch;
                for (VertexId x : verts) patch.add_vertex(x, rs.at(x));
                for (std::size_t i = 0; i + 1 < halves.size(); i += 2) patch.set_twin(halves[i], halves[i + 1]);
                const std::unordered_set<HalfEdgeId> tree(halves.begin(), halves.end());
                return patch.contract(verts.front(), tree, {});
            };
            CyclicOrder ru = contract_tree(rec.tree_u, rec.tree_halves_u);
            CyclicOrder rv = contract_tree(rec.tree_v, rec.tree_halves_v);
            for (VertexId x : rec.created_vertices) rs.erase(x);
            rs[rec.u] = std::move(ru);
            rs[rec.v] = std::move(rv);
            return;
        }
        case OpTag::SimplifyMatchingI: {
            CyclicOrder ru = reversed(mapped(rs.at(rec.u_mate), rec.phi_mate_u));
            std::unordered_map<HalfEdgeId, int> branch_u, branch_v;
            for (std::size_t i = 0; i < rec.pole_halves.size(); ++i) {
                branch_u.emplace(rec.pole_halves[i], static_cast<int>(i));
                for (HalfEdgeId t : rec.partner_halves[i]) branch_v.emplace(t, static_cast<int>(i));
            }
            const CyclicOrder& cur = rs.at(rec.v);
            CyclicOrder in_block, rest;
            for (HalfEdgeId t : cur) (branch_v.count(t) ? in_block : rest).push_back(t);
            // Branches occupy consecutive runs; start at a run boundary.
            std::size_t start = 0;
            for (std::size_t i = 0; i < in_block.size(); ++i) {
                const HalfEdgeId prev = in_block[(i + in_block.size() - 1) % in_block.size()];
                if (branch_v.at(in_block[i]) != branch_v.at(prev)) {
                    start = i;
                    break;
                }
            }
            std::vector<CyclicOrder> runs(rec.pole_halves.size());
            for (std::size_t i = 0; i < in_block.size(); ++i) {
                const HalfEdgeId t = in_block[(start + i) % in_block.size()];
                runs[static_cast<std::size_t>(branch_v.at(t))].push_back(t);
            }
            CyclicOrder rv;
            for (auto it = ru.rbegin(); it != ru.rend(); ++it) {
                const auto& run = runs[static_cast<std::size_t>(branch_u.at(*it))];
                rv.insert(rv.end(), run.begin(), run.end());
            }
            rv.insert(rv.end(), rest.begin(), rest.end());
            rs[rec.u] = std::move(ru);
            rs[rec.v] = std::move(rv);
            return;
        }
        case OpTag::SimplifyMatchingII: {
            HalfEdgeMap pi, delta_vu;
            for (std::size_t i = 0; i < rec.pole_halves.size(); ++i) {
                const HalfEdgeId t = rec.partner_halves[i][0];
                delta_vu.emplace(t, rec.pole_halves[i]);
                pi.emplace(t, rec.phi_uv.at(rec.pole_halves[i]));
            }
            CyclicOrder sigma = invariant_order(pi);
            rs[rec.u] = reversed(mapped(sigma, delta_vu));
            rs[rec.v] = std::move(sigma);
            return;
        }
        case OpTag::SimplifyMatchingIII: {
            CyclicOrder ru = reversed(mapped(rs.at(rec.u_mate), rec.phi_mate_u));
            CyclicOrder rv = reversed(mapped(rs.at(rec.v_mate), rec.phi_mate_v));
            rs[rec.u] = std::move(ru);
            rs[rec.v] = std::move(rv);
            return;
        }
    }
}

}  // namespace syncplan
