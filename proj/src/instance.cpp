#include "syncplan/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "syncplan/embedding.hpp"

namespace syncplan {

using nlohmann::json;

const CyclicOrder& SyncPlanInstance::psi(VertexId v) const {
    static const CyclicOrder empty;
    return psi_.contains(v) ? psi_[v] : empty;
}

int SyncPlanInstance::add_cell(std::vector<VertexId> members) {
    const int c = static_cast<int>(cells_.size());
    for (VertexId v : members) {
        if (cell_of(v) >= 0) remove_from_cell(v);
        cell_of_.ensure(v) = c;
    }
    cells_.push_back(std::move(members));
    return c;
}

void SyncPlanInstance::add_to_cell(int c, VertexId v) {
    if (cell_of(v) >= 0) remove_from_cell(v);
    cell_of_.ensure(v) = c;
    cells_[static_cast<std::size_t>(c)].push_back(v);
}

void SyncPlanInstance::remove_from_cell(VertexId v) {
    const int c = cell_of(v);
    if (c < 0) return;
    auto& cell = cells_[static_cast<std::size_t>(c)];
    cell.erase(std::find(cell.begin(), cell.end(), v));
    cell_of_[v] = -1;
}

std::vector<int> SyncPlanInstance::cell_ids() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (!cells_[c].empty()) out.push_back(static_cast<int>(c));
    }
    return out;
}

int SyncPlanInstance::add_pipe(VertexId u, VertexId v, HalfEdgeMap phi_uv) {
    const int p = static_cast<int>(pipes_.size());
    Pipe pipe{u, v, std::move(phi_uv), {}};
    for (auto [a, b] : pipe.phi_uv) pipe.phi_vu.emplace(b, a);
    pipes_.push_back(std::move(pipe));
    ++pipe_count_;
    pipe_of_.ensure(u) = p;
    pipe_of_.ensure(v) = p;
    return p;
}

void SyncPlanInstance::remove_pipe(int p) {
    const Pipe& pipe = this->pipe(p);
    for (VertexId x : {pipe.u, pipe.v}) {
        if (pipe_of(x) == p) pipe_of_[x] = -1;
    }
    pipes_[static_cast<std::size_t>(p)].reset();
    --pipe_count_;
}

std::vector<int> SyncPlanInstance::pipe_ids() const {
    std::vector<int> out;
    for (std::size_t p = 0; p < pipes_.size(); ++p) {
        if (pipes_[p]) out.push_back(static_cast<int>(p));
    }
    return out;
}

VertexId SyncPlanInstance::partner(VertexId v) const {
    const int p = pipe_of(v);
    return p < 0 ? VertexId{} : pipe(p).other(v);
}

void SyncPlanInstance::remove_vertex(VertexId v) {
    if (pipe_of(v) >= 0) throw GraphError("removing a matched vertex");
    remove_from_cell(v);
    if (psi_.contains(v)) psi_[v].clear();
    if (kind_.contains(v)) kind_[v] = VertexKind::P;
    g.remove_vertex(v);
}

namespace {

bool is_permutation_of(std::span<const HalfEdgeId> order, std::span<const HalfEdgeId> inc) {
    std::vector<HalfEdgeId> a(order.begin(), order.end()), b(inc.begin(), inc.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::string vname(VertexId v) { return "vertex " + std::to_string(v.value); }

}  // namespace

std::vector<std::string> check_wellformed(const SyncPlanInstance& inst) {
    std::vector<std::string> out;
    const Multigraph& g = inst.g;
    try {
        g.validate();
    } catch (const GraphError& e) {
        out.emplace_back(std::string("graph: ") + e.what());
        return out;
    }
    for (VertexId v : g.sorted_vertices()) {
        if (inst.kind(v) != VertexKind::Q) continue;
        if (!is_permutation_of(inst.psi(v), g.incident(v)))
            out.push_back(vname(v) + ": reference rotation is not a rotation of its half-edges");
        if (inst.cell_of(v) < 0) out.push_back(vname(v) + ": Q-vertex without cell");
    }
    for (int c : inst.cell_ids()) {
        for (VertexId v : inst.cell(c)) {
            if (!g.has_vertex(v) || inst.kind(v) != VertexKind::Q)
                out.push_back("cell " + std::to_string(c) + ": member " + std::to_string(v.value) + " is not a Q-vertex");
        }
    }
    std::unordered_map<VertexId, int> uses;
    for (int p : inst.pipe_ids()) {
        const Pipe& pipe = inst.pipe(p);
        const std::string name = "pipe " + std::to_string(pipe.u.value) + "-" + std::to_string(pipe.v.value);
        if (!g.has_vertex(pipe.u) || !g.has_vertex(pipe.v)) {
            out.push_back(name + ": unknown endpoint");
            continue;
        }
        if (pipe.u == pipe.v) out.push_back(name + ": endpoints coincide");
        for (VertexId x : {pipe.u, pipe.v}) {
            if (inst.kind(x) != VertexKind::P) out.push_back(name + ": endpoint " + std::to_string(x.value) + " is a Q-vertex");
            ++uses[x];
        }
        if (g.degree(pipe.u) != g.degree(pipe.v)) {
            out.push_back(name + ": degree mismatch");
            continue;
        }
        std::vector<HalfEdgeId> dom, img;
        for (auto [a, b] : pipe.phi_uv) {
            dom.push_back(a);
            img.push_back(b);
        }
        if (pipe.phi_vu.size() != pipe.phi_uv.size() || !is_permutation_of(dom, g.incident(pipe.u)) ||
            !is_permutation_of(img, g.incident(pipe.v)))
            out.push_back(name + ": phi is not a bijection of the incident half-edges");
    }
    for (auto [v, n] : uses) {
        if (n > 1) out.push_back(vname(v) + ": matching violated, occurs in " + std::to_string(n) + " pipes");
    }
    return out;
}

bool pipe_satisfied(const Pipe& p, const RotationSystem& rs) {
    CyclicOrder mapped;
    for (HalfEdgeId h : rs.at(p.u)) mapped.push_back(p.phi_uv.at(h));
    std::reverse(mapped.begin(), mapped.end());
    return cyclic_equal(mapped, rs.at(p.v));
}

bool cell_satisfied(const SyncPlanInstance& inst, int c, const RotationSystem& rs) {
    bool fwd = true, rev = true;
    for (VertexId v : inst.cell(c)) {
        const auto& psi = inst.psi(v);
        fwd = fwd && cyclic_equal(rs.at(v), psi);
        rev = rev && cyclic_equal(rs.at(v), reversed(psi));
    }
    return fwd || rev;
}

bool is_valid_embedding(const SyncPlanInstance& inst, const RotationSystem& rs) {
    if (!is_rotation_system(inst.g, rs)) return false;
    if (genus(inst.g, rs) != 0) return false;
    for (int p : inst.pipe_ids()) {
        if (!pipe_satisfied(inst.pipe(p), rs)) return false;
    }
    for (int c : inst.cell_ids()) {
        if (!cell_satisfied(inst, c, rs)) return false;
    }
    return true;
}

IdVector<VertexId, char> cut_vertices(const Multigraph& g) {
    StaticView view = make_static(g);
    Biconnected bc = biconnected_components(view.graph);
    IdVector<VertexId, char> out{0};
    out.resize(g.vertex_bound());
    for (std::size_t i = 0; i < view.vertex.size(); ++i) out[view.vertex[i]] = bc.is_cut[i];
    return out;
}

long long potential(const SyncPlanInstance& inst) {
    const auto cut = cut_vertices(inst.g);
    long long phi = 0;
    for (int p : inst.pipe_ids()) {
        const Pipe& pipe = inst.pipe(p);
        const int d = reduced_degree(pipe.degree());
        if (cut[pipe.u] && cut[pipe.v]) {
            phi += d > 0 ? 2 * d - 1 : 0;
        } else {
            phi += d;
        }
    }
    return phi;
}

ConvertSmallResult convert_small(SyncPlanInstance& inst, VertexId v) {
    ConvertSmallResult out;
    const auto inc = inst.g.incident(v);
    CyclicOrder psi_v(inc.begin(), inc.end());
    const int p = inst.pipe_of(v);
    inst.set_kind(v, VertexKind::Q);
    out.converted.push_back(v);
    if (p < 0) {
        inst.set_psi(v, std::move(psi_v));
        inst.add_cell({v});
        return out;
    }
    const Pipe pipe = inst.pipe(p);
    const VertexId w = pipe.other(v);
    const auto& phi = pipe.from(v);
    CyclicOrder psi_w;
    for (auto it = psi_v.rbegin(); it != psi_v.rend(); ++it) psi_w.push_back(phi.at(*it));
    inst.remove_pipe(p);
    out.removed_pipes.push_back(p);
    inst.set_kind(w, VertexKind::Q);
    inst.set_psi(v, std::move(psi_v));
    inst.set_psi(w, std::move(psi_w));
    inst.add_cell({v, w});
    out.converted.push_back(w);
    return out;
}

ConvertSmallResult normalize_small(SyncPlanInstance& inst) {
    ConvertSmallResult out;
    for (VertexId v : inst.g.sorted_vertices()) {
        if (inst.kind(v) != VertexKind::P || inst.g.degree(v) >= 4) continue;
        auto r = convert_small(inst, v);
        out.converted.insert(out.converted.end(), r.converted.begin(), r.converted.end());
        out.removed_pipes.insert(out.removed_pipes.end(), r.removed_pipes.begin(), r.removed_pipes.end());
    }
    return out;
}

namespace {

std::int32_t parse_id(const json& j, const char* what) {
    long long value = 0;
    if (j.is_number_integer()) {
        value = j.get<long long>();
    } else if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t used = 0;
        try {
            value = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " id '" + s + "'");
    } else {
        throw std::invalid_argument(std::string("bad ") + what + " id");
    }
    if (value < 0 || value > 0x3fffffff) throw std::invalid_argument(std::string(what) + " id out of range");
    return static_cast<std::int32_t>(value);
}

VertexId vid(const json& j) { return VertexId{parse_id(j, "vertex")}; }
HalfEdgeId hid(const json& j) { return HalfEdgeId{parse_id(j, "half-edge")}; }

CyclicOrder order_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("rotation must be an array");
    CyclicOrder out;
    for (const auto& h : j) out.push_back(hid(h));
    return out;
}

json order_to_json(std::span<const HalfEdgeId> order) {
    json out = json::array();
    for (HalfEdgeId h : order) out.push_back(h.value);
    return out;
}

}  // namespace

json graph_to_json(const Multigraph& g) {
    json out;
    out["vertices"] = json::array();
    for (VertexId v : g.sorted_vertices()) out["vertices"].push_back(v.value);
    out["edges"] = json::array();
    for (EdgeId e : g.sorted_edges()) {
        auto [a, b] = g.halves(e);
        out["edges"].push_back(
            {{"id", e.value}, {"u", g.vertex_of(a).value}, {"v", g.vertex_of(b).value}, {"hu", a.value}, {"hv", b.value}});
    }
    return out;
}

Multigraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph needs 'vertices' and 'edges'");
    Multigraph g;
    for (const auto& v : j.at("vertices")) g.add_vertex(vid(v));
    std::int32_t next_half = 0;
    for (const auto& e : j.at("edges")) {
        if (e.contains("hu")) next_half = std::max(next_half, parse_id(e.at("hu"), "half-edge") + 1);
        if (e.contains("hv")) next_half = std::max(next_half, parse_id(e.at("hv"), "half-edge") + 1);
    }
    std::int32_t next_edge = 0;
    for (const auto& e : j.at("edges")) {
        if (e.contains("id")) next_edge = std::max(next_edge, parse_id(e.at("id"), "edge") + 1);
    }
    for (const auto& e : j.at("edges")) {
        if (!e.is_object() || !e.contains("u") || !e.contains("v")) throw std::invalid_argument("edge needs 'u' and 'v'");
        EdgeId id{e.contains("id") ? parse_id(e.at("id"), "edge") : next_edge++};
        HalfEdgeId hu{e.contains("hu") ? parse_id(e.at("hu"), "half-edge") : next_half++};
        HalfEdgeId hv{e.contains("hv") ? parse_id(e.at("hv"), "half-edge") : next_half++};
        g.add_edge(id, vid(e.at("u")), vid(e.at("v")), hu, hv);
    }
    return g;
}

json rotation_to_json(const Multigraph& g, const RotationSystem& rs) {
    json out = json::object();
    for (VertexId v : g.sorted_vertices()) out[std::to_string(v.value)] = order_to_json(rs.at(v));
    return out;
}

RotationSystem rotation_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("rotation system must be an object");
    RotationSystem rs;
    for (const auto& [k, v] : j.items()) rs[vid(json(k))] = order_from_json(v);
    return rs;
}

json instance_to_json(const SyncPlanInstance& inst) {
    json out = graph_to_json(inst.g);
    json kinds = json::object(), psi = json::object();
    for (VertexId v : inst.g.sorted_vertices()) {
        if (inst.kind(v) != VertexKind::Q) continue;
        kinds[std::to_string(v.value)] = "Q";
        psi[std::to_string(v.value)] = order_to_json(inst.psi(v));
    }
    out["kinds"] = kinds;
    out["cells"] = json::array();
    for (int c : inst.cell_ids()) {
        json cell = json::array();
        for (VertexId v : inst.cell(c)) cell.push_back(v.value);
        out["cells"].push_back(cell);
    }
    out["psi"] = psi;
    out["pipes"] = json::array();
    for (int p : inst.pipe_ids()) {
        const Pipe& pipe = inst.pipe(p);
        std::vector<std::pair<HalfEdgeId, HalfEdgeId>> pairs(pipe.phi_uv.begin(), pipe.phi_uv.end());
        std::sort(pairs.begin(), pairs.end());
        json phi = json::object();
        for (auto [a, b] : pairs) phi[std::to_string(a.value)] = b.value;
        out["pipes"].push_back({{"u", pipe.u.value}, {"v", pipe.v.value}, {"phi", phi}});
    }
    return out;
}

SyncPlanInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance must be an object");
    SyncPlanInstance inst;
    inst.g = graph_from_json(j.contains("graph") ? j.at("graph") : j);
    if (j.contains("kinds")) {
        for (const auto& [k, v] : j.at("kinds").items()) {
            const auto s = v.get<std::string>();
            if (s != "P" && s != "Q") throw std::invalid_argument("vertex kind must be 'P' or 'Q'");
            const VertexId x = vid(json(k));
            if (!inst.g.has_vertex(x)) throw std::invalid_argument("kind given for unknown vertex " + k);
            inst.set_kind(x, s == "Q" ? VertexKind::Q : VertexKind::P);
        }
    }
    if (j.contains("psi")) {
        for (const auto& [k, v] : j.at("psi").items()) inst.set_psi(vid(json(k)), order_from_json(v));
    }
    if (j.contains("cells")) {
        std::set<VertexId> seen;
        for (const auto& cell : j.at("cells")) {
            std::vector<VertexId> members;
            for (const auto& v : cell) {
                const VertexId x = vid(v);
                if (!seen.insert(x).second) throw std::invalid_argument("vertex in two cells");
                members.push_back(x);
            }
            if (!members.empty()) inst.add_cell(std::move(members));
        }
    }
    if (j.contains("pipes")) {
        for (const auto& p : j.at("pipes")) {
            if (!p.contains("u") || !p.contains("v") || !p.contains("phi"))
                throw std::invalid_argument("pipe needs 'u', 'v' and 'phi'");
            HalfEdgeMap phi;
            for (const auto& [a, b] : p.at("phi").items()) {
                if (!phi.emplace(hid(json(a)), hid(b)).second) throw std::invalid_argument("phi repeats a half-edge");
            }
            inst.add_pipe(vid(p.at("u")), vid(p.at("v")), std::move(phi));
        }
    }
    return inst;
}

}  // namespace syncplan
