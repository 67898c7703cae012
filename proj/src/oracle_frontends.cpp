#include <algorithm>
#include <map>
#include <set>

#include "syncplan/embedding.hpp"
#include "syncplan/oracle.hpp"

namespace syncplan {

bool brute_cplanar(const ClusteredGraph& cg, OracleBudget budget) {
    return brute_solve_syncplan(clustered_to_syncplan(cg).instance, budget).satisfiable;
}

namespace {

struct ClusterData {
    std::vector<std::vector<VertexId>> sets;  // vertex set per cluster
    std::vector<std::set<VertexId>> member;
};

ClusterData cluster_data(const ClusteredGraph& cg) {
    ClusterData d;
    d.sets = cg.cluster_vertices();
    for (auto& s : d.sets) d.member.emplace_back(s.begin(), s.end());
    return d;
}

bool induced_connected(const Multigraph& h, const std::set<VertexId>& in) {
    if (in.empty()) return true;
    std::set<VertexId> seen{*in.begin()};
    std::vector<VertexId> stack{*in.begin()};
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (HalfEdgeId e : h.incident(x)) {
            const VertexId y = h.head(e);
            if (in.count(y) && seen.insert(y).second) stack.push_back(y);
        }
    }
    return seen.size() == in.size();
}

bool c_connected(const Multigraph& h, const ClusterData& d) {
    for (const auto& m : d.member)
        if (!induced_connected(h, m)) return false;
    return true;
}

// Every cluster sees the rest of the graph inside a single one of its faces.
bool outside_in_one_face(const Multigraph& h, const RotationSystem& rs, const ClusterData& d) {
    for (std::size_t c = 1; c < d.sets.size(); ++c) {
        const auto& in = d.member[c];
        if (in.size() <= 1) continue;
        Multigraph sub;
        for (VertexId v : d.sets[c]) sub.add_vertex(v);
        RotationSystem r;
        for (VertexId v : d.sets[c]) {
            for (HalfEdgeId e : rs.at(v)) {
                if (!in.count(h.head(e))) continue;
                r[v].push_back(e);
                const HalfEdgeId t = h.twin(e);
                if (e < t) sub.add_edge(h.edge_of(e), v, h.head(e), e, t);
            }
        }
        std::unordered_map<HalfEdgeId, int> face_of;
        const FaceTrace ft = trace_faces(sub, r);
        for (std::size_t f = 0; f < ft.faces.size(); ++f)
            for (HalfEdgeId e : ft.faces[f]) face_of.emplace(e, static_cast<int>(f));
        int face = -1;
        for (VertexId v : d.sets[c]) {
            const auto& rot = rs.at(v);
            const std::size_t k = rot.size();
            for (std::size_t i = 0; i < k; ++i) {
                if (in.count(h.head(rot[i]))) continue;
                // Angle from the last inner half before position i; it belongs to the face of its twin.
                std::size_t j = (i + k - 1) % k;
                while (j != i && !in.count(h.head(rot[j]))) j = (j + k - 1) % k;
                if (j == i) return false;  // v isolated inside a cluster of size > 1 cannot happen when c-connected
                const int f = face_of.at(h.twin(rot[j]));
                if (face >= 0 && face != f) return false;
                face = f;
            }
        }
    }
    return true;
}

// Pairs whose edge joins two components of some cluster.
std::vector<std::pair<VertexId, VertexId>> useful_pairs(const Multigraph& g, const ClusterData& d) {
    std::set<std::pair<VertexId, VertexId>> adjacent;
    for (EdgeId e : g.edges()) {
        const auto [a, b] = g.halves(e);
        adjacent.insert(std::minmax(g.vertex_of(a), g.vertex_of(b)));
    }
    std::vector<std::pair<VertexId, VertexId>> out;
    const auto vs = g.sorted_vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (adjacent.count({vs[i], vs[j]})) continue;
            bool useful = false;
            for (const auto& m : d.member) {
                if (!m.count(vs[i]) || !m.count(vs[j])) continue;
                // Different components of the cluster?
                std::set<VertexId> seen{vs[i]};
                std::vector<VertexId> stack{vs[i]};
                while (!stack.empty()) {
                    const VertexId x = stack.back();
                    stack.pop_back();
                    for (HalfEdgeId e : g.incident(x)) {
                        const VertexId y = g.head(e);
                        if (m.count(y) && seen.insert(y).second) stack.push_back(y);
                    }
                }
                if (!seen.count(vs[j])) {
                    useful = true;
                    break;
                }
            }
            if (useful) out.emplace_back(vs[i], vs[j]);
        }
    }
    return out;
}

// Calls test(H) for every minimal set of added pairs that makes all clusters
// connected, smallest sets first, until test returns true.
bool for_minimal_augmentations(const ClusteredGraph& cg, const ClusterData& d, std::uint64_t& work, std::uint64_t limit,
                               const std::function<bool(const Multigraph&)>& test) {
    const auto cand = useful_pairs(cg.g, d);
    std::vector<std::vector<int>> found;
    std::vector<int> pick;
    const int n = static_cast<int>(cand.size());
    std::function<bool(int, int)> rec = [&](int start, int left) -> bool {
        if (left == 0) {
            if (++work > limit) throw OracleBudgetExceeded("oracle budget of " + std::to_string(limit) + " exceeded");
            for (const auto& f : found)
                if (std::includes(pick.begin(), pick.end(), f.begin(), f.end())) return false;
            Multigraph h = cg.g;
            for (int i : pick) h.add_edge(cand[static_cast<std::size_t>(i)].first, cand[static_cast<std::size_t>(i)].second);
            if (!c_connected(h, d)) return false;
            found.push_back(pick);
            return test(h);
        }
        for (int i = start; i <= n - left; ++i) {
            pick.push_back(i);
            const bool ok = rec(i + 1, left - 1);
            pick.pop_back();
            if (ok) return true;
        }
        return false;
    };
    for (int size = 0; size <= n; ++size)
        if (rec(0, size)) return true;
    return false;
}

}  // namespace

bool brute_cplanar_direct(const ClusteredGraph& cg, OracleBudget budget) {
    const ClusterData d = cluster_data(cg);
    std::uint64_t work = 0;
    return for_minimal_augmentations(cg, d, work, budget.max_candidates, [&](const Multigraph& h) {
        bool ok = false;
        (void)enumerate_planar_embeddings(
            h,
            [&](const RotationSystem& rs) {
                ok = outside_in_one_face(h, rs, d);
                return !ok;
            },
            budget);
        return ok;
    });
}

bool cplanar_extends(const ClusteredGraph& cg, const RotationSystem& rs, OracleBudget budget) {
    if (!is_rotation_system(cg.g, rs) || genus(cg.g, rs) != 0) return false;
    const ClusterData d = cluster_data(cg);
    std::uint64_t work = 0;
    const auto base_edges = cg.g.edge_bound();
    return for_minimal_augmentations(cg, d, work, budget.max_candidates, [&](const Multigraph& h) {
        // New halves are inserted into the fixed rotations in every possible way.
        std::vector<HalfEdgeId> fresh;
        for (EdgeId e : h.sorted_edges())
            if (static_cast<std::size_t>(e.value) >= base_edges)
                for (HalfEdgeId x : h.halves(e)) fresh.push_back(x);
        RotationSystem cur = rs;
        std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
            if (i == fresh.size()) {
                if (++work > budget.max_candidates) throw OracleBudgetExceeded("oracle budget exceeded");
                return genus(h, cur) == 0 && outside_in_one_face(h, cur, d);
            }
            auto& r = cur[h.vertex_of(fresh[i])];
            for (std::size_t pos = 0; pos <= r.size(); ++pos) {
                if (pos == r.size() && !r.empty()) break;  // cyclic: the end equals the front
                r.insert(r.begin() + static_cast<std::ptrdiff_t>(pos), fresh[i]);
                const bool ok = place(i + 1);
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
                if (ok) return true;
            }
            return false;
        };
        return place(0);
    });
}

bool is_cplanar_embedding(const ClusteredGraph& cg, const RotationSystem& rs) { return cplanar_extends(cg, rs); }

namespace {

std::vector<CyclicOrder> shared_signature(const Multigraph& g, const Multigraph& other, const std::vector<VertexId>& shared,
                                          const RotationSystem& rs) {
    std::vector<CyclicOrder> sig;
    for (VertexId x : shared) {
        CyclicOrder r;
        for (HalfEdgeId h : rs.at(x))
            if (other.has_edge(g.edge_of(h))) r.push_back(HalfEdgeId{g.edge_of(h).value});
        sig.push_back(canonical_cyclic(r));
    }
    return sig;
}

}  // namespace

SefeVerdict brute_sefe(const SefeInstance& s, OracleBudget budget) {
    const auto shared = s.shared_vertices();
    (void)s.shared_edges();
    std::map<std::vector<CyclicOrder>, RotationSystem> first;
    (void)enumerate_planar_embeddings(
        s.g1,
        [&](const RotationSystem& rs) {
            first.emplace(shared_signature(s.g1, s.g2, shared, rs), rs);
            return true;
        },
        budget);
    SefeVerdict out;
    (void)enumerate_planar_embeddings(
        s.g2,
        [&](const RotationSystem& rs) {
            auto it = first.find(shared_signature(s.g2, s.g1, shared, rs));
            if (it == first.end()) return true;
            out.satisfiable = true;
            out.witness.emplace(it->second, rs);
            return false;
        },
        budget);
    return out;
}

Verdict brute_pqconstrained(const PQConstrainedInstance& p, OracleBudget budget) {
    Verdict out;
    (void)enumerate_planar_embeddings(
        p.g,
        [&](const RotationSystem& rs) {
            if (!satisfies_pq_constraints(p, rs)) return true;
            out.satisfiable = true;
            out.witness = rs;
            return false;
        },
        budget);
    return out;
}

}  // namespace syncplan
