#include "syncplan/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "syncplan/embedding.hpp"

namespace syncplan {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// phi with rot(v) == reverse(phi(rot u)) for the given rotations.
HalfEdgeMap consistent_map(Rng& rng, const CyclicOrder& ru, const CyclicOrder& rv) {
    const int k = static_cast<int>(ru.size());
    const int s = uniform(rng, 0, k - 1);
    HalfEdgeMap phi;
    for (int i = 0; i < k; ++i) phi.emplace(ru[static_cast<std::size_t>(i)], rv[static_cast<std::size_t>(((s - i) % k + k) % k)]);
    return phi;
}

HalfEdgeMap random_map(Rng& rng, const CyclicOrder& ru, const CyclicOrder& rv) {
    CyclicOrder target = rv;
    std::shuffle(target.begin(), target.end(), rng);
    HalfEdgeMap phi;
    for (std::size_t i = 0; i < ru.size(); ++i) phi.emplace(ru[i], target[i]);
    return phi;
}

CyclicOrder incident_order(const Multigraph& g, VertexId v) {
    auto inc = g.incident(v);
    return CyclicOrder(inc.begin(), inc.end());
}

}  // namespace

std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

Multigraph random_connected_multigraph(Rng& rng, int n, int extra_edges, int max_degree, double hub_bias) {
    Multigraph g;
    std::vector<VertexId> vs;
    for (int i = 0; i < n; ++i) vs.push_back(g.add_vertex());
    for (int i = 1; i < n; ++i) {
        std::vector<VertexId> open;
        for (int j = 0; j < i; ++j)
            if (g.degree(vs[static_cast<std::size_t>(j)]) < max_degree) open.push_back(vs[static_cast<std::size_t>(j)]);
        if (open.empty() || (g.degree(vs[0]) < max_degree && chance(rng, hub_bias))) open.assign(1, vs[0]);
        g.add_edge(open[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(open.size()) - 1))], vs[static_cast<std::size_t>(i)]);
    }
    for (int added = 0, tries = 0; n > 1 && added < extra_edges && tries < 20 * (extra_edges + 1); ++tries) {
        const VertexId a = vs[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
        const VertexId b = vs[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
        if (a == b || g.degree(a) >= max_degree || g.degree(b) >= max_degree) continue;
        g.add_edge(a, b);
        ++added;
    }
    return g;
}

SyncPlanInstance random_small_instance(Rng& rng, const SmallInstanceParams& params) {
    SyncPlanInstance inst;
    Multigraph& g = inst.g;
    std::vector<std::vector<VertexId>> comps;
    for (int c = 0; c < params.groups; ++c) {
        const int n = uniform(rng, params.min_vertices, params.max_vertices);
        const Multigraph part = random_connected_multigraph(rng, n, uniform(rng, 0, params.extra_edges), params.max_degree, params.hub_bias);
        std::map<VertexId, VertexId> map;
        std::vector<VertexId> comp;
        for (VertexId v : part.sorted_vertices()) {
            map[v] = g.add_vertex();
            comp.push_back(map[v]);
        }
        for (EdgeId e : part.sorted_edges()) {
            const auto [ha, hb] = part.halves(e);
            g.add_edge(map[part.vertex_of(ha)], map[part.vertex_of(hb)]);
        }
        comps.push_back(std::move(comp));
    }
    // Constraints are made consistent with one embedding most of the time.
    const auto base = planar_embed(g);
    auto rotation = [&](VertexId v) { return base ? base->at(v) : incident_order(g, v); };

    std::vector<VertexId> free;
    for (auto& comp : comps)
        for (VertexId v : comp)
            if (g.degree(v) >= 2) free.push_back(v);
    std::shuffle(free.begin(), free.end(), rng);
    std::vector<char> used(g.vertex_bound(), 0);
    const int pipes = uniform(rng, 0, params.max_pipes);
    for (int p = 0; p < pipes; ++p) {
        bool made = false;
        for (std::size_t i = 0; i < free.size() && !made; ++i) {
            const VertexId u = free[i];
            if (used[static_cast<std::size_t>(u.value)]) continue;
            for (std::size_t j = i + 1; j < free.size(); ++j) {
                const VertexId v = free[j];
                if (used[static_cast<std::size_t>(v.value)] || g.degree(u) != g.degree(v)) continue;
                const bool consistent = base && chance(rng, 0.6);
                inst.add_pipe(u, v, consistent ? consistent_map(rng, rotation(u), rotation(v)) : random_map(rng, rotation(u), rotation(v)));
                used[static_cast<std::size_t>(u.value)] = used[static_cast<std::size_t>(v.value)] = 1;
                made = true;
                break;
            }
        }
        std::shuffle(free.begin(), free.end(), rng);
    }
    std::vector<VertexId> qs;
    for (VertexId v : g.sorted_vertices())
        if (!used[static_cast<std::size_t>(v.value)] && g.degree(v) >= 3) qs.push_back(v);
    std::shuffle(qs.begin(), qs.end(), rng);
    if (static_cast<int>(qs.size()) > params.max_q) qs.resize(static_cast<std::size_t>(params.max_q));
    const bool flip_all = chance(rng, 0.5);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const VertexId q = qs[i];
        CyclicOrder psi = rotation(q);
        if (!base || chance(rng, 0.3)) {
            std::shuffle(psi.begin(), psi.end(), rng);
        } else if (flip_all) {
            psi = reversed(psi);
        }
        inst.set_kind(q, VertexKind::Q);
        inst.set_psi(q, std::move(psi));
    }
    for (std::size_t i = 0; i < qs.size();) {
        if (i + 1 < qs.size() && chance(rng, 0.6)) {
            inst.add_cell({qs[i], qs[i + 1]});
            i += 2;
        } else {
            inst.add_cell({qs[i]});
            i += 1;
        }
    }
    return inst;
}

namespace {

struct PlanarPatch {
    Multigraph g;
    RotationSystem rs;
};

// Grid rows x cols with one diagonal per square; edges off a spanning tree are
// dropped with probability drop. Rotations follow the geometric angle order.
PlanarPatch thinned_grid(Rng& rng, int rows, int cols, double drop) {
    PlanarPatch out;
    std::vector<VertexId> id(static_cast<std::size_t>(rows * cols));
    std::vector<std::pair<double, double>> pos(id.size());
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const auto i = static_cast<std::size_t>(r * cols + c);
            id[i] = out.g.add_vertex();
            pos[i] = {static_cast<double>(c), static_cast<double>(r)};
        }
    }
    std::vector<std::pair<int, int>> candidates;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int i = r * cols + c;
            if (c + 1 < cols) candidates.emplace_back(i, i + 1);
            if (r + 1 < rows) candidates.emplace_back(i, i + cols);
            if (c + 1 < cols && r + 1 < rows) {
                if (chance(rng, 0.5)) {
                    candidates.emplace_back(i, i + cols + 1);
                } else {
                    candidates.emplace_back(i + 1, i + cols);
                }
            }
        }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<int> parent(id.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<std::pair<int, int>> kept;
    std::vector<std::pair<int, int>> rest;
    for (auto [a, b] : candidates) {
        const int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            kept.emplace_back(a, b);
        } else {
            rest.emplace_back(a, b);
        }
    }
    for (auto e : rest)
        if (!chance(rng, drop)) kept.push_back(e);
    std::sort(kept.begin(), kept.end());
    for (auto [a, b] : kept) out.g.add_edge(id[static_cast<std::size_t>(a)], id[static_cast<std::size_t>(b)]);
    for (std::size_t i = 0; i < id.size(); ++i) {
        CyclicOrder rot = incident_order(out.g, id[i]);
        auto angle = [&](HalfEdgeId h) {
            const auto j = static_cast<std::size_t>(out.g.head(h).value - id[0].value);
            return std::atan2(pos[j].second - pos[i].second, pos[j].first - pos[i].first);
        };
        std::sort(rot.begin(), rot.end(), [&](HalfEdgeId x, HalfEdgeId y) { return angle(x) < angle(y); });
        out.rs[id[i]] = std::move(rot);
    }
    return out;
}

}  // namespace

Multigraph random_planar_graph(Rng& rng, int approx_edges) {
    const int side = std::max(2, static_cast<int>(std::sqrt(approx_edges / 2.2)));
    return thinned_grid(rng, side, side, 0.25).g;
}

SyncPlanInstance gen_random_pipes(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("gen_random_pipes: m must be positive");
    Rng rng(seed);
    SyncPlanInstance inst;
    RotationSystem rs;
    while (static_cast<int>(inst.g.num_edges()) < m) {
        const int side = uniform(rng, 4, 6);
        PlanarPatch patch = thinned_grid(rng, side, side, 0.3);
        std::map<VertexId, VertexId> vmap;
        for (VertexId v : patch.g.sorted_vertices()) vmap[v] = inst.g.add_vertex();
        std::map<HalfEdgeId, HalfEdgeId> hmap;
        for (EdgeId e : patch.g.sorted_edges()) {
            if (static_cast<int>(inst.g.num_edges()) >= m) break;
            const auto [ha, hb] = patch.g.halves(e);
            const EdgeId f = inst.g.add_edge(vmap[patch.g.vertex_of(ha)], vmap[patch.g.vertex_of(hb)]);
            const auto [fa, fb] = inst.g.halves(f);
            hmap[ha] = fa;
            hmap[hb] = fb;
        }
        for (auto [v, w] : vmap) {
            CyclicOrder rot;
            for (HalfEdgeId h : patch.rs.at(v))
                if (auto it = hmap.find(h); it != hmap.end()) rot.push_back(it->second);
            rs[w] = std::move(rot);
        }
    }
    // Pair vertices of equal degree >= 3 across the whole instance.
    std::map<int, std::vector<VertexId>> by_degree;
    for (VertexId v : inst.g.sorted_vertices())
        if (inst.g.degree(v) >= 3 && chance(rng, 0.6)) by_degree[inst.g.degree(v)].push_back(v);
    for (auto& [d, vs] : by_degree) {
        std::shuffle(vs.begin(), vs.end(), rng);
        for (std::size_t i = 0; i + 1 < vs.size(); i += 2) inst.add_pipe(vs[i], vs[i + 1], consistent_map(rng, rs.at(vs[i]), rs.at(vs[i + 1])));
    }
    return inst;
}

SyncPlanInstance gen_toroidal(const std::vector<int>& cycle_lengths, std::uint64_t seed) {
    int k = 0;
    for (int c : cycle_lengths) {
        if (c < 1) throw std::invalid_argument("gen_toroidal: cycle lengths must be positive");
        k += c;
    }
    if (k < 1) throw std::invalid_argument("gen_toroidal: empty cycle type");
    Rng rng(seed);
    SyncPlanInstance inst;
    const VertexId u = inst.g.add_vertex(), v = inst.g.add_vertex();
    std::vector<HalfEdgeId> at_u, at_v;
    for (int i = 0; i < k; ++i) {
        const auto [a, b] = inst.g.halves(inst.g.add_edge(u, v));
        at_u.push_back(a);
        at_v.push_back(b);
    }
    // pi on edge indices with the requested cycles, then phi_uv(pi(i)) = twin of i.
    const auto label = random_permutation(rng, k);
    std::vector<int> pi(static_cast<std::size_t>(k));
    int start = 0;
    for (int c : cycle_lengths) {
        for (int j = 0; j < c; ++j)
            pi[static_cast<std::size_t>(label[static_cast<std::size_t>(start + j)])] = label[static_cast<std::size_t>(start + (j + 1) % c)];
        start += c;
    }
    HalfEdgeMap phi;
    for (int i = 0; i < k; ++i) phi.emplace(at_u[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])], at_v[static_cast<std::size_t>(i)]);
    inst.add_pipe(u, v, std::move(phi));
    return inst;
}

namespace {

// Edge e with halves 2e and 2e+1, so ids can be shared between graphs.
void add_numbered_edge(Multigraph& g, int e, VertexId a, VertexId b) {
    g.add_edge(EdgeId{e}, a, b, HalfEdgeId{2 * e}, HalfEdgeId{2 * e + 1});
}

}  // namespace

ClusteredGraph random_clustered_graph(Rng& rng, int n, int extra_edges, int clusters, bool connected) {
    if (n < 1 || clusters < 1 || clusters > n + 1) throw std::invalid_argument("random_clustered_graph: bad parameters");
    ClusteredGraph cg;
    for (int v = 0; v < n; ++v) cg.g.add_vertex(VertexId{v});
    std::set<std::pair<int, int>> used;
    int next = 0;
    auto link = [&](int a, int b) {
        if (a == b || !used.insert(std::minmax(a, b)).second) return false;
        add_numbered_edge(cg.g, next++, VertexId{a}, VertexId{b});
        return true;
    };
    for (int v = 1; v < n; ++v)
        if (connected || chance(rng, 0.75)) link(uniform(rng, 0, v - 1), v);
    for (int added = 0, tries = 0; added < extra_edges && tries < 50; ++tries)
        if (link(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1))) ++added;
    // Clusters 1..clusters-1 hang below a random earlier cluster and own one vertex each.
    const auto order = random_permutation(rng, n);
    for (int c = 1; c < clusters; ++c) {
        cg.clusters.emplace_back();
        cg.clusters[static_cast<std::size_t>(uniform(rng, 0, c - 1))].children.push_back(c);
        cg.clusters.back().vertices.push_back(VertexId{order[static_cast<std::size_t>(c - 1)]});
    }
    for (int i = clusters - 1; i < n; ++i)
        cg.clusters[static_cast<std::size_t>(uniform(rng, 0, clusters - 1))].vertices.push_back(VertexId{order[static_cast<std::size_t>(i)]});
    return cg;
}

SefeInstance random_sefe_instance(Rng& rng, int shared_vertices, int shared_extra, int private_vertices, int private_edges) {
    if (shared_vertices < 1) throw std::invalid_argument("random_sefe_instance: needs a shared vertex");
    SefeInstance s;
    std::set<std::pair<int, int>> used;
    int next = 0;
    auto link = [&](std::initializer_list<Multigraph*> gs, int a, int b) {
        if (a == b || !used.insert(std::minmax(a, b)).second) return false;
        for (Multigraph* g : gs) add_numbered_edge(*g, next, VertexId{a}, VertexId{b});
        ++next;
        return true;
    };
    for (int v = 0; v < shared_vertices; ++v) {
        s.g1.add_vertex(VertexId{v});
        s.g2.add_vertex(VertexId{v});
    }
    for (int v = 1; v < shared_vertices; ++v) link({&s.g1, &s.g2}, uniform(rng, 0, v - 1), v);
    for (int added = 0, tries = 0; added < shared_extra && tries < 50; ++tries)
        if (link({&s.g1, &s.g2}, uniform(rng, 0, shared_vertices - 1), uniform(rng, 0, shared_vertices - 1))) ++added;
    int id = shared_vertices;
    for (Multigraph* g : {&s.g1, &s.g2}) {
        const int first = id;
        for (int i = 0; i < private_vertices; ++i) g->add_vertex(VertexId{id++});
        // Private vertices hang off earlier vertices, then random private chords.
        std::vector<int> pool;
        for (int v = 0; v < shared_vertices; ++v) pool.push_back(v);
        for (int v = first; v < id; ++v) {
            link({g}, pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))], v);
            pool.push_back(v);
        }
        const int k = static_cast<int>(pool.size());
        for (int added = 0, tries = 0; added < private_edges && tries < 50; ++tries)
            if (link({g}, pool[static_cast<std::size_t>(uniform(rng, 0, k - 1))], pool[static_cast<std::size_t>(uniform(rng, 0, k - 1))])) ++added;
    }
    return s;
}

ClusteredGraph gen_cluster_like_graph(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("gen_cluster_like_graph: m must be positive");
    Rng rng(seed);
    const int side = std::max(2, static_cast<int>(std::sqrt(m / 2.3)) + 1);
    ClusteredGraph cg;
    cg.g = thinned_grid(rng, side, side, 0.3).g;
    const VertexId base = cg.g.sorted_vertices().front();
    // Quadrant splits down to regions of at most 16 vertices.
    std::function<void(int, int, int, int, int)> split = [&](int c, int r0, int r1, int c0, int c1) {
        if ((r1 - r0) * (c1 - c0) <= 16 || r1 - r0 < 2 || c1 - c0 < 2) {
            for (int r = r0; r < r1; ++r)
                for (int q = c0; q < c1; ++q) cg.clusters[static_cast<std::size_t>(c)].vertices.push_back(VertexId{base.value + r * side + q});
            return;
        }
        const int rm = (r0 + r1) / 2, cm = (c0 + c1) / 2;
        for (auto [a, b, x, y] : {std::array{r0, rm, c0, cm}, std::array{r0, rm, cm, c1}, std::array{rm, r1, c0, cm}, std::array{rm, r1, cm, c1}}) {
            const int child = static_cast<int>(cg.clusters.size());
            cg.clusters.emplace_back();
            cg.clusters[static_cast<std::size_t>(c)].children.push_back(child);
            split(child, a, b, x, y);
        }
    };
    split(0, 0, side, 0, side);
    return cg;
}

SefeInstance gen_sefe_like_pair(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("gen_sefe_like_pair: m must be positive");
    Rng rng(seed);
    const int side = std::max(2, static_cast<int>(std::sqrt(m / 2.5)) + 1);
    SefeInstance s;
    for (int v = 0; v < side * side; ++v) {
        s.g1.add_vertex(VertexId{v});
        s.g2.add_vertex(VertexId{v});
    }
    std::vector<std::pair<int, int>> grid;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c) {
            const int i = r * side + c;
            if (c + 1 < side) grid.emplace_back(i, i + 1);
            if (r + 1 < side) grid.emplace_back(i, i + side);
        }
    std::shuffle(grid.begin(), grid.end(), rng);
    std::vector<int> parent(static_cast<std::size_t>(side * side));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<std::pair<int, int>> shared;
    for (auto [a, b] : grid) {
        const int ra = find(a), rb = find(b);
        if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
        if (ra != rb || chance(rng, 0.7)) shared.emplace_back(a, b);
    }
    std::sort(shared.begin(), shared.end());
    int next = 0;
    for (auto [a, b] : shared) {
        add_numbered_edge(s.g1, next, VertexId{a}, VertexId{b});
        add_numbered_edge(s.g2, next++, VertexId{a}, VertexId{b});
    }
    for (int r = 0; r + 1 < side; ++r)
        for (int c = 0; c + 1 < side; ++c) {
            const int i = r * side + c;
            if (chance(rng, 0.6)) add_numbered_edge(s.g1, next++, VertexId{i}, VertexId{i + side + 1});
            if (chance(rng, 0.6)) add_numbered_edge(s.g2, next++, VertexId{i + 1}, VertexId{i + side});
        }
    return s;
}

}  // namespace syncplan
