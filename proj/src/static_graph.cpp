#include "syncplan/static_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

namespace syncplan {

Biconnected biconnected_components(const StaticGraph& g) {
    Biconnected out;
    const auto n = static_cast<std::size_t>(g.n);
    out.is_cut.assign(n, false);
    out.block_of_edge.assign(static_cast<std::size_t>(g.m()), -1);

    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> edge_stack;
    struct Frame {
        int v;
        int parent_edge;
        std::size_t next;
    };
    std::vector<Frame> frames;
    int timer = 0;

    for (int s = 0; s < g.n; ++s) {
        if (disc[static_cast<std::size_t>(s)] != -1) continue;
        disc[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = timer++;
        frames.push_back({s, -1, 0});
        int root_children = 0;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto v = static_cast<std::size_t>(f.v);
            if (f.next < g.inc[v].size()) {
                const int h = g.inc[v][f.next++];
                const int e = StaticGraph::edge_of(h);
                if (e == f.parent_edge) continue;
                const auto w = static_cast<std::size_t>(g.head(h));
                if (disc[w] == -1) {
                    edge_stack.push_back(e);
                    disc[w] = low[w] = timer++;
                    if (f.v == s) ++root_children;
                    frames.push_back({static_cast<int>(w), e, 0});
                } else if (disc[w] < disc[v]) {
                    edge_stack.push_back(e);
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            const Frame done = f;
            frames.pop_back();
            if (frames.empty()) break;
            const auto p = static_cast<std::size_t>(frames.back().v);
            const auto d = static_cast<std::size_t>(done.v);
            low[p] = std::min(low[p], low[d]);
            if (low[d] >= disc[p]) {
                if (frames.back().v != s) out.is_cut[p] = true;
                const int b = static_cast<int>(out.blocks.size());
                auto& block = out.blocks.emplace_back();
                while (true) {
                    const int e = edge_stack.back();
                    edge_stack.pop_back();
                    block.push_back(e);
                    out.block_of_edge[static_cast<std::size_t>(e)] = b;
                    if (e == done.parent_edge) break;
                }
            }
        }
        if (root_children >= 2) out.is_cut[static_cast<std::size_t>(s)] = true;
    }
    return out;
}

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;

}  // namespace

std::optional<LocalRotation> planar_rotation(const StaticGraph& g) {
    // Parallel edges are subdivided so the planarity test sees a simple graph.
    BGraph bg(static_cast<std::size_t>(g.n));
    struct Piece {
        int a, ha, b, hb;
    };
    std::vector<Piece> pieces;
    std::map<std::pair<int, int>, int> seen;
    int next_vertex = g.n;
    auto add = [&](int a, int ha, int b, int hb) {
        boost::add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                        static_cast<int>(pieces.size()), bg);
        pieces.push_back({a, ha, b, hb});
    };
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.ends[static_cast<std::size_t>(e)];
        auto key = std::minmax(u, v);
        if (seen.emplace(key, e).second) {
            add(u, 2 * e, v, 2 * e + 1);
        } else {
            const int s = next_vertex++;
            boost::add_vertex(bg);
            add(u, 2 * e, s, -1);
            add(s, -1, v, 2 * e + 1);
        }
    }
    std::vector<std::vector<BEdge>> emb(boost::num_vertices(bg));
    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
    if (!planar) return std::nullopt;

    auto index = boost::get(boost::edge_index, bg);
    LocalRotation rot(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
        for (const BEdge& be : emb[static_cast<std::size_t>(v)]) {
            const Piece& p = pieces[static_cast<std::size_t>(boost::get(index, be))];
            rot[static_cast<std::size_t>(v)].push_back(p.a == v ? p.ha : p.hb);
        }
    }
    return rot;
}

int local_genus(const StaticGraph& g, const LocalRotation& rot) {
    const auto halves = static_cast<std::size_t>(2 * g.m());
    std::vector<int> pos(halves, 0);
    for (const auto& r : rot) {
        for (std::size_t i = 0; i < r.size(); ++i) pos[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
    }
    std::vector<char> seen(halves, 0);
    int faces = 0;
    for (std::size_t h0 = 0; h0 < halves; ++h0) {
        if (seen[h0]) continue;
        ++faces;
        std::size_t h = h0;
        while (!seen[h]) {
            seen[h] = 1;
            const int t = StaticGraph::twin(static_cast<int>(h));
            const auto& r = rot[static_cast<std::size_t>(g.vertex_of(t))];
            h = static_cast<std::size_t>(r[(static_cast<std::size_t>(pos[static_cast<std::size_t>(t)]) + 1) % r.size()]);
        }
    }
    // Components via union-find.
    std::vector<int> parent(static_cast<std::size_t>(g.n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int comps = g.n;
    for (const auto& [a, b] : g.ends) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            --comps;
        }
    }
    for (int v = 0; v < g.n; ++v) {
        if (g.degree(v) == 0) ++faces;
    }
    return (2 * comps - g.n + g.m() - faces) / 2;
}

}  // namespace syncplan
