#include "syncplan/spqr.hpp"

#include <algorithm>
#include <list>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace syncplan {

std::vector<int> SPQRTree::vertices(int node) const {
    std::vector<int> out;
    for (int e : nodes[static_cast<std::size_t>(node)].edges) {
        for (int x : ends[static_cast<std::size_t>(e)]) {
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    }
    return out;
}

namespace {

enum class EdgeType : std::uint8_t { Unseen, Tree, Frond, Removed };
enum class CompType : std::uint8_t { Bond, Polygon, Tric };

struct Component {
    std::vector<int> edges;
    CompType type = CompType::Polygon;
};

// Path-search based split into triconnected components; names follow the
// classic description (NUMBER, LOWPT1/2, ND, HIGHPT, ESTACK, TSTACK).
class TricComp {
public:
    explicit TricComp(const StaticGraph& g) : n_(g.n) {
        for (int e = 0; e < g.m(); ++e) new_edge(g.ends[static_cast<std::size_t>(e)][0], g.ends[static_cast<std::size_t>(e)][1]);
        num_real_ = g.m();
    }

    std::vector<Component> run() {
        if (n_ == 2) {
            Component c;
            c.type = CompType::Bond;
            for (int e = 0; e < num_real_; ++e) c.edges.push_back(e);
            comps_.push_back(std::move(c));
            return std::move(comps_);
        }
        split_multi_edges();
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (int e = 0; e < edge_count(); ++e) {
            if (type_[static_cast<std::size_t>(e)] == EdgeType::Removed) continue;
            adj_[static_cast<std::size_t>(src_[static_cast<std::size_t>(e)])].push_back(e);
            adj_[static_cast<std::size_t>(tgt_[static_cast<std::size_t>(e)])].push_back(e);
        }
        const auto n = static_cast<std::size_t>(n_);
        number_.assign(n, 0);
        lowpt1_.assign(n, 0);
        lowpt2_.assign(n, 0);
        nd_.assign(n, 0);
        father_.assign(n, -1);
        degree_.assign(n, 0);
        tree_arc_.assign(n, -1);
        node_at_.assign(n + 1, -1);
        num_count_ = 0;
        start_ = 0;
        dfs1(start_, -1);
        if (num_count_ != n_) throw std::invalid_argument("spqr_tree: graph is not connected");
        for (int e = 0; e < edge_count(); ++e) {
            const auto ei = static_cast<std::size_t>(e);
            if (type_[ei] == EdgeType::Removed) continue;
            const bool up = number_[static_cast<std::size_t>(tgt_[ei])] > number_[static_cast<std::size_t>(src_[ei])];
            if ((up && type_[ei] == EdgeType::Frond) || (!up && type_[ei] == EdgeType::Tree)) std::swap(src_[ei], tgt_[ei]);
        }
        build_acceptable_adj();
        dfs2();
        tstack_h_.clear();
        tstack_a_.clear();
        tstack_b_.clear();
        push_eos();
        path_search(start_);
        Component last;
        while (!estack_.empty()) {
            last.edges.push_back(estack_.back());
            estack_.pop_back();
        }
        if (!last.edges.empty()) {
            last.type = last.edges.size() > 4 ? CompType::Tric : CompType::Polygon;
            comps_.push_back(std::move(last));
        }
        return std::move(comps_);
    }

    int num_real() const { return num_real_; }
    int edge_count() const { return static_cast<int>(src_.size()); }
    int src(int e) const { return src_[static_cast<std::size_t>(e)]; }
    int tgt(int e) const { return tgt_[static_cast<std::size_t>(e)]; }

private:
    using Iter = std::list<int>::iterator;

    int new_edge(int a, int b) {
        src_.push_back(a);
        tgt_.push_back(b);
        type_.push_back(EdgeType::Unseen);
        start_flag_.push_back(0);
        in_adj_.emplace_back();
        in_adj_valid_.push_back(0);
        in_high_.emplace_back();
        in_high_valid_.push_back(0);
        return static_cast<int>(src_.size()) - 1;
    }

    Component& new_comp(CompType t) {
        comps_.emplace_back();
        comps_.back().type = t;
        return comps_.back();
    }
    static void finish_tric_or_poly(Component& c, int e) {
        c.edges.push_back(e);
        c.type = c.edges.size() >= 4 ? CompType::Tric : CompType::Polygon;
    }

    void split_multi_edges() {
        std::vector<int> order(static_cast<std::size_t>(num_real_));
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](int e) {
            const int a = src(e), b = tgt(e);
            return std::pair<int, int>(std::min(a, b), std::max(a, b));
        };
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i + 1;
            while (j < order.size() && key(order[j]) == key(order[i])) ++j;
            if (j - i >= 2) {
                const int e0 = order[i];
                const int virt = new_edge(src(e0), tgt(e0));
                Component& c = new_comp(CompType::Bond);
                c.edges.push_back(virt);
                for (std::size_t k = i; k < j; ++k) {
                    c.edges.push_back(order[k]);
                    type_[static_cast<std::size_t>(order[k])] = EdgeType::Removed;
                }
            }
            i = j;
        }
    }

    void dfs1(int v, int u) {
        const auto vi = static_cast<std::size_t>(v);
        number_[vi] = ++num_count_;
        father_[vi] = u;
        degree_[vi] = static_cast<int>(adj_[vi].size());
        lowpt1_[vi] = lowpt2_[vi] = number_[vi];
        nd_[vi] = 1;
        for (int e : adj_[vi]) {
            const auto ei = static_cast<std::size_t>(e);
            if (type_[ei] != EdgeType::Unseen) continue;
            const int w = src_[ei] == v ? tgt_[ei] : src_[ei];
            const auto wi = static_cast<std::size_t>(w);
            if (number_[wi] == 0) {
                type_[ei] = EdgeType::Tree;
                tree_arc_[wi] = e;
                dfs1(w, v);
                if (lowpt1_[wi] < lowpt1_[vi]) {
                    lowpt2_[vi] = std::min(lowpt1_[vi], lowpt2_[wi]);
                    lowpt1_[vi] = lowpt1_[wi];
                } else if (lowpt1_[wi] == lowpt1_[vi]) {
                    lowpt2_[vi] = std::min(lowpt2_[vi], lowpt2_[wi]);
                } else {
                    lowpt2_[vi] = std::min(lowpt2_[vi], lowpt1_[wi]);
                }
                nd_[vi] += nd_[wi];
            } else {
                type_[ei] = EdgeType::Frond;
                if (number_[wi] < lowpt1_[vi]) {
                    lowpt2_[vi] = lowpt1_[vi];
                    lowpt1_[vi] = number_[wi];
                } else if (number_[wi] > lowpt1_[vi]) {
                    lowpt2_[vi] = std::min(lowpt2_[vi], number_[wi]);
                }
            }
        }
    }

    void build_acceptable_adj() {
        a_.assign(static_cast<std::size_t>(n_), {});
        const int max = 3 * n_ + 2;
        std::vector<std::vector<int>> bucket(static_cast<std::size_t>(max + 1));
        for (int e = 0; e < edge_count(); ++e) {
            const auto ei = static_cast<std::size_t>(e);
            if (type_[ei] == EdgeType::Removed) continue;
            const auto w = static_cast<std::size_t>(tgt_[ei]);
            int phi;
            if (type_[ei] == EdgeType::Frond) {
                phi = 3 * number_[w] + 1;
            } else {
                phi = lowpt2_[w] < number_[static_cast<std::size_t>(src_[ei])] ? 3 * lowpt1_[w] : 3 * lowpt1_[w] + 2;
            }
            bucket[static_cast<std::size_t>(phi)].push_back(e);
        }
        for (auto& b : bucket) {
            for (int e : b) {
                auto& list = a_[static_cast<std::size_t>(src(e))];
                in_adj_[static_cast<std::size_t>(e)] = list.insert(list.end(), e);
                in_adj_valid_[static_cast<std::size_t>(e)] = 1;
            }
        }
    }

    void dfs2() {
        const auto n = static_cast<std::size_t>(n_);
        newnum_.assign(n, 0);
        highpt_.assign(n, {});
        num_count_ = n_;
        new_path_ = true;
        path_finder(start_);
        std::vector<int> old2new(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) old2new[static_cast<std::size_t>(number_[v])] = newnum_[v];
        for (std::size_t v = 0; v < n; ++v) {
            node_at_[static_cast<std::size_t>(newnum_[v])] = static_cast<int>(v);
            lowpt1_[v] = old2new[static_cast<std::size_t>(lowpt1_[v])];
            lowpt2_[v] = old2new[static_cast<std::size_t>(lowpt2_[v])];
        }
    }

    void path_finder(int v) {
        const auto vi = static_cast<std::size_t>(v);
        newnum_[vi] = num_count_ - nd_[vi] + 1;
        for (int e : a_[vi]) {
            const auto ei = static_cast<std::size_t>(e);
            const int w = tgt_[ei];
            if (new_path_) {
                new_path_ = false;
                start_flag_[ei] = 1;
            }
            if (type_[ei] == EdgeType::Tree) {
                path_finder(w);
                --num_count_;
            } else {
                auto& hl = highpt_[static_cast<std::size_t>(w)];
                in_high_[ei] = hl.insert(hl.end(), newnum_[vi]);
                in_high_valid_[ei] = 1;
                new_path_ = true;
            }
        }
    }

    int high(int v) const {
        const auto& hl = highpt_[static_cast<std::size_t>(v)];
        return hl.empty() ? 0 : hl.front();
    }
    void del_high(int e) {
        const auto ei = static_cast<std::size_t>(e);
        if (!in_high_valid_[ei]) return;
        highpt_[static_cast<std::size_t>(tgt_[ei])].erase(in_high_[ei]);
        in_high_valid_[ei] = 0;
    }
    void del_adj(int e) {
        const auto ei = static_cast<std::size_t>(e);
        if (!in_adj_valid_[ei]) return;
        a_[static_cast<std::size_t>(src_[ei])].erase(in_adj_[ei]);
        in_adj_valid_[ei] = 0;
    }
    int first_child(int v) const { return tgt(a_[static_cast<std::size_t>(v)].front()); }

    void tstack_push(int h, int a, int b) {
        tstack_h_.push_back(h);
        tstack_a_.push_back(a);
        tstack_b_.push_back(b);
    }
    void push_eos() { tstack_push(0, -1, 0); }
    void tstack_pop() {
        tstack_h_.pop_back();
        tstack_a_.pop_back();
        tstack_b_.pop_back();
    }
    bool not_eos() const { return tstack_a_.back() != -1; }
    int top_a() const { return tstack_a_.back(); }
    int top_b() const { return tstack_b_.back(); }
    int top_h() const { return tstack_h_.back(); }

    int pop_estack() {
        const int e = estack_.back();
        estack_.pop_back();
        return e;
    }

    void path_search(int v) {
        const int vnum = newnum_[static_cast<std::size_t>(v)];
        auto& adj = a_[static_cast<std::size_t>(v)];
        int outv = static_cast<int>(adj.size());
        for (Iter it = adj.begin(); it != adj.end();) {
            Iter it_next = std::next(it);
            const int e = *it;
            const auto ei = static_cast<std::size_t>(e);
            int w = tgt_[ei];
            int wnum = newnum_[static_cast<std::size_t>(w)];

            if (type_[ei] == EdgeType::Tree) {
                if (start_flag_[ei]) {
                    int y = 0, b = 0;
                    const int lw = lowpt1_[static_cast<std::size_t>(w)];
                    if (top_a() > lw) {
                        do {
                            y = std::max(y, top_h());
                            b = top_b();
                            tstack_pop();
                        } while (top_a() > lw);
                        tstack_push(y, lw, b);
                    } else {
                        tstack_push(wnum + nd_[static_cast<std::size_t>(w)] - 1, lw, vnum);
                    }
                    push_eos();
                }

                path_search(w);
                estack_.push_back(tree_arc_[static_cast<std::size_t>(w)]);

                int x = -1;
                while (vnum != 1 &&
                       (top_a() == vnum ||
                        (degree_[static_cast<std::size_t>(w)] == 2 && newnum_[static_cast<std::size_t>(first_child(w))] > wnum))) {
                    const int a = top_a();
                    const int b = top_b();
                    int e_virt = -1;
                    if (a == vnum && father_[static_cast<std::size_t>(node_at_[static_cast<std::size_t>(b)])] ==
                                         node_at_[static_cast<std::size_t>(a)]) {
                        tstack_pop();
                        continue;
                    }
                    int e_ab = -1;
                    if (degree_[static_cast<std::size_t>(w)] == 2 && newnum_[static_cast<std::size_t>(first_child(w))] > wnum) {
                        const int e1 = pop_estack();
                        const int e2 = pop_estack();
                        del_adj(e2);
                        x = tgt(e2);
                        e_virt = new_edge(v, x);
                        --degree_[static_cast<std::size_t>(x)];
                        --degree_[static_cast<std::size_t>(v)];
                        Component& c = new_comp(CompType::Polygon);
                        c.edges = {e1, e2, e_virt};
                        if (!estack_.empty()) {
                            const int top = estack_.back();
                            if (src(top) == x && tgt(top) == v) {
                                e_ab = pop_estack();
                                del_adj(e_ab);
                                del_high(e_ab);
                            }
                        }
                    } else {
                        const int h = top_h();
                        tstack_pop();
                        Component c;
                        const int na = node_at_[static_cast<std::size_t>(a)];
                        const int nb = node_at_[static_cast<std::size_t>(b)];
                        while (!estack_.empty()) {
                            const int xy = estack_.back();
                            const int xs = src(xy), xt = tgt(xy);
                            const int ns = newnum_[static_cast<std::size_t>(xs)], nt = newnum_[static_cast<std::size_t>(xt)];
                            if (!(vnum <= ns && ns <= h && vnum <= nt && nt <= h)) break;
                            if ((xs == na && xt == nb) || (xt == na && xs == nb)) {
                                e_ab = pop_estack();
                                del_adj(e_ab);
                                del_high(e_ab);
                            } else {
                                const int eh = pop_estack();
                                if (in_adj_[static_cast<std::size_t>(eh)] != it || !in_adj_valid_[static_cast<std::size_t>(eh)]) {
                                    del_adj(eh);
                                    del_high(eh);
                                }
                                c.edges.push_back(eh);
                                --degree_[static_cast<std::size_t>(xs)];
                                --degree_[static_cast<std::size_t>(xt)];
                            }
                        }
                        e_virt = new_edge(na, nb);
                        finish_tric_or_poly(c, e_virt);
                        comps_.push_back(std::move(c));
                        x = nb;
                    }

                    if (e_ab != -1) {
                        Component& c = new_comp(CompType::Bond);
                        c.edges = {e_ab, e_virt};
                        e_virt = new_edge(v, x);
                        comps_.back().edges.push_back(e_virt);
                        --degree_[static_cast<std::size_t>(x)];
                        --degree_[static_cast<std::size_t>(v)];
                    }

                    estack_.push_back(e_virt);
                    *it = e_virt;
                    in_adj_[static_cast<std::size_t>(e_virt)] = it;
                    in_adj_valid_[static_cast<std::size_t>(e_virt)] = 1;
                    ++degree_[static_cast<std::size_t>(x)];
                    ++degree_[static_cast<std::size_t>(v)];
                    father_[static_cast<std::size_t>(x)] = v;
                    tree_arc_[static_cast<std::size_t>(x)] = e_virt;
                    type_[static_cast<std::size_t>(e_virt)] = EdgeType::Tree;
                    w = x;
                    wnum = newnum_[static_cast<std::size_t>(w)];
                }

                const auto wi = static_cast<std::size_t>(w);
                if (lowpt2_[wi] >= vnum && lowpt1_[wi] < vnum && (father_[static_cast<std::size_t>(v)] != start_ || outv >= 2)) {
                    Component c;
                    int xx = 0, yy = 0;
                    while (!estack_.empty()) {
                        const int xy = estack_.back();
                        xx = newnum_[static_cast<std::size_t>(src(xy))];
                        yy = newnum_[static_cast<std::size_t>(tgt(xy))];
                        if (!((wnum <= xx && xx < wnum + nd_[wi]) || (wnum <= yy && yy < wnum + nd_[wi]))) break;
                        c.edges.push_back(pop_estack());
                        del_high(xy);
                        --degree_[static_cast<std::size_t>(node_at_[static_cast<std::size_t>(xx)])];
                        --degree_[static_cast<std::size_t>(node_at_[static_cast<std::size_t>(yy)])];
                    }
                    const int low = node_at_[static_cast<std::size_t>(lowpt1_[wi])];
                    int e_virt = new_edge(v, low);
                    finish_tric_or_poly(c, e_virt);
                    comps_.push_back(std::move(c));

                    if ((xx == vnum && yy == lowpt1_[wi]) || (yy == vnum && xx == lowpt1_[wi])) {
                        const int eh = pop_estack();
                        if (in_adj_[static_cast<std::size_t>(eh)] != it || !in_adj_valid_[static_cast<std::size_t>(eh)]) del_adj(eh);
                        Component& bond = new_comp(CompType::Bond);
                        bond.edges = {eh, e_virt};
                        e_virt = new_edge(v, low);
                        comps_.back().edges.push_back(e_virt);
                        in_high_[static_cast<std::size_t>(e_virt)] = in_high_[static_cast<std::size_t>(eh)];
                        in_high_valid_[static_cast<std::size_t>(e_virt)] = in_high_valid_[static_cast<std::size_t>(eh)];
                        in_high_valid_[static_cast<std::size_t>(eh)] = 0;
                        --degree_[static_cast<std::size_t>(v)];
                        --degree_[static_cast<std::size_t>(low)];
                    }

                    if (low != father_[static_cast<std::size_t>(v)]) {
                        estack_.push_back(e_virt);
                        *it = e_virt;
                        in_adj_[static_cast<std::size_t>(e_virt)] = it;
                        in_adj_valid_[static_cast<std::size_t>(e_virt)] = 1;
                        if (!in_high_valid_[static_cast<std::size_t>(e_virt)] && high(low) < vnum) {
                            auto& hl = highpt_[static_cast<std::size_t>(low)];
                            in_high_[static_cast<std::size_t>(e_virt)] = hl.insert(hl.begin(), vnum);
                            in_high_valid_[static_cast<std::size_t>(e_virt)] = 1;
                        }
                        ++degree_[static_cast<std::size_t>(v)];
                        ++degree_[static_cast<std::size_t>(low)];
                    } else {
                        adj.erase(it);
                        Component& bond = new_comp(CompType::Bond);
                        bond.edges.push_back(e_virt);
                        e_virt = new_edge(low, v);
                        comps_.back().edges.push_back(e_virt);
                        const int eh = tree_arc_[static_cast<std::size_t>(v)];
                        comps_.back().edges.push_back(eh);
                        tree_arc_[static_cast<std::size_t>(v)] = e_virt;
                        type_[static_cast<std::size_t>(e_virt)] = EdgeType::Tree;
                        in_adj_[static_cast<std::size_t>(e_virt)] = in_adj_[static_cast<std::size_t>(eh)];
                        in_adj_valid_[static_cast<std::size_t>(e_virt)] = 1;
                        *in_adj_[static_cast<std::size_t>(eh)] = e_virt;
                        in_adj_valid_[static_cast<std::size_t>(eh)] = 0;
                    }
                }

                if (start_flag_[ei]) {
                    while (not_eos()) tstack_pop();
                    tstack_pop();
                }
                while (not_eos() && top_b() != vnum && high(v) > top_h()) tstack_pop();
                --outv;
            } else {
                if (start_flag_[ei]) {
                    int y = 0, b = 0;
                    if (top_a() > wnum) {
                        do {
                            y = std::max(y, top_h());
                            b = top_b();
                            tstack_pop();
                        } while (top_a() > wnum);
                        tstack_push(y, wnum, b);
                    } else {
                        tstack_push(vnum, wnum, vnum);
                    }
                }
                if (w == father_[static_cast<std::size_t>(v)]) {
                    const int tree = tree_arc_[static_cast<std::size_t>(v)];
                    Component& bond = new_comp(CompType::Bond);
                    const int e_virt = new_edge(w, v);
                    bond.edges = {e, tree, e_virt};
                    type_[static_cast<std::size_t>(e_virt)] = EdgeType::Tree;
                    in_adj_[static_cast<std::size_t>(e_virt)] = in_adj_[static_cast<std::size_t>(tree)];
                    in_adj_valid_[static_cast<std::size_t>(e_virt)] = 1;
                    *in_adj_[static_cast<std::size_t>(tree)] = e_virt;
                    in_adj_valid_[static_cast<std::size_t>(tree)] = 0;
                    tree_arc_[static_cast<std::size_t>(v)] = e_virt;
                    --degree_[static_cast<std::size_t>(v)];
                    --degree_[static_cast<std::size_t>(w)];
                } else {
                    estack_.push_back(e);
                }
            }
            it = it_next;
        }
    }

    int n_;
    int num_real_ = 0;
    std::vector<int> src_, tgt_;
    std::vector<EdgeType> type_;
    std::vector<char> start_flag_;
    std::vector<Iter> in_adj_;
    std::vector<char> in_adj_valid_;
    std::vector<Iter> in_high_;
    std::vector<char> in_high_valid_;

    std::vector<std::vector<int>> adj_;
    std::vector<std::list<int>> a_;
    std::vector<std::list<int>> highpt_;
    std::vector<int> number_, newnum_, lowpt1_, lowpt2_, nd_, father_, degree_, tree_arc_, node_at_;
    int num_count_ = 0;
    int start_ = 0;
    bool new_path_ = true;

    std::vector<int> estack_;
    std::vector<int> tstack_h_, tstack_a_, tstack_b_;
    std::vector<Component> comps_;
};

SPQRTree::Kind classify(const std::vector<int>& edges, const std::vector<std::array<int, 2>>& ends) {
    std::unordered_map<int, int> deg;
    for (int e : edges) {
        for (int x : ends[static_cast<std::size_t>(e)]) ++deg[x];
    }
    if (deg.size() == 2) return SPQRTree::Kind::Bond;
    bool cycle = edges.size() == deg.size();
    for (auto [v, d] : deg) cycle = cycle && d == 2;
    return cycle ? SPQRTree::Kind::Polygon : SPQRTree::Kind::Rigid;
}

}  // namespace

SPQRTree spqr_tree(const StaticGraph& g) {
    if (g.n < 2 || g.m() < 1) throw std::invalid_argument("spqr_tree: graph too small");
    TricComp tc(g);
    std::vector<Component> comps = tc.run();

    SPQRTree out;
    out.num_real = g.m();
    for (int e = 0; e < tc.edge_count(); ++e) out.ends.push_back({tc.src(e), tc.tgt(e)});

    // Merge bonds with bonds and polygons with polygons across shared virtual edges.
    const std::size_t k = comps.size();
    std::vector<SPQRTree::Kind> kind(k);
    for (std::size_t i = 0; i < k; ++i) kind[i] = classify(comps[i].edges, out.ends);
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    const auto nv = static_cast<std::size_t>(tc.edge_count() - g.m());
    std::vector<std::array<int, 2>> where(nv, {-1, -1});
    for (std::size_t i = 0; i < k; ++i) {
        for (int e : comps[i].edges) {
            if (e < g.m()) continue;
            auto& w = where[static_cast<std::size_t>(e - g.m())];
            (w[0] < 0 ? w[0] : w[1]) = static_cast<int>(i);
        }
    }
    std::vector<char> dissolved(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) {
        auto [c1, c2] = where[v];
        if (c1 < 0 || c2 < 0) throw std::logic_error("spqr_tree: virtual edge not shared by two components");
        const auto k1 = kind[static_cast<std::size_t>(c1)];
        if (k1 != SPQRTree::Kind::Rigid && k1 == kind[static_cast<std::size_t>(c2)]) {
            dissolved[v] = 1;
            const int r1 = find(c1), r2 = find(c2);
            if (r1 != r2) parent[static_cast<std::size_t>(r1)] = r2;
        }
    }
    std::vector<int> node_of_root(k, -1);
    std::vector<int> comp_node(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int r = find(static_cast<int>(i));
        if (node_of_root[static_cast<std::size_t>(r)] < 0) {
            node_of_root[static_cast<std::size_t>(r)] = static_cast<int>(out.nodes.size());
            out.nodes.push_back({kind[i], {}});
        }
        comp_node[i] = node_of_root[static_cast<std::size_t>(r)];
    }
    for (std::size_t i = 0; i < k; ++i) {
        auto& node = out.nodes[static_cast<std::size_t>(comp_node[i])];
        for (int e : comps[i].edges) {
            if (e >= g.m() && dissolved[static_cast<std::size_t>(e - g.m())]) continue;
            node.edges.push_back(e);
        }
    }
    // Renumber surviving virtual edges densely after the real ones.
    std::vector<int> renum(static_cast<std::size_t>(tc.edge_count()), -1);
    for (int e = 0; e < g.m(); ++e) renum[static_cast<std::size_t>(e)] = e;
    std::vector<std::array<int, 2>> ends(out.ends.begin(), out.ends.begin() + g.m());
    for (std::size_t v = 0; v < nv; ++v) {
        if (dissolved[v]) continue;
        renum[static_cast<std::size_t>(g.m()) + v] = static_cast<int>(ends.size());
        ends.push_back(out.ends[static_cast<std::size_t>(g.m()) + v]);
        out.virtual_nodes.push_back({comp_node[static_cast<std::size_t>(where[v][0])], comp_node[static_cast<std::size_t>(where[v][1])]});
    }
    out.ends = std::move(ends);
    out.node_of_real.assign(static_cast<std::size_t>(g.m()), -1);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        for (int& e : out.nodes[i].edges) {
            e = renum[static_cast<std::size_t>(e)];
            if (e < g.m()) out.node_of_real[static_cast<std::size_t>(e)] = static_cast<int>(i);
        }
    }
    return out;
}

}  // namespace syncplan
