#include "syncplan/solver.hpp"

#include <pthread.h>

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace syncplan {

std::optional<std::vector<char>> two_sat_solve(const TwoSatFormula& f) {
    const int n = 2 * f.variables;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n)), in(static_cast<std::size_t>(n));
    for (auto [a, b] : f.clauses) {
        out[static_cast<std::size_t>(a ^ 1)].push_back(b);
        out[static_cast<std::size_t>(b ^ 1)].push_back(a);
        in[static_cast<std::size_t>(b)].push_back(a ^ 1);
        in[static_cast<std::size_t>(a)].push_back(b ^ 1);
    }
    // Kosaraju with explicit stacks.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [x, i] = stack.back();
            const auto& adj = out[static_cast<std::size_t>(x)];
            if (i < adj.size()) {
                const int y = adj[i++];
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.emplace_back(y, 0);
                }
            } else {
                order.push_back(x);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int next = 0;
    std::vector<int> work;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<std::size_t>(*it)] >= 0) continue;
        comp[static_cast<std::size_t>(*it)] = next;
        work.push_back(*it);
        while (!work.empty()) {
            const int x = work.back();
            work.pop_back();
            for (int y : in[static_cast<std::size_t>(x)]) {
                if (comp[static_cast<std::size_t>(y)] < 0) {
                    comp[static_cast<std::size_t>(y)] = next;
                    work.push_back(y);
                }
            }
        }
        ++next;
    }
    std::vector<char> value(static_cast<std::size_t>(f.variables));
    for (int x = 0; x < f.variables; ++x) {
        const int cp = comp[static_cast<std::size_t>(2 * x)], cn = comp[static_cast<std::size_t>(2 * x + 1)];
        if (cp == cn) return std::nullopt;
        value[static_cast<std::size_t>(x)] = cp > cn ? 1 : 0;
    }
    return value;
}

namespace {

enum class Role : std::uint8_t { Cut, Nontrivial, Trivial };

}  // namespace

struct StructureCache::Impl {
    const SyncPlanInstance& inst;
    std::vector<std::unique_ptr<ComponentStructure>> comps;
    IdVector<VertexId, int> comp_of{-1};
    std::unordered_map<VertexId, PQTree> trees;
    std::unordered_map<VertexId, Role> role;
    std::set<std::pair<int, VertexId>> cut_by_degree;  // (-degree, vertex)
    std::set<VertexId> nontrivial, trivial;

    explicit Impl(const SyncPlanInstance& i) : inst(i) {
        for (auto& c : connected_components(inst.g)) add_component(c);
        for (VertexId v : inst.g.sorted_vertices()) classify(v);
    }

    void add_component(std::span<const VertexId> vs) {
        const int id = static_cast<int>(comps.size());
        comps.push_back(std::make_unique<ComponentStructure>(inst, vs));
        for (VertexId v : vs) comp_of.ensure(v) = id;
    }

    void unclassify(VertexId v) {
        auto it = role.find(v);
        if (it == role.end()) return;
        switch (it->second) {
            case Role::Cut:
                for (auto c = cut_by_degree.begin(); c != cut_by_degree.end(); ++c) {
                    if (c->second == v) {
                        cut_by_degree.erase(c);
                        break;
                    }
                }
                break;
            case Role::Nontrivial: nontrivial.erase(v); break;
            case Role::Trivial: trivial.erase(v); break;
        }
        role.erase(it);
        trees.erase(v);
    }

    void classify(VertexId v) {
        unclassify(v);
        if (!inst.g.has_vertex(v) || inst.pipe_of(v) < 0) return;
        const ComponentStructure& cs = *comps[static_cast<std::size_t>(comp_of[v])];
        if (cs.is_cut(v)) {
            role.emplace(v, Role::Cut);
            cut_by_degree.emplace(-inst.g.degree(v), v);
            return;
        }
        PQTree t = cs.embedding_tree(v);
        const bool triv = t.is_trivial();
        trees.emplace(v, std::move(t));
        role.emplace(v, triv ? Role::Trivial : Role::Nontrivial);
        (triv ? trivial : nontrivial).insert(v);
    }

    void update(const OpRecord& rec) {
        std::vector<VertexId> dirty = rec.created_vertices;
        dirty.insert(dirty.end(), rec.small.converted.begin(), rec.small.converted.end());
        for (VertexId v : rec.removed_vertices) {
            unclassify(v);
            if (comp_of.contains(v) && comp_of[v] >= 0) comps[static_cast<std::size_t>(comp_of[v])].reset();
            if (comp_of.contains(v)) comp_of[v] = -1;
        }
        for (VertexId v : dirty) {
            if (comp_of.contains(v) && comp_of[v] >= 0) comps[static_cast<std::size_t>(comp_of[v])].reset();
        }
        // Rebuild the components of the dirty vertices.
        const Multigraph& g = inst.g;
        std::unordered_set<VertexId> done;
        std::vector<VertexId> rebuilt;
        for (VertexId s : dirty) {
            if (!g.has_vertex(s) || done.count(s)) continue;
            std::vector<VertexId> comp{s};
            done.insert(s);
            for (std::size_t i = 0; i < comp.size(); ++i) {
                for (HalfEdgeId h : g.incident(comp[i])) {
                    const VertexId w = g.head(h);
                    if (done.insert(w).second) comp.push_back(w);
                }
            }
            std::sort(comp.begin(), comp.end());
            add_component(comp);
            rebuilt.insert(rebuilt.end(), comp.begin(), comp.end());
        }
        for (VertexId v : rebuilt) classify(v);
        for (VertexId v : {rec.u, rec.v, rec.u_mate, rec.v_mate}) {
            if (v.valid() && !done.count(v)) classify(v);
        }
        for (VertexId v : rec.small.converted) {
            if (!done.count(v)) classify(v);
        }
    }

    VertexId bond_partner(VertexId v) const {
        return comps[static_cast<std::size_t>(comp_of[v])]->bond_pole_bijections(v).partner;
    }

    SelectedOp select() const {
        SelectedOp op;
        if (!cut_by_degree.empty()) {
            const VertexId u = cut_by_degree.begin()->second;
            const int p = inst.pipe_of(u);
            const VertexId v = inst.pipe(p).other(u);
            op.pipe = p;
            switch (role.at(v)) {
                case Role::Cut: op.kind = SelectedOp::Kind::EncapsulateAndJoin; break;
                case Role::Nontrivial:
                    op.kind = SelectedOp::Kind::PropagatePQ;
                    op.vertex = v;
                    break;
                case Role::Trivial: {
                    // Simplify at v needs its bond partner x to be unmatched or trivial.
                    // A matched cut-vertex x cannot occur: deg(x) > deg(v) = deg(u).
                    const VertexId x = bond_partner(v);
                    auto rx = role.find(x);
                    if (rx != role.end() && rx->second == Role::Cut)
                        throw std::logic_error("select: bond partner is a matched cut-vertex of larger degree");
                    if (rx != role.end() && rx->second == Role::Nontrivial) {
                        op.kind = SelectedOp::Kind::PropagatePQ;
                        op.vertex = x;
                        op.pipe = inst.pipe_of(x);
                    } else {
                        op.kind = SelectedOp::Kind::SimplifyMatching;
                        op.vertex = v;
                    }
                    break;
                }
            }
            return op;
        }
        if (!nontrivial.empty()) {
            op.kind = SelectedOp::Kind::PropagatePQ;
            op.vertex = *nontrivial.begin();
        } else if (!trivial.empty()) {
            op.kind = SelectedOp::Kind::SimplifyMatching;
            op.vertex = *trivial.begin();
        } else {
            return op;
        }
        op.pipe = inst.pipe_of(op.vertex);
        return op;
    }
};

StructureCache::StructureCache(const SyncPlanInstance& inst) : impl_(std::make_unique<Impl>(inst)) {}
StructureCache::~StructureCache() = default;
SelectedOp StructureCache::select() { return impl_->select(); }
const PQTree& StructureCache::tree(VertexId v) { return impl_->trees.at(v); }
BondPoles StructureCache::bond_poles(VertexId u) {
    return impl_->comps[static_cast<std::size_t>(impl_->comp_of[u])]->bond_pole_bijections(u);
}
void StructureCache::update(const OpRecord& rec) { impl_->update(rec); }

SelectedOp select_operation(const SyncPlanInstance& inst) {
    if (inst.num_pipes() == 0) return {};
    StructureCache cache(inst);
    return cache.select();
}

std::vector<SelectedOp> applicable_operations(const SyncPlanInstance& inst) {
    std::vector<SelectedOp> out;
    if (inst.num_pipes() == 0) return out;
    std::vector<std::unique_ptr<ComponentStructure>> comps;
    IdVector<VertexId, int> comp_of{-1};
    for (auto& c : connected_components(inst.g)) {
        for (VertexId v : c) comp_of.ensure(v) = static_cast<int>(comps.size());
        comps.push_back(std::make_unique<ComponentStructure>(inst, c));
    }
    auto cs = [&](VertexId v) -> const ComponentStructure& { return *comps[static_cast<std::size_t>(comp_of[v])]; };
    auto role = [&](VertexId v) {
        if (cs(v).is_cut(v)) return Role::Cut;
        return cs(v).embedding_tree(v).is_trivial() ? Role::Trivial : Role::Nontrivial;
    };
    for (int p : inst.pipe_ids()) {
        const Pipe& pipe = inst.pipe(p);
        const Role ru = role(pipe.u), rv = role(pipe.v);
        if (ru == Role::Cut && rv == Role::Cut) out.push_back({SelectedOp::Kind::EncapsulateAndJoin, p, VertexId{}});
        for (auto [x, r] : {std::pair{pipe.u, ru}, std::pair{pipe.v, rv}}) {
            if (r == Role::Nontrivial) out.push_back({SelectedOp::Kind::PropagatePQ, p, x});
            if (r != Role::Trivial) continue;
            const VertexId y = cs(x).bond_pole_bijections(x).partner;
            if (inst.pipe_of(y) < 0 || role(y) == Role::Trivial) out.push_back({SelectedOp::Kind::SimplifyMatching, p, x});
        }
    }
    return out;
}

std::optional<OpRecord> apply_operation(SyncPlanInstance& inst, const SelectedOp& op) {
    switch (op.kind) {
        case SelectedOp::Kind::EncapsulateAndJoin: return encapsulate_and_join(inst, op.pipe);
        case SelectedOp::Kind::PropagatePQ: {
            const PQTree tree = embedding_tree(inst, op.vertex);
            return propagate_pq(inst, op.vertex, tree);
        }
        case SelectedOp::Kind::SimplifyMatching: {
            const auto comps = connected_components(inst.g);
            for (const auto& c : comps) {
                if (std::find(c.begin(), c.end(), op.vertex) == c.end()) continue;
                const ComponentStructure cs(inst, c);
                return simplify_matching(inst, op.vertex, cs.bond_pole_bijections(op.vertex));
            }
            throw std::invalid_argument("apply_operation: unknown vertex");
        }
        case SelectedOp::Kind::None: break;
    }
    throw std::invalid_argument("apply_operation: no operation");
}

namespace {

// Edge count of the component of every vertex.
IdVector<VertexId, long long> component_edges(const Multigraph& g) {
    IdVector<VertexId, long long> out{0};
    out.resize(g.vertex_bound());
    for (const auto& comp : connected_components(g)) {
        long long deg = 0;
        for (VertexId v : comp) deg += g.degree(v);
        for (VertexId v : comp) out[v] = deg / 2;
    }
    return out;
}

long long component_growth(const Multigraph& g, const IdVector<VertexId, long long>& before, const OpRecord& rec) {
    std::unordered_set<VertexId> created(rec.created_vertices.begin(), rec.created_vertices.end());
    long long fallback = -1;
    for (VertexId x : rec.removed_vertices) {
        const long long e = before.get_or(x, 0);
        fallback = fallback < 0 ? e : std::min(fallback, e);
    }
    long long growth = 0;
    std::unordered_set<VertexId> done;
    for (VertexId s : rec.created_vertices) {
        if (!g.has_vertex(s) || done.count(s)) continue;
        std::vector<VertexId> comp{s};
        done.insert(s);
        long long deg = 0;
        long long origin = -1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            deg += g.degree(comp[i]);
            if (origin < 0 && !created.count(comp[i])) origin = before.get_or(comp[i], 0);
            for (HalfEdgeId h : g.incident(comp[i])) {
                const VertexId w = g.head(h);
                if (done.insert(w).second) comp.push_back(w);
            }
        }
        if (origin < 0) origin = std::max(fallback, 0LL);
        growth = std::max(growth, deg / 2 - origin);
    }
    return growth;
}

}  // namespace

ReduceResult reduce_instance(SyncPlanInstance inst, const ReduceOptions& options) {
    ReduceResult out;
    out.instance = std::move(inst);
    SyncPlanInstance& work = out.instance;
    try {
        StructureCache cache(work);
        for (;;) {
            const SelectedOp sel = cache.select();
            if (sel.kind == SelectedOp::Kind::None) break;
            LedgerEntry entry;
            IdVector<VertexId, long long> edges_before;
            std::size_t vertices_before = 0;
            if (options.ledger) {
                entry.phi_before = potential(work);
                edges_before = component_edges(work.g);
                vertices_before = work.g.num_vertices();
            }
            OpRecord rec;
            switch (sel.kind) {
                case SelectedOp::Kind::EncapsulateAndJoin:
                    rec = encapsulate_and_join(work, sel.pipe);
                    break;
                case SelectedOp::Kind::PropagatePQ: {
                    const PQTree tree = cache.tree(sel.vertex);
                    rec = propagate_pq(work, sel.vertex, tree);
                    break;
                }
                case SelectedOp::Kind::SimplifyMatching: {
                    auto r = simplify_matching(work, sel.vertex, cache.bond_poles(sel.vertex));
                    if (!r) {
                        out.no_instance = true;
                        out.reason = "bond pipe with non-uniform cycle lengths";
                        return out;
                    }
                    rec = std::move(*r);
                    break;
                }
                case SelectedOp::Kind::None:
                    break;
            }
            cache.update(rec);
            if (options.ledger) {
                entry.tag = rec.tag;
                entry.phi_after = potential(work);
                entry.delta_vertices = static_cast<long long>(work.g.num_vertices()) - static_cast<long long>(vertices_before);
                entry.delta_component_edges = component_growth(work.g, edges_before, rec);
                out.ledger.push_back(entry);
            }
            if (options.on_op) options.on_op(rec);
            out.log.push_back(std::move(rec));
        }
    } catch (const NonPlanarError&) {
        out.no_instance = true;
        out.reason = "non-planar component";
    }
    return out;
}

std::optional<RotationSystem> solve_reduced(const SyncPlanInstance& inst) {
    if (inst.num_pipes() != 0) throw std::invalid_argument("solve_reduced: instance still has pipes");
    const auto comps = connected_components(inst.g);
    std::vector<ComponentStructure> structures;
    structures.reserve(comps.size());
    for (const auto& c : comps) {
        structures.emplace_back(inst, c);
        if (!structures.back().planar()) return std::nullopt;
    }
    TwoSatFormula f;
    std::map<std::array<int, 3>, int> rigid_var;  // (component, block, node)
    std::unordered_map<int, int> cell_var;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const ComponentStructure& cs = structures[ci];
        for (VertexId c : comps[ci]) {
            if (inst.kind(c) != VertexKind::Q) continue;
            const auto ref = cs.rigid_of_center(c);
            if (!ref) continue;
            const int xc = f.add_variable();
            const std::array<int, 3> key{static_cast<int>(ci), ref->block, ref->node};
            auto [it, fresh] = rigid_var.emplace(key, 0);
            if (fresh) it->second = f.add_variable();
            if (ref->agrees) {
                f.add_equal(xc, it->second);
            } else {
                f.add_differ(xc, it->second);
            }
            const int cell = inst.cell_of(c);
            if (cell >= 0) {
                auto [ct, cfresh] = cell_var.emplace(cell, 0);
                if (cfresh) ct->second = f.add_variable();
                f.add_equal(xc, ct->second);
            }
        }
    }
    const auto value = two_sat_solve(f);
    if (!value) return std::nullopt;
    RotationSystem rs;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto part = structures[ci].embed([&](int b, int n) {
            auto it = rigid_var.find({static_cast<int>(ci), b, n});
            return it != rigid_var.end() && !(*value)[static_cast<std::size_t>(it->second)];
        });
        for (VertexId v : comps[ci]) rs[v] = part.at(v);
    }
    return rs;
}

RotationSystem extract_embedding(const SyncPlanInstance& reduced, std::span<const OpRecord> log, RotationSystem rs_reduced) {
    const auto fresh = static_cast<std::int32_t>(reduced.g.half_bound()) + 1;
    for (auto it = log.rbegin(); it != log.rend(); ++it) undo_embedding(*it, rs_reduced, fresh);
    return rs_reduced;
}

Verdict solve(const SyncPlanInstance& inst, SolveStats* stats, const ReduceOptions& options) {
    Verdict out;
    run_with_large_stack([&] {
        SyncPlanInstance work = inst;
        normalize_small(work);
        if (stats) stats->initial_potential = potential(work);
        ReduceResult red = reduce_instance(std::move(work), options);
        if (stats) {
            stats->operations = red.log.size();
            stats->reduced_vertices = red.instance.g.num_vertices();
            stats->reduced_edges = red.instance.g.num_edges();
            stats->reason = red.reason;
        }
        if (red.no_instance) return;
        auto rs = solve_reduced(red.instance);
        if (!rs) {
            if (stats) stats->reason = "pipe-free remainder has no valid embedding";
            return;
        }
        RotationSystem witness = extract_embedding(red.instance, red.log, std::move(*rs));
        if (!is_valid_embedding(inst, witness)) throw std::logic_error("solve: witness failed validation");
        out.satisfiable = true;
        out.witness = std::move(witness);
    });
    return out;
}

namespace {

struct ThreadTask {
    const std::function<void()>* fn;
    std::exception_ptr error;
};

void* thread_main(void* arg) {
    auto* task = static_cast<ThreadTask*>(arg);
    try {
        (*task->fn)();
    } catch (...) {
        task->error = std::current_exception();
    }
    return nullptr;
}

}  // namespace

void run_with_large_stack(const std::function<void()>& fn) {
    constexpr std::size_t stack_size = std::size_t{512} << 20;
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, stack_size);
    ThreadTask task{&fn, nullptr};
    pthread_t thread;
    const int rc = pthread_create(&thread, &attr, thread_main, &task);
    pthread_attr_destroy(&attr);
    if (rc != 0) {
        fn();
        return;
    }
    pthread_join(thread, nullptr);
    if (task.error) std::rethrow_exception(task.error);
}

}  // namespace syncplan
