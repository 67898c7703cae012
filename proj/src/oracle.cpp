#include "syncplan/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>

namespace syncplan {

OracleBudget default_oracle_budget() {
    OracleBudget b;
    if (const char* env = std::getenv("SYNCPLAN_ORACLE_BUDGET")) {
        try {
            b.max_candidates = std::stoull(env);
        } catch (const std::exception&) {
            // keep the default on garbage
        }
    }
    return b;
}

namespace {

// Backtracking over the rotations of one group of vertices. Pipe partners and
// cell mates are forced as soon as one side is fixed; partial assignments are
// pruned when even closing every open face walk separately cannot reach genus 0.
class Search {
public:
    Search(const SyncPlanInstance& inst, std::vector<VertexId> order, std::uint64_t& counter, std::uint64_t limit)
        : inst_(inst), g_(inst.g), order_(std::move(order)), counter_(counter), limit_(limit) {
        const std::size_t n = order_.size();
        for (std::size_t i = 0; i < n; ++i) local_.emplace(order_[i], static_cast<int>(i));
        for (VertexId v : order_) {
            for (HalfEdgeId h : g_.incident(v)) {
                dart_.emplace(h, static_cast<int>(half_.size()));
                half_.push_back(h);
                tail_.push_back(local_.at(v));
            }
        }
        twin_.resize(half_.size());
        for (std::size_t d = 0; d < half_.size(); ++d) twin_[d] = dart_.at(g_.twin(half_[d]));
        next_.assign(half_.size(), -1);
        rot_.resize(n);
        assigned_.assign(n, 0);
        unassigned_degree_ = static_cast<int>(half_.size());
        // Euler characteristic terms of the final embedding: 2c - V + E - isolated.
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        int comps = static_cast<int>(n), isolated = 0;
        for (std::size_t d = 0; d < half_.size(); ++d) {
            int a = find(tail_[d]), b = find(tail_[static_cast<std::size_t>(twin_[d])]);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --comps;
            }
        }
        for (VertexId v : order_) isolated += g_.degree(v) == 0 ? 1 : 0;
        euler_ = 2 * comps - static_cast<int>(n) + static_cast<int>(half_.size() / 2) - isolated;
    }

    // Calls visit at each valid complete assignment; returns false if stopped.
    bool run(const std::function<bool(const RotationSystem&)>& visit) { return step(0, visit); }

private:
    bool step(std::size_t i, const std::function<bool(const RotationSystem&)>& visit) {
        if (i == order_.size()) {
            RotationSystem rs;
            for (std::size_t k = 0; k < order_.size(); ++k) {
                auto& r = rs[order_[k]];
                for (int d : rot_[k]) r.push_back(half_[static_cast<std::size_t>(d)]);
            }
            return visit(rs);
        }
        const VertexId v = order_[i];
        for (const CyclicOrder& cand : candidates(i)) {
            if (++counter_ > limit_) throw OracleBudgetExceeded("oracle budget of " + std::to_string(limit_) + " exceeded");
            assign(i, cand);
            const int cell = inst_.cell_of(v);
            bool fixed_cell = false;
            if (inst_.kind(v) == VertexKind::Q && cell >= 0 && !cell_orientation_.count(cell)) {
                cell_orientation_[cell] = cyclic_equal(cand, inst_.psi(v)) ? 0 : 1;
                fixed_cell = true;
            }
            bool keep_going = true;
            if (lower_bound_ok()) keep_going = step(i + 1, visit);
            if (fixed_cell) cell_orientation_.erase(cell);
            unassign(i);
            if (!keep_going) return false;
        }
        return true;
    }

    std::vector<CyclicOrder> candidates(std::size_t i) const {
        const VertexId v = order_[i];
        const auto inc = g_.incident(v);
        const VertexId w = inst_.partner(v);
        if (w.valid()) {
            auto it = local_.find(w);
            if (it != local_.end() && assigned_[static_cast<std::size_t>(it->second)]) {
                const auto& phi = inst_.pipe(inst_.pipe_of(v)).from(w);
                CyclicOrder forced;
                const auto& rw = rot_[static_cast<std::size_t>(it->second)];
                for (auto d = rw.rbegin(); d != rw.rend(); ++d) forced.push_back(phi.at(half_[static_cast<std::size_t>(*d)]));
                return {forced};
            }
        }
        if (inst_.kind(v) == VertexKind::Q) {
            const auto& psi = inst_.psi(v);
            auto it = cell_orientation_.find(inst_.cell_of(v));
            if (it != cell_orientation_.end()) return {it->second == 0 ? psi : reversed(psi)};
            if (psi.size() <= 2) return {psi};
            return {psi, reversed(psi)};
        }
        CyclicOrder sorted(inc.begin(), inc.end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<CyclicOrder> out;
        if (sorted.size() <= 2) return {sorted};
        do {
            out.push_back(sorted);
        } while (std::next_permutation(sorted.begin() + 1, sorted.end()));
        return out;
    }

    void assign(std::size_t i, const CyclicOrder& r) {
        auto& rot = rot_[i];
        rot.clear();
        for (HalfEdgeId h : r) rot.push_back(dart_.at(h));
        for (std::size_t k = 0; k < rot.size(); ++k) next_[static_cast<std::size_t>(rot[k])] = rot[(k + 1) % rot.size()];
        assigned_[i] = 1;
        unassigned_degree_ -= static_cast<int>(rot.size());
    }

    void unassign(std::size_t i) {
        for (int d : rot_[i]) next_[static_cast<std::size_t>(d)] = -1;
        unassigned_degree_ += static_cast<int>(rot_[i].size());
        rot_[i].clear();
        assigned_[i] = 0;
    }

    // Face successor of d: next at head(d) after twin(d); -1 while head is free.
    int succ(int d) const { return next_[static_cast<std::size_t>(twin_[static_cast<std::size_t>(d)])]; }

    bool lower_bound_ok() {
        seen_.assign(half_.size(), 0);
        int closed = 0;
        for (std::size_t d0 = 0; d0 < half_.size(); ++d0) {
            if (seen_[d0] || !assigned_[static_cast<std::size_t>(tail_[d0])]) continue;
            int d = static_cast<int>(d0);
            bool cycle = false;
            while (true) {
                seen_[static_cast<std::size_t>(d)] = 1;
                const int s = succ(d);
                if (s < 0) break;
                if (s == static_cast<int>(d0)) {
                    cycle = true;
                    break;
                }
                if (seen_[static_cast<std::size_t>(s)]) break;
                d = s;
            }
            closed += cycle ? 1 : 0;
        }
        return euler_ - closed - unassigned_degree_ <= 0;
    }

    const SyncPlanInstance& inst_;
    const Multigraph& g_;
    std::vector<VertexId> order_;
    std::uint64_t& counter_;
    std::uint64_t limit_;
    std::unordered_map<VertexId, int> local_;
    std::unordered_map<HalfEdgeId, int> dart_;
    std::vector<HalfEdgeId> half_;
    std::vector<int> tail_, twin_, next_;
    std::vector<std::vector<int>> rot_;
    std::vector<char> assigned_, seen_;
    std::unordered_map<int, int> cell_orientation_;
    int unassigned_degree_ = 0;
    int euler_ = 0;
};

// Groups of vertices coupled by edges, pipes or cells, each in search order:
// breadth-first with pipe partners and cell mates placed right after.
std::vector<std::vector<VertexId>> coupled_groups(const SyncPlanInstance& inst) {
    const Multigraph& g = inst.g;
    IdVector<VertexId, char> seen{0};
    seen.resize(g.vertex_bound());
    std::vector<std::vector<VertexId>> out;
    for (VertexId s : g.sorted_vertices()) {
        if (seen[s]) continue;
        auto& group = out.emplace_back();
        std::deque<VertexId> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            group.push_back(v);
            std::vector<VertexId> urgent;
            if (VertexId w = inst.partner(v); w.valid()) urgent.push_back(w);
            if (inst.cell_of(v) >= 0) {
                for (VertexId w : inst.cell(inst.cell_of(v))) urgent.push_back(w);
            }
            for (auto it = urgent.rbegin(); it != urgent.rend(); ++it) {
                if (!seen[*it]) {
                    seen[*it] = 1;
                    queue.push_front(*it);
                }
            }
            for (HalfEdgeId h : g.incident(v)) {
                VertexId w = g.head(h);
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return out;
}

}  // namespace

std::uint64_t enumerate_planar_embeddings(const Multigraph& g, const std::function<bool(const RotationSystem&)>& visit,
                                          OracleBudget budget) {
    SyncPlanInstance plain;
    plain.g = g;
    std::uint64_t counter = 0;
    Search search(plain, g.sorted_vertices(), counter, budget.max_candidates);
    search.run(visit);
    return counter;
}

std::vector<RotationSystem> all_planar_embeddings(const Multigraph& g, OracleBudget budget) {
    std::vector<RotationSystem> out;
    enumerate_planar_embeddings(
        g,
        [&](const RotationSystem& rs) {
            out.push_back(rs);
            return true;
        },
        budget);
    return out;
}

Verdict brute_solve_syncplan(const SyncPlanInstance& inst, OracleBudget budget) {
    Verdict out;
    RotationSystem witness;
    std::uint64_t counter = 0;
    for (auto& group : coupled_groups(inst)) {
        bool found = false;
        Search search(inst, group, counter, budget.max_candidates);
        search.run([&](const RotationSystem& rs) {
            for (int p : inst.pipe_ids()) {
                const Pipe& pipe = inst.pipe(p);
                if (!rs.at(pipe.u).empty() || !rs.at(pipe.v).empty()) {
                    if (!pipe_satisfied(pipe, rs)) return true;
                }
            }
            for (VertexId v : group) witness[v] = rs.at(v);
            found = true;
            return false;
        });
        if (!found) return out;
    }
    out.satisfiable = true;
    out.witness = std::move(witness);
    return out;
}

}  // namespace syncplan
