#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syncplan/generators.hpp"
#include "syncplan/oracle.hpp"
#include "syncplan/reductions.hpp"
#include "syncplan/solver.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace syncplan;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw py::value_error(e.what());
    }
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw py::value_error(e.what());
    }
}

py::dict solve_json(const std::string& instance) {
    const auto inst = guarded([&] { return instance_from_json(parse(instance)); });
    SolveStats stats;
    Verdict v;
    {
        py::gil_scoped_release release;
        v = solve(inst, &stats);
    }
    py::dict out;
    out["satisfiable"] = v.satisfiable;
    out["ops_applied"] = stats.operations;
    out["potential_initial"] = stats.initial_potential;
    out["witness"] = v.witness ? py::cast(rotation_to_json(inst.g, *v.witness).dump()) : py::none();
    if (!v.satisfiable) out["reason"] = stats.reason;
    return out;
}

bool check_json(const std::string& instance, const std::string& witness) {
    return guarded([&] { return is_valid_embedding(instance_from_json(parse(instance)), rotation_from_json(parse(witness))); });
}

bool oracle_json(const std::string& instance, std::uint64_t budget) {
    const auto inst = guarded([&] { return instance_from_json(parse(instance)); });
    try {
        return brute_solve_syncplan(inst, OracleBudget{budget}).satisfiable;
    } catch (const OracleBudgetExceeded& e) {
        throw py::value_error(e.what());
    }
}

std::string generate_json(const std::string& family, int size, std::uint64_t seed) {
    if (size < 1) throw py::value_error("size must be positive");
    if (family == "random-pipes") return instance_to_json(gen_random_pipes(size, seed)).dump();
    if (family == "cluster-like") return instance_to_json(clustered_to_syncplan(gen_cluster_like_graph(size, seed)).instance).dump();
    if (family == "sefe-like") return instance_to_json(sefe_to_syncplan(gen_sefe_like_pair(size, seed)).instance).dump();
    if (family == "toroidal") {
        std::vector<int> cycles{(size + 1) / 2};
        if (size / 2 > 0) cycles.push_back(size / 2);
        return instance_to_json(gen_toroidal(cycles, seed)).dump();
    }
    throw py::value_error("unknown family " + family);
}

std::string reduce_json(const std::string& kind, const std::string& source) {
    const json j = parse(source);
    return guarded([&] {
        try {
            if (kind == "clustered") return instance_to_json(clustered_to_syncplan(clustered_from_json(j)).instance).dump();
            if (kind == "sefe") return instance_to_json(sefe_to_syncplan(sefe_from_json(j)).instance).dump();
            if (kind == "pqc") return instance_to_json(pqconstrained_to_syncplan(pqconstrained_from_json(j)).instance).dump();
            if (kind == "atomic") return instance_to_json(atomic_to_syncplan(atomic_from_json(j)).instance).dump();
        } catch (const std::invalid_argument& e) {
            throw py::value_error(e.what());
        }
        throw py::value_error("unknown frontend " + kind);
    });
}

}  // namespace

PYBIND11_MODULE(_syncplan, m) {
    m.doc() = "Synchronized planarity solver; instances are passed as JSON text";
    m.def("solve", &solve_json, py::arg("instance"));
    m.def("check", &check_json, py::arg("instance"), py::arg("witness"));
    m.def("oracle", &oracle_json, py::arg("instance"), py::arg("budget") = default_oracle_budget().max_candidates);
    m.def("generate", &generate_json, py::arg("family"), py::arg("size"), py::arg("seed") = 1);
    m.def("reduce", &reduce_json, py::arg("kind"), py::arg("source"));
}
