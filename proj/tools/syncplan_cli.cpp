#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "syncplan/generators.hpp"
#include "syncplan/oracle.hpp"
#include "syncplan/reductions.hpp"
#include "syncplan/solver.hpp"

using nlohmann::json;
using namespace syncplan;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;

// Input problems, reported with exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw InputError("cannot open " + path);
        in = &file;
    }
    try {
        return json::parse(*in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump() << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump() << '\n';
}

// Parsing wraps every library complaint about the content as an input error.
template <class F>
auto parse_input(const std::string& path, F&& from_json) {
    const json j = read_json(path);
    try {
        return from_json(j);
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

SyncPlanInstance read_instance(const std::string& path) {
    auto inst = parse_input(path, [](const json& j) { return instance_from_json(j); });
    const auto problems = check_wellformed(inst);
    if (!problems.empty()) throw InputError(path + ": " + problems.front());
    return inst;
}

struct SolveArgs {
    std::string input, witness, log;
};

int cmd_solve(const SolveArgs& a) {
    const SyncPlanInstance inst = read_instance(a.input);
    std::ofstream log;
    ReduceOptions options;
    if (!a.log.empty()) {
        log.open(a.log);
        if (!log) throw InputError("cannot write " + a.log);
        options.on_op = [&](const OpRecord& rec) { log << op_record_to_json(rec).dump() << '\n'; };
    }
    SolveStats stats;
    const Verdict v = solve(inst, &stats, options);
    json out{{"satisfiable", v.satisfiable}, {"ops_applied", stats.operations}, {"potential_initial", stats.initial_potential}};
    if (!v.satisfiable && !stats.reason.empty()) out["reason"] = stats.reason;
    std::cout << out.dump() << '\n';
    if (v.satisfiable && !a.witness.empty()) write_json(a.witness, rotation_to_json(inst.g, *v.witness));
    return v.satisfiable ? kOk : kNo;
}

int cmd_check(const std::string& input, const std::string& witness) {
    const SyncPlanInstance inst = read_instance(input);
    const RotationSystem rs = parse_input(witness, [](const json& j) { return rotation_from_json(j); });
    const bool ok = is_valid_embedding(inst, rs);
    std::cout << json{{"valid", ok}}.dump() << '\n';
    return ok ? kOk : kNo;
}

struct FrontArgs {
    std::string kind, input, output, witness;
    bool solve = false;
};

int cmd_reduce_front(const FrontArgs& a) {
    const json j = read_json(a.input);
    Reduction r;
    // Lifts a witness of r.instance into the source problem's witness format.
    std::function<json(const RotationSystem&)> lift;
    ClusteredGraph cg;
    SefeInstance sefe;
    PQConstrainedInstance pqc;
    AtomicInstance atomic;
    try {
        if (a.kind == "clustered") {
            cg = clustered_from_json(j);
            r = clustered_to_syncplan(cg);
            lift = [&](const RotationSystem& rs) { return rotation_to_json(cg.g, r.sources[0].lift(cg.g, rs)); };
        } else if (a.kind == "sefe") {
            sefe = sefe_from_json(j);
            r = sefe_to_syncplan(sefe);
            lift = [&](const RotationSystem& rs) {
                return json{{"e1", rotation_to_json(sefe.g1, r.sources[0].lift(sefe.g1, rs))},
                            {"e2", rotation_to_json(sefe.g2, r.sources[1].lift(sefe.g2, rs))}};
            };
        } else if (a.kind == "pqc") {
            pqc = pqconstrained_from_json(j);
            r = pqconstrained_to_syncplan(pqc);
            lift = [&](const RotationSystem& rs) { return rotation_to_json(pqc.g, r.sources[0].lift(pqc.g, rs)); };
        } else {
            atomic = atomic_from_json(j);
            r = atomic_to_syncplan(atomic);
            lift = [&](const RotationSystem& rs) {
                json atoms = json::array();
                for (std::size_t i = 0; i < atomic.atoms.size(); ++i)
                    atoms.push_back(rotation_to_json(atomic.atoms[i], r.sources[i].lift(atomic.atoms[i], rs)));
                return atoms;
            };
        }
    } catch (const std::exception& e) {
        throw InputError(a.input + ": " + e.what());
    }
    if (!a.solve) {
        write_json(a.output, instance_to_json(r.instance));
        return kOk;
    }
    if (!a.output.empty()) write_json(a.output, instance_to_json(r.instance));
    SolveStats stats;
    const Verdict v = solve(r.instance, &stats);
    std::cout << json{{"satisfiable", v.satisfiable}, {"ops_applied", stats.operations}, {"potential_initial", stats.initial_potential}}.dump()
              << '\n';
    if (v.satisfiable && !a.witness.empty()) write_json(a.witness, lift(*v.witness));
    return v.satisfiable ? kOk : kNo;
}

const std::vector<std::string> kFamilies{"random-pipes", "cluster-like", "sefe-like", "toroidal"};

// Size is the edge count except for toroidal, where it is the bond size k and
// the pipe permutation has cycle type (ceil(k/2), floor(k/2)).
SyncPlanInstance generate(const std::string& family, int size, std::uint64_t seed) {
    if (size < 1) throw InputError("size must be positive");
    if (family == "random-pipes") return gen_random_pipes(size, seed);
    if (family == "cluster-like") return clustered_to_syncplan(gen_cluster_like_graph(size, seed)).instance;
    if (family == "sefe-like") return sefe_to_syncplan(gen_sefe_like_pair(size, seed)).instance;
    std::vector<int> cycles{(size + 1) / 2};
    if (size / 2 > 0) cycles.push_back(size / 2);
    return gen_toroidal(cycles, seed);
}

struct GenArgs {
    std::string family, output, cycles;
    int size = 0;
    std::uint64_t seed = 1;
    bool source = false;
};

int cmd_gen(const GenArgs& a) {
    if (a.source) {
        if (a.family == "cluster-like") {
            write_json(a.output, clustered_to_json(gen_cluster_like_graph(a.size, a.seed)));
        } else if (a.family == "sefe-like") {
            write_json(a.output, sefe_to_json(gen_sefe_like_pair(a.size, a.seed)));
        } else {
            throw InputError("--source applies to cluster-like and sefe-like only");
        }
        return kOk;
    }
    if (!a.cycles.empty()) {
        if (a.family != "toroidal") throw InputError("--cycles applies to toroidal only");
        std::vector<int> cycles;
        std::stringstream ss(a.cycles);
        for (std::string part; std::getline(ss, part, ',');) {
            try {
                cycles.push_back(std::stoi(part));
            } catch (const std::exception&) {
                throw InputError("bad cycle length '" + part + "'");
            }
        }
        write_json(a.output, instance_to_json(gen_toroidal(cycles, a.seed)));
        return kOk;
    }
    write_json(a.output, instance_to_json(generate(a.family, a.size, a.seed)));
    return kOk;
}

int cmd_oracle(const std::string& input, std::uint64_t budget, const std::string& witness) {
    const SyncPlanInstance inst = read_instance(input);
    OracleBudget b = default_oracle_budget();
    if (budget > 0) b.max_candidates = budget;
    Verdict v;
    try {
        v = brute_solve_syncplan(inst, b);
    } catch (const OracleBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    std::cout << json{{"satisfiable", v.satisfiable}}.dump() << '\n';
    if (v.satisfiable && !witness.empty()) write_json(witness, rotation_to_json(inst.g, *v.witness));
    return v.satisfiable ? kOk : kNo;
}

struct BenchArgs {
    std::string family;
    std::vector<int> sizes{1000, 2000, 4000, 8000};
    std::uint64_t seed = 1;
    int reps = 1;
};

int cmd_bench(const BenchArgs& a) {
    std::cout << "m,ops,potential_initial,seconds\n";
    double worst = 0.0;
    bool ok = true;
    for (int size : a.sizes) {
        const SyncPlanInstance inst = generate(a.family, size, a.seed);
        const auto m = static_cast<long long>(inst.g.num_edges());
        double best = 0.0;
        SolveStats stats;
        for (int r = 0; r < a.reps; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            (void)solve(inst, &stats);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            best = r == 0 ? secs : std::min(best, secs);
        }
        const double ratio = m > 0 ? static_cast<double>(stats.operations) / (2.0 * static_cast<double>(m)) : 0.0;
        worst = std::max(worst, ratio);
        ok = ok && ratio < 1.0 && stats.initial_potential < 2 * m;
        std::cout << m << ',' << stats.operations << ',' << stats.initial_potential << ',' << best << '\n' << std::flush;
    }
    std::cout << "# max ops/2m = " << worst << '\n';
    return ok ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchronized planarity solver"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Decide an instance; prints the verdict as JSON");
    solve_cmd->add_option("input", solve_args.input, "Instance JSON ('-' for stdin)")->required();
    solve_cmd->add_option("--witness", solve_args.witness, "Write the embedding here if satisfiable");
    solve_cmd->add_option("--log", solve_args.log, "Write applied operations as JSON lines");

    std::string check_input, check_witness;
    auto* check_cmd = app.add_subcommand("check", "Validate an embedding against an instance");
    check_cmd->add_option("input", check_input, "Instance JSON")->required();
    check_cmd->add_option("witness", check_witness, "Rotation system JSON")->required();

    FrontArgs front;
    auto* front_cmd = app.add_subcommand("reduce-front", "Convert a frontend problem into an instance");
    front_cmd->add_option("kind", front.kind, "clustered | sefe | pqc | atomic")->required()->check(CLI::IsMember({"clustered", "sefe", "pqc", "atomic"}));
    front_cmd->add_option("input", front.input, "Problem JSON")->required();
    front_cmd->add_option("-o,--output", front.output, "Instance output path (stdout by default)");
    front_cmd->add_flag("--solve", front.solve, "Also solve and print the verdict");
    front_cmd->add_option("--witness", front.witness, "With --solve: write the lifted source embedding");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
    gen_cmd->add_option("family", gen.family, "random-pipes | cluster-like | sefe-like | toroidal")->required()->check(CLI::IsMember(kFamilies));
    gen_cmd->add_option("size", gen.size, "Edges, or bond size for toroidal")->required();
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("-o,--output", gen.output, "Output path (stdout by default)");
    gen_cmd->add_option("--cycles", gen.cycles, "toroidal: explicit cycle lengths, e.g. 1,3");
    gen_cmd->add_flag("--source", gen.source, "cluster-like/sefe-like: emit the source problem instead");

    std::string oracle_input, oracle_witness;
    std::uint64_t budget = 0;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search on a small instance");
    oracle_cmd->add_option("input", oracle_input, "Instance JSON")->required();
    oracle_cmd->add_option("--budget", budget, "Candidate budget (default 1e7 or SYNCPLAN_ORACLE_BUDGET)");
    oracle_cmd->add_option("--witness", oracle_witness, "Write the embedding here if satisfiable");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time solve on generated instances; prints CSV");
    bench_cmd->add_option("family", bench.family, "Generator family")->required()->check(CLI::IsMember(kFamilies));
    bench_cmd->add_option("--sizes", bench.sizes, "Sizes")->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "Random seed");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per size (minimum time is reported)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kInputError;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_args);
        if (*check_cmd) return cmd_check(check_input, check_witness);
        if (*front_cmd) return cmd_reduce_front(front);
        if (*gen_cmd) return cmd_gen(gen);
        if (*oracle_cmd) return cmd_oracle(oracle_input, budget, oracle_witness);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
