// tlrecon CLI: generate instances, reconstruct graphs through the distance
// oracle, sweep query-cost benchmarks, and run the property suites.
//
// Exit codes: 0 success/pass, 1 incorrect reconstruction or property
// failure (budget exhaustion included), 2 usage or IO error.
//
// `reconstruct` writes the report JSON to stdout and a run record (which
// carries the wall-clock time) to stderr, so stdout stays byte-identical
// across repeated runs with the same seed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "tlrecon/generators.hpp"
#include "tlrecon/graph.hpp"
#include "tlrecon/json_io.hpp"
#include "tlrecon/oracle.hpp"
#include "tlrecon/properties.hpp"
#include "tlrecon/reconstruct.hpp"
#include "tlrecon/tree_decomposition.hpp"

namespace {

using namespace tlrecon;

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family = "tree";
    int n = 10;
    int delta = 3;
    int k = 1;
    std::uint64_t seed = 0;
    int rows = 2, cols = 2;
    std::string out = "instance";
};

int run_generate(const GenerateArgs& args) {
    GeneratedInstance inst = [&] {
        if (args.family == "tree") return gen_random_tree(args.n, args.delta, args.seed);
        if (args.family == "chordal") return gen_chordal(args.n, args.delta, args.seed);
        if (args.family == "treelength")
            return gen_bounded_treelength(args.n, args.delta, args.k, args.seed);
        if (args.family == "cycle") return gen_cycle(args.n);
        if (args.family == "grid") return gen_grid(args.rows, args.cols);
        throw std::invalid_argument("unknown family: " + args.family);
    }();

    save_json_file(args.out + ".graph.json", graph_to_json(inst.graph));
    std::cout << args.out << ".graph.json\n";
    if (inst.witness) {
        save_json_file(args.out + ".witness.json", witness_to_json(*inst.witness));
        std::cout << args.out << ".witness.json\n";
    }
    save_json_file(args.out + ".params.json", params_to_json(inst.params));
    std::cout << args.out << ".params.json\n";
    return 0;
}

// ------------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string graph_path;
    int k = 1;
    int delta = 3;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::optional<double> sample_constant;
    std::optional<int> base_threshold;
    int max_retries = 20;
};

ordered_json run_record_base(const std::string& path, Vertex n) {
    ordered_json rec;
    rec["instance"] = {{"path", path}, {"n", n}};
    return rec;
}

int run_reconstruct(const ReconstructArgs& args) {
    Graph g = graph_from_json(load_json_file(args.graph_path));
    if (!g.is_connected()) {
        std::cerr << "error: input graph is not connected\n";
        return 2;
    }

    ReconstructionConfig cfg;
    cfg.k = args.k;
    cfg.delta = args.delta;
    cfg.rng_seed = args.seed;
    cfg.max_retries_per_node = args.max_retries;
    cfg.sample_constant_override = args.sample_constant;
    cfg.base_threshold_override = args.base_threshold;

    CountingOracle oracle = args.budget ? CountingOracle(g, *args.budget) : CountingOracle(g);
    ordered_json record = run_record_base(args.graph_path, g.n());
    const auto start = std::chrono::steady_clock::now();
    ReconstructionReport report;
    try {
        report = reconstruct(oracle, g.n(), cfg);
    } catch (const BudgetExhausted& e) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        record["error"] = std::string("budget-exhausted: ") + e.what();
        record["correct"] = false;
        record["wall_ms"] = ms;
        std::cerr << dump_json(record);
        return 1;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

    const bool correct = report.edges == g.edge_set();
    ordered_json rj = report_to_json(report);
    std::cout << dump_json(rj);

    std::uint64_t retries_total = 0;
    for (const auto& [node, count] : report.retries) retries_total += static_cast<std::uint64_t>(count);
    record["config_echo"] = rj["config_echo"];
    record["distinct_pairs"] = report.stats.distinct_pairs;
    record["total_calls"] = report.stats.total_calls;
    record["extra_batch_pairs"] = report.extra_batch_pairs;
    record["depth"] = report.depth;
    record["retries_total"] = retries_total;
    record["fallbacks"] = report.fallbacks;
    record["wall_ms"] = ms;
    record["correct"] = correct;
    std::cerr << dump_json(record);
    return correct ? 0 : 1;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    std::string family = "tree";
    std::vector<int> ns = {250, 500, 1000};
    int delta = 3;
    int k = 1;
    int trials = 10;
    std::uint64_t seed = 0;
    std::optional<double> sample_constant;
    std::optional<int> base_threshold;
    int max_retries = 20;
    int threads = 0;
    std::string out = "bench.csv";
};

struct BenchRow {
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t distinct_pairs = 0;
    std::uint64_t total_calls = 0;
    double ratio = 0.0;
    int depth = 0;
    std::uint64_t retries = 0;
    std::uint64_t wall_ms = 0;
    bool correct = false;
};

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size();
    return m % 2 ? xs[m / 2] : 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;  // default 6 significant digits, locale-independent
    return os.str();
}

int run_bench(const BenchArgs& args) {
    if (args.family != "tree" && args.family != "chordal" && args.family != "treelength") {
        std::cerr << "error: bench families are tree, chordal, treelength\n";
        return 2;
    }
    if (args.trials < 1 || args.ns.empty()) {
        std::cerr << "error: need at least one n and one trial\n";
        return 2;
    }
    for (int n : args.ns) {
        if (n < 1) {
            std::cerr << "error: vertex counts must be >= 1\n";
            return 2;
        }
    }

    struct Task {
        int n;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int n : args.ns)
        for (int t = 0; t < args.trials; ++t)
            tasks.push_back({n, args.seed + static_cast<std::uint64_t>(t)});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            try {
                GeneratedInstance inst =
                    args.family == "tree"
                        ? gen_random_tree(task.n, args.delta, task.seed)
                        : (args.family == "chordal"
                               ? gen_chordal(task.n, args.delta, task.seed)
                               : gen_bounded_treelength(task.n, args.delta, args.k, task.seed));
                ReconstructionConfig cfg;
                cfg.k = args.k;
                cfg.delta = args.delta;
                cfg.rng_seed = task.seed;
                cfg.max_retries_per_node = args.max_retries;
                cfg.sample_constant_override = args.sample_constant;
                cfg.base_threshold_override = args.base_threshold;
                CountingOracle oracle(inst.graph);
                const auto start = std::chrono::steady_clock::now();
                ReconstructionReport rep = reconstruct(oracle, inst.graph.n(), cfg);
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
                BenchRow& row = rows[i];
                row.n = task.n;
                row.seed = task.seed;
                row.distinct_pairs = rep.stats.distinct_pairs;
                row.total_calls = rep.stats.total_calls;
                const double lg = std::log2(static_cast<double>(task.n));
                row.ratio = static_cast<double>(rep.stats.distinct_pairs) /
                            (static_cast<double>(task.n) * lg * lg);
                row.depth = rep.depth;
                for (const auto& [node, count] : rep.retries)
                    row.retries += static_cast<std::uint64_t>(count);
                row.wall_ms = static_cast<std::uint64_t>(ms);
                row.correct = rep.edges == inst.graph.edge_set();
                if (!row.correct) throw std::runtime_error("reconstruction mismatch");
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed = true;
                if (failure_message.empty())
                    failure_message = "n=" + std::to_string(task.n) +
                                      " seed=" + std::to_string(task.seed) + ": " + e.what();
            }
        }
    };

    int nthreads = args.threads > 0
                       ? args.threads
                       : static_cast<int>(std::min<std::size_t>(
                             tasks.size(),
                             std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failed) {
        std::cerr << "error: bench run failed: " << failure_message << "\n";
        return 1;
    }

    // canonical order regardless of completion: (n, seed)
    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.n != b.n ? a.n < b.n : a.seed < b.seed;
    });

    std::ofstream out(args.out);
    if (!out) {
        std::cerr << "error: cannot write " << args.out << "\n";
        return 2;
    }
    out << "row,n,seed,distinct_pairs,total_calls,ratio,depth,retries,wall_ms\n";
    for (const BenchRow& r : rows)
        out << "run," << r.n << "," << r.seed << "," << r.distinct_pairs << "," << r.total_calls
            << "," << fmt(r.ratio) << "," << r.depth << "," << r.retries << "," << r.wall_ms
            << "\n";
    std::vector<int> ns_sorted = args.ns;
    std::sort(ns_sorted.begin(), ns_sorted.end());
    ns_sorted.erase(std::unique(ns_sorted.begin(), ns_sorted.end()), ns_sorted.end());
    for (int n : ns_sorted) {
        std::vector<double> distinct, total, ratio, depth, retries, wall;
        for (const BenchRow& r : rows)
            if (r.n == n) {
                distinct.push_back(static_cast<double>(r.distinct_pairs));
                total.push_back(static_cast<double>(r.total_calls));
                ratio.push_back(r.ratio);
                depth.push_back(static_cast<double>(r.depth));
                retries.push_back(static_cast<double>(r.retries));
                wall.push_back(static_cast<double>(r.wall_ms));
            }
        out << "median," << n << ",," << fmt(median_of(distinct)) << "," << fmt(median_of(total))
            << "," << fmt(median_of(ratio)) << "," << fmt(median_of(depth)) << ","
            << fmt(median_of(retries)) << "," << fmt(median_of(wall)) << "\n";
    }
    out.close();
    std::cout << "wrote " << args.out << " (" << rows.size() << " runs)\n";
    return 0;
}

// ------------------------------------------------------------------- check

struct CheckArgs {
    std::string suite = "all";
    int instances = 100;
    int subsets = 20;
    int max_n = 60;
    std::uint64_t seed = 1;
    std::string out;
};

PropertyReport sweep_betweenness_bound(const CheckArgs& args) {
    PropertyReport total{"betweenness-bound", 0, {}};
    for (int i = 0; i < args.instances; ++i) {
        GeneratedInstance inst = gen_sweep_instance(args.seed, i, args.max_n);
        total.absorb(
            check_betweenness_bound(inst.graph, *inst.witness, inst.params.k, inst.params.delta));
    }
    return total;
}

PropertyReport sweep_bag_separator(const CheckArgs& args) {
    PropertyReport total{"bag-separator", 0, {}};
    std::mt19937_64 rng(mix_seed(args.seed, 0xba9));
    for (int i = 0; i < args.instances; ++i) {
        GeneratedInstance inst = gen_sweep_instance(args.seed, i, args.max_n);
        for (int s = 0; s < args.subsets; ++s) {
            Vertex target = 1 + static_cast<Vertex>(
                                    rand_below(rng, static_cast<std::uint64_t>(inst.graph.n())));
            VertexSet a = random_connected_subset(inst.graph, target, rng);
            total.absorb(check_bag_separator(inst.graph, *inst.witness, a));
        }
    }
    return total;
}

PropertyReport sweep_path_confinement(const CheckArgs& args) {
    PropertyReport total{"path-confinement", 0, {}};
    std::mt19937_64 rng(mix_seed(args.seed, 0x1e2));
    for (int i = 0; i < args.instances; ++i) {
        GeneratedInstance inst = gen_sweep_instance(args.seed, i, args.max_n);
        for (int s = 0; s < args.subsets; ++s) {
            Vertex target = 1 + static_cast<Vertex>(
                                    rand_below(rng, static_cast<std::uint64_t>(inst.graph.n())));
            VertexSet a = random_connected_subset(inst.graph, target, rng);
            total.absorb(check_path_confinement(inst.graph, inst.params.k, a));
        }
    }
    return total;
}

PropertyReport sweep_ball_separator(const CheckArgs& args) {
    PropertyReport total{"ball-separator", 0, {}};
    std::mt19937_64 rng(mix_seed(args.seed, 0xc3a));
    for (int i = 0; i < args.instances; ++i) {
        GeneratedInstance inst = gen_sweep_instance(args.seed, i, args.max_n);
        for (int s = 0; s < args.subsets; ++s) {
            Vertex target = 2 + static_cast<Vertex>(rand_below(
                                    rng, static_cast<std::uint64_t>(std::max<Vertex>(
                                             1, inst.graph.n() - 1))));
            VertexSet a = random_connected_subset(inst.graph, target, rng);
            total.absorb(check_ball_separator(inst.graph, *inst.witness, inst.params.k,
                                              inst.params.delta, a));
        }
    }
    return total;
}

PropertyReport sweep_partition_equivalence(const CheckArgs& args) {
    PropertyReport total{"partition-equivalence", 0, {}};
    std::mt19937_64 rng(mix_seed(args.seed, 0x4aa));
    const int triples = std::max(args.instances, 500);
    for (int i = 0; i < triples; ++i) {
        GeneratedInstance inst = gen_sweep_instance(args.seed, i, args.max_n);
        Vertex target = 1 + static_cast<Vertex>(
                                rand_below(rng, static_cast<std::uint64_t>(inst.graph.n())));
        VertexSet a = random_connected_subset(inst.graph, target, rng);
        const int half = (3 * inst.params.k) / 2;
        VertexSet domain = neighborhood_closed(inst.graph, a, half);
        Vertex z = rand_element(rng, domain);
        total.absorb(check_partition_equivalence(inst.graph, inst.params.k, a, z));
    }
    return total;
}

int run_check(const CheckArgs& args) {
    std::vector<std::string> suites;
    if (args.suite == "all") {
        suites = {"betweenness-bound", "bag-separator", "path-confinement", "ball-separator",
                  "partition-equivalence"};
    } else {
        suites = {args.suite};
    }

    ordered_json out_reports = ordered_json::array();
    bool all_ok = true;
    for (const std::string& name : suites) {
        PropertyReport rep;
        if (name == "betweenness-bound") rep = sweep_betweenness_bound(args);
        else if (name == "bag-separator") rep = sweep_bag_separator(args);
        else if (name == "path-confinement") rep = sweep_path_confinement(args);
        else if (name == "ball-separator") rep = sweep_ball_separator(args);
        else if (name == "partition-equivalence") rep = sweep_partition_equivalence(args);
        else {
            std::cerr << "error: unknown suite " << name << "\n";
            return 2;
        }
        all_ok = all_ok && rep.ok();
        std::cout << (rep.ok() ? "PASS" : "FAIL") << " " << rep.property
                  << " (instances=" << rep.instances_checked
                  << ", failures=" << rep.failures.size() << ")\n";
        for (const auto& [inst, counter] : rep.failures)
            std::cout << "  counterexample: " << inst << " -> " << counter << "\n";
        out_reports.push_back(property_report_to_json(rep));
    }
    if (!args.out.empty()) save_json_file(args.out, out_reports);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reconstruct hidden graphs from distance queries"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cg = app.add_subcommand("generate", "generate an instance (graph + witness + params)");
    cg->add_option("--family", gen.family, "tree|chordal|treelength|cycle|grid")
        ->default_val("tree");
    cg->add_option("--n", gen.n, "vertex count");
    cg->add_option("--delta", gen.delta, "max degree cap");
    cg->add_option("--k", gen.k, "bag distance bound (treelength family)");
    cg->add_option("--seed", gen.seed, "generator seed");
    cg->add_option("--rows", gen.rows, "grid rows");
    cg->add_option("--cols", gen.cols, "grid cols");
    cg->add_option("--out", gen.out, "output path prefix")->required();

    ReconstructArgs rec;
    CLI::App* cr = app.add_subcommand("reconstruct", "reconstruct a graph through the oracle");
    cr->add_option("graph", rec.graph_path, "graph JSON path")->required();
    cr->add_option("--k", rec.k, "treelength bound");
    cr->add_option("--delta", rec.delta, "max degree bound");
    cr->add_option("--seed", rec.seed, "run seed");
    cr->add_option("--budget", rec.budget, "distinct-pair budget override");
    cr->add_option("--sample-constant", rec.sample_constant, "pair-sample constant override");
    cr->add_option("--base-threshold", rec.base_threshold, "brute-force size threshold override");
    cr->add_option("--max-retries", rec.max_retries, "separator retries per node");

    BenchArgs bench;
    CLI::App* cb = app.add_subcommand("bench", "sweep reconstructions and emit a CSV");
    cb->add_option("--family", bench.family, "tree|chordal|treelength");
    cb->add_option("--n", bench.ns, "vertex counts (comma separated)")
        ->delimiter(',')
        ->required();
    cb->add_option("--delta", bench.delta, "max degree bound");
    cb->add_option("--k", bench.k, "treelength bound");
    cb->add_option("--trials", bench.trials, "seeds per n");
    cb->add_option("--seed", bench.seed, "base seed");
    cb->add_option("--sample-constant", bench.sample_constant, "pair-sample constant override");
    cb->add_option("--base-threshold", bench.base_threshold, "brute-force threshold override");
    cb->add_option("--max-retries", bench.max_retries, "separator retries per node");
    cb->add_option("--threads", bench.threads, "worker threads (0 = auto)");
    cb->add_option("--out", bench.out, "CSV output path")->required();

    CheckArgs chk;
    CLI::App* cc = app.add_subcommand("check", "run property suites against ground truth");
    cc->add_option("suite", chk.suite,
                   "betweenness-bound|bag-separator|path-confinement|ball-separator|"
                   "partition-equivalence|all")
        ->required();
    cc->add_option("--instances", chk.instances, "instances per suite");
    cc->add_option("--subsets", chk.subsets, "random connected subsets per instance");
    cc->add_option("--max-n", chk.max_n, "largest instance size");
    cc->add_option("--seed", chk.seed, "sweep seed");
    cc->add_option("--out", chk.out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2
    }

    try {
        if (cg->parsed()) return run_generate(gen);
        if (cr->parsed()) return run_reconstruct(rec);
        if (cb->parsed()) return run_bench(bench);
        if (cc->parsed()) return run_check(chk);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
