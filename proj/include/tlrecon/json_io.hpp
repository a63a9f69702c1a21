#pragma once

// JSON (de)serialization for every file format the CLI speaks, plus the
// report shapes. Uses ordered_json and emits map keys in sorted order so
// identical runs produce identical bytes.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "generators.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "reconstruct.hpp"
#include "tree_decomposition.hpp"

namespace tlrecon {

using ordered_json = nlohmann::ordered_json;

// graph file: {"n": int, "edges": [[u,v], ...]} with u < v, sorted
inline ordered_json graph_to_json(const Graph& g) {
    ordered_json j;
    j["n"] = g.n();
    ordered_json edges = ordered_json::array();
    for (const Edge& e : g.edge_set()) edges.push_back({e.first, e.second});
    j["edges"] = std::move(edges);
    return j;
}

inline Graph graph_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need object with \"n\" and \"edges\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw std::invalid_argument("graph json: \"n\" must be a positive integer");
    Graph g(static_cast<Vertex>(j["n"].get<long long>()));
    if (!j["edges"].is_array()) throw std::invalid_argument("graph json: \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw std::invalid_argument("graph json: each edge must be a pair of integers");
        long long u = e[0].get<long long>(), v = e[1].get<long long>();
        if (u >= v)
            throw std::invalid_argument("graph json: edge endpoints must satisfy u < v");
        if (u < 0 || v >= g.n())
            throw std::invalid_argument("graph json: edge endpoint out of range");
        if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw std::invalid_argument("graph json: duplicate edge");
    }
    return g;
}

// witness file: {"nodes": N, "tree_edges": [[s,t],...], "bags": [[v,...],...]}
inline ordered_json witness_to_json(const TreeDecomposition& td) {
    ordered_json j;
    j["nodes"] = td.nodes();
    ordered_json te = ordered_json::array();
    for (const auto& [s, t] : td.tree_edges()) te.push_back({s, t});
    j["tree_edges"] = std::move(te);
    ordered_json bags = ordered_json::array();
    for (const VertexSet& bag : td.bags) {
        ordered_json b = ordered_json::array();
        for (Vertex v : bag) b.push_back(v);
        bags.push_back(std::move(b));
    }
    j["bags"] = std::move(bags);
    return j;
}

inline TreeDecomposition witness_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("tree_edges") || !j.contains("bags"))
        throw std::invalid_argument("witness json: need \"nodes\", \"tree_edges\", \"bags\"");
    TreeDecomposition td;
    long long nodes = j["nodes"].get<long long>();
    if (nodes < 0 || static_cast<long long>(j["bags"].size()) != nodes)
        throw std::invalid_argument("witness json: bag count must equal \"nodes\"");
    td.tree.resize(static_cast<std::size_t>(nodes));
    for (const auto& bag : j["bags"]) {
        VertexSet b;
        for (const auto& v : bag) b.push_back(v.get<Vertex>());
        td.bags.push_back(as_sorted_set(std::move(b)));
    }
    for (const auto& e : j["tree_edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("witness json: malformed tree edge");
        long long s = e[0].get<long long>(), t = e[1].get<long long>();
        if (s < 0 || t < 0 || s >= nodes || t >= nodes || s == t)
            throw std::invalid_argument("witness json: tree edge endpoint out of range");
        td.add_tree_edge(static_cast<int>(s), static_cast<int>(t));
    }
    return td;
}

inline ordered_json params_to_json(const GenParams& p) {
    ordered_json j;
    j["family"] = p.family;
    j["n"] = p.n;
    j["delta"] = p.delta;
    j["k"] = p.k;
    j["seed"] = p.seed;
    if (p.family == "grid") {
        j["rows"] = p.rows;
        j["cols"] = p.cols;
    }
    return j;
}

inline ordered_json stats_to_json(const OracleStats& s) {
    ordered_json j;
    j["distinct_pairs"] = s.distinct_pairs;
    j["total_calls"] = s.total_calls;
    ordered_json depths = ordered_json::object();
    for (const auto& [depth, count] : s.per_depth) depths[std::to_string(depth)] = count;
    j["per_depth"] = std::move(depths);
    return j;
}

inline ordered_json report_to_json(const ReconstructionReport& r) {
    ordered_json j;
    ordered_json edges = ordered_json::array();
    for (const Edge& e : r.edges) edges.push_back({e.first, e.second});
    j["edges"] = std::move(edges);
    j["stats"] = stats_to_json(r.stats);
    j["depth"] = r.depth;
    ordered_json retries = ordered_json::object();
    for (const auto& [node, count] : r.retries) retries[std::to_string(node)] = count;
    j["retries"] = std::move(retries);
    j["fallbacks"] = r.fallbacks;
    j["extra_batch_pairs"] = r.extra_batch_pairs;
    ordered_json echo;
    echo["k"] = r.config_echo.k;
    echo["delta"] = r.config_echo.delta;
    echo["sample_constant"] = r.config_echo.sample_constant;
    echo["base_threshold"] = r.config_echo.base_threshold;
    echo["max_retries_per_node"] = r.config_echo.max_retries_per_node;
    echo["rng_seed"] = r.config_echo.rng_seed;
    echo["alpha"] = r.config_echo.alpha;
    j["config_echo"] = std::move(echo);
    return j;
}

inline ordered_json property_report_to_json(const PropertyReport& r) {
    ordered_json j;
    j["property"] = r.property;
    j["instances_checked"] = r.instances_checked;
    ordered_json fails = ordered_json::array();
    for (const auto& [inst, counter] : r.failures)
        fails.push_back({{"instance", inst}, {"counterexample", counter}});
    j["failures"] = std::move(fails);
    j["ok"] = r.ok();
    return j;
}

inline ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace tlrecon
