#pragma once

// Distance oracle over a hidden graph, with the accounting the rest of the
// library is measured by. Cost = number of distinct vertex pairs ever
// answered; repeats are free. A budget (on distinct pairs with two different
// endpoints) turns runaway algorithms into a clean failure instead of a
// silent full scan.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "distance_table.hpp"
#include "graph.hpp"

namespace tlrecon {

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleStats {
    std::uint64_t distinct_pairs = 0;  // includes u == u pairs
    std::uint64_t total_calls = 0;     // every query, repeats included
    std::map<int, std::uint64_t> per_depth;  // first charge per distinct pair
};

class CountingOracle {
public:
    // budget defaults to one full pairwise scan: n(n-1)/2 distinct pairs
    explicit CountingOracle(Graph g) : graph_(std::move(g)) {
        require_connected();
        std::uint64_t n = static_cast<std::uint64_t>(graph_.n());
        budget_ = n * (n - 1) / 2;
    }

    CountingOracle(Graph g, std::uint64_t budget) : graph_(std::move(g)), budget_(budget) {
        require_connected();
    }

    Vertex n() const { return graph_.n(); }
    std::uint64_t budget() const { return budget_; }
    const OracleStats& stats() const { return stats_; }
    std::uint64_t distinct_nonself() const { return nonself_; }
    std::uint64_t distinct_self() const { return stats_.distinct_pairs - nonself_; }

    // depth tag attached to the *first* charge of each distinct pair
    void set_depth(int depth) { depth_ = depth; }

    int query(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        ++stats_.total_calls;
        std::uint64_t key = pair_key(u, v);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        if (u != v && nonself_ + 1 > budget_)
            throw BudgetExhausted("oracle budget of " + std::to_string(budget_) +
                                  " distinct pairs exhausted");
        int d = (u == v) ? 0 : distance_between(u, v);
        memo_.emplace(key, d);
        ++stats_.distinct_pairs;
        ++stats_.per_depth[depth_];
        if (u != v) ++nonself_;
        return d;
    }

    // all cross pairs between two sets; same accounting as repeated query()
    DistanceTable query_batch(const VertexSet& xs, const VertexSet& ys) {
        DistanceTable out;
        // resolving the smaller side first keeps the BFS row cache tight
        const VertexSet& sources = xs.size() <= ys.size() ? xs : ys;
        const VertexSet& targets = xs.size() <= ys.size() ? ys : xs;
        for (Vertex s : sources)
            for (Vertex t : targets) out.set(s, t, query(s, t));
        return out;
    }

    // exact pairs answered so far, each as (min, max), sorted
    std::vector<std::pair<Vertex, Vertex>> answered_pairs() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(memo_.size());
        for (const auto& [key, d] : memo_) {
            (void)d;
            out.emplace_back(static_cast<Vertex>(key >> 32),
                             static_cast<Vertex>(key & 0xffffffffu));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    struct Snapshot {
        OracleStats stats;
        std::uint64_t nonself;
        int depth;
    };

    // counters only; the memo keeps already-paid answers free after restore
    Snapshot snapshot() const { return {stats_, nonself_, depth_}; }
    void restore(const Snapshot& s) {
        stats_ = s.stats;
        nonself_ = s.nonself;
        depth_ = s.depth;
    }

    void reset_counters() {
        stats_ = OracleStats{};
        nonself_ = 0;
        depth_ = 0;
    }

private:
    void require_connected() const {
        if (!graph_.is_connected())
            throw std::invalid_argument("CountingOracle: hidden graph must be connected");
    }

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= graph_.n())
            throw std::out_of_range("oracle query: vertex " + std::to_string(v) + " out of range");
    }

    int distance_between(Vertex u, Vertex v) {
        // reuse whichever BFS row already exists before paying for a new one
        auto iu = rows_.find(u);
        if (iu != rows_.end()) return iu->second[static_cast<std::size_t>(v)];
        auto iv = rows_.find(v);
        if (iv != rows_.end()) return iv->second[static_cast<std::size_t>(u)];
        return rows_.emplace(u, bfs_vector(graph_, u)).first->second[static_cast<std::size_t>(v)];
    }

    Graph graph_;
    std::uint64_t budget_ = 0;
    std::uint64_t nonself_ = 0;
    int depth_ = 0;
    OracleStats stats_;
    std::unordered_map<std::uint64_t, int> memo_;
    std::unordered_map<Vertex, std::vector<int>> rows_;
};

}  // namespace tlrecon
