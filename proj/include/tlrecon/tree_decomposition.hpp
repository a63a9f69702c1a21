#pragma once

// Tree decompositions with distance-bounded bags, their validators, and a
// tiny exponential exact-treelength routine used to cross-check generated
// witnesses on very small graphs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace tlrecon {

// A decomposition is a tree over bag nodes plus one vertex bag per node.
// Bags are sorted vertex sets; node ids index both vectors.
struct TreeDecomposition {
    std::vector<std::vector<int>> tree;  // node adjacency (undirected)
    std::vector<VertexSet> bags;

    int nodes() const { return static_cast<int>(bags.size()); }

    void add_tree_edge(int s, int t) {
        tree[static_cast<std::size_t>(s)].push_back(t);
        tree[static_cast<std::size_t>(t)].push_back(s);
    }

    // Canonical tree edge list (s < t, lexicographic).
    std::vector<std::pair<int, int>> tree_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int s = 0; s < nodes(); ++s)
            for (int t : tree[static_cast<std::size_t>(s)])
                if (s < t) out.emplace_back(s, t);
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct ValidityReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the three decomposition conditions (vertex coverage, connected
// occupancy per vertex, edge coverage) plus structural sanity of the tree.
// Every violated condition contributes one witness entry.
inline ValidityReport validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    ValidityReport report;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    const int nn = td.nodes();
    if (nn == 0) {
        fail("decomposition has no nodes");
        return report;
    }
    if (td.tree.size() != td.bags.size()) {
        fail("tree/bag size mismatch");
        return report;
    }

    // structural: adjacency symmetric, in range, no loops
    std::size_t dir_edges = 0;
    for (int s = 0; s < nn; ++s) {
        for (int t : td.tree[static_cast<std::size_t>(s)]) {
            if (t < 0 || t >= nn) {
                fail("tree edge endpoint out of range at node " + std::to_string(s));
                return report;
            }
            if (t == s) {
                fail("tree self-loop at node " + std::to_string(s));
                return report;
            }
            ++dir_edges;
        }
    }

    // tree = connected + |E| == nodes-1
    if (dir_edges != 2 * static_cast<std::size_t>(nn - 1)) {
        fail("node graph has " + std::to_string(dir_edges / 2) + " edges, expected " +
             std::to_string(nn - 1));
    }
    {
        std::vector<char> seen(static_cast<std::size_t>(nn), 0);
        std::queue<int> q;
        seen[0] = 1;
        q.push(0);
        int count = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : td.tree[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    q.push(w);
                }
            }
        }
        if (count != nn) fail("node graph is disconnected");
    }
    if (!report.ok()) return report;  // occupancy checks assume a real tree

    // bag contents sane
    for (int t = 0; t < nn; ++t) {
        const VertexSet& bag = td.bags[static_cast<std::size_t>(t)];
        if (!std::is_sorted(bag.begin(), bag.end()) ||
            std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
            fail("bag " + std::to_string(t) + " is not a sorted set");
            return report;
        }
        for (Vertex v : bag)
            if (v < 0 || v >= g.n()) {
                fail("bag " + std::to_string(t) + " mentions unknown vertex " + std::to_string(v));
                return report;
            }
    }

    // vertex coverage + connected occupancy
    std::vector<std::vector<int>> nodes_of(static_cast<std::size_t>(g.n()));
    for (int t = 0; t < nn; ++t)
        for (Vertex v : td.bags[static_cast<std::size_t>(t)])
            nodes_of[static_cast<std::size_t>(v)].push_back(t);
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto& occ = nodes_of[static_cast<std::size_t>(v)];
        if (occ.empty()) {
            fail("vertex " + std::to_string(v) + " appears in no bag");
            continue;
        }
        // BFS inside the occupancy set
        std::vector<char> in_occ(static_cast<std::size_t>(nn), 0), seen(static_cast<std::size_t>(nn), 0);
        for (int t : occ) in_occ[static_cast<std::size_t>(t)] = 1;
        std::queue<int> q;
        seen[static_cast<std::size_t>(occ[0])] = 1;
        q.push(occ[0]);
        std::size_t reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : td.tree[static_cast<std::size_t>(u)])
                if (in_occ[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++reached;
                    q.push(w);
                }
        }
        if (reached != occ.size())
            fail("occupancy of vertex " + std::to_string(v) + " is not a subtree");
    }

    // edge coverage
    for (const Edge& e : g.edge_set()) {
        bool covered = false;
        for (int t : nodes_of[static_cast<std::size_t>(e.first)]) {
            if (set_contains(td.bags[static_cast<std::size_t>(t)], e.second)) {
                covered = true;
                break;
            }
        }
        if (!covered)
            fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                 ") is covered by no bag");
    }

    return report;
}

// Length of a decomposition: the largest whole-graph distance between two
// vertices sharing a bag. Requires a valid decomposition of a connected graph.
inline int decomposition_length(const Graph& g, const TreeDecomposition& td) {
    if (!g.is_connected()) throw std::invalid_argument("decomposition_length: graph not connected");
    ValidityReport report = validate_decomposition(g, td);
    if (!report.ok())
        throw std::invalid_argument("decomposition_length: invalid decomposition: " +
                                    report.violations.front());
    // one BFS per vertex that occurs in any bag (all of them, by coverage)
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(g.n()));
    int best = 0;
    for (const VertexSet& bag : td.bags) {
        for (std::size_t i = 0; i < bag.size(); ++i) {
            auto& row = dist[static_cast<std::size_t>(bag[i])];
            if (row.empty()) row = bfs_vector(g, bag[i]);
            for (std::size_t j = i + 1; j < bag.size(); ++j)
                best = std::max(best, row[static_cast<std::size_t>(bag[j])]);
        }
    }
    return best;
}

// Smallest-id decomposition node whose bag splits A in half: removing the
// bag leaves components of size at most |A|/2. Such a node always exists
// for a valid decomposition, so failure to find one is a caller bug.
inline int bag_half_separator(const Graph& g, const TreeDecomposition& td, const VertexSet& a) {
    if (a.empty()) throw std::invalid_argument("bag_half_separator: empty target set");
    for (int t = 0; t < td.nodes(); ++t) {
        VertexSet rest = difference_sets(a, td.bags[static_cast<std::size_t>(t)]);
        bool balanced = true;
        for (const VertexSet& block : connected_components(g, rest)) {
            if (2 * block.size() > a.size()) {
                balanced = false;
                break;
            }
        }
        if (balanced) return t;
    }
    throw std::logic_error("bag_half_separator: no bag halves the set; decomposition invalid?");
}

namespace detail {

// Chordality via repeated simplicial elimination on bitmask adjacency
// (fine for the tiny graphs the exact routine accepts).
inline bool chordal_masks(std::vector<std::uint32_t> adj) {
    const std::size_t n = adj.size();
    std::uint32_t alive = (n >= 32) ? ~0u : ((1u << n) - 1u);
    for (std::size_t round = 0; round < n; ++round) {
        bool eliminated = false;
        for (std::size_t v = 0; v < n && !eliminated; ++v) {
            if (!(alive & (1u << v))) continue;
            std::uint32_t nb = adj[v] & alive;
            // simplicial: neighbors pairwise adjacent
            bool simplicial = true;
            for (std::uint32_t rest = nb; rest && simplicial;) {
                std::uint32_t u = static_cast<std::uint32_t>(__builtin_ctz(rest));
                rest &= rest - 1;
                if ((nb & ~adj[u] & ~(1u << u)) != 0) simplicial = false;
            }
            if (simplicial) {
                alive &= ~(1u << v);
                eliminated = true;
            }
        }
        if (!eliminated) return false;
        if (alive == 0) return true;
    }
    return alive == 0;
}

}  // namespace detail

// Exact treelength by exhaustive search, restricted to n <= 9. A graph has
// a length-l decomposition exactly when some chordal supergraph exists whose
// extra edges all join vertices at distance <= l; such a supergraph's clique
// tree is a decomposition with at most n nodes, so the search is complete.
inline int exact_treelength(const Graph& g) {
    const Vertex n = g.n();
    if (n < 1 || n > 9) throw std::invalid_argument("exact_treelength: supported for 1 <= n <= 9");
    if (!g.is_connected()) throw std::invalid_argument("exact_treelength: graph not connected");
    if (g.edge_count() == 0) return 0;  // single vertex

    // all-pairs distances
    std::vector<std::vector<int>> dist;
    dist.reserve(static_cast<std::size_t>(n));
    int diameter = 0;
    for (Vertex v = 0; v < n; ++v) {
        dist.push_back(bfs_vector(g, v));
        for (int d : dist.back()) diameter = std::max(diameter, d);
    }

    std::vector<std::uint32_t> base(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edge_set()) {
        base[static_cast<std::size_t>(e.first)] |= 1u << e.second;
        base[static_cast<std::size_t>(e.second)] |= 1u << e.first;
    }

    for (int l = 1; l <= diameter; ++l) {
        // candidate fill edges: non-edges within distance l
        std::vector<Edge> fill;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (!g.has_edge(u, v) && dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] <= l)
                    fill.emplace_back(u, v);
        if (fill.size() > 26)
            throw std::runtime_error("exact_treelength: search space too large");
        const std::uint64_t limit = std::uint64_t{1} << fill.size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            std::vector<std::uint32_t> adj = base;
            for (std::size_t i = 0; i < fill.size(); ++i) {
                if (mask & (std::uint64_t{1} << i)) {
                    adj[static_cast<std::size_t>(fill[i].first)] |= 1u << fill[i].second;
                    adj[static_cast<std::size_t>(fill[i].second)] |= 1u << fill[i].first;
                }
            }
            if (detail::chordal_masks(std::move(adj))) return l;
        }
    }
    return diameter;  // complete fill is always chordal
}

}  // namespace tlrecon
