#pragma once

// Core graph types and breadth-first utilities shared by the distance
// oracle, the instance generators and the reconstruction pipeline.
// Vertices are dense ids 0..n-1; vertex sets are sorted, duplicate-free
// vectors so that every traversal order is reproducible.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tlrecon {

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;   // sorted ascending, no duplicates
using Edge = std::pair<Vertex, Vertex>;  // normalized to first < second
using EdgeList = std::vector<Edge>;      // sorted lexicographically

// -- sorted-set helpers ------------------------------------------------------

inline bool set_contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet union_sets(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet difference_sets(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet intersect_sets(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Sorts and deduplicates an arbitrary vertex list.
inline VertexSet as_sorted_set(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// The full universe {0, ..., n-1}.
inline VertexSet range_set(Vertex n) {
    VertexSet v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

inline Edge make_edge(Vertex u, Vertex v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

// -- graph -------------------------------------------------------------------

// Simple undirected graph with sorted adjacency lists. Self-loops are
// rejected and parallel edges collapse silently (add_edge reports whether
// the edge was new).
class Graph {
public:
    Graph() = default;

    explicit Graph(Vertex n) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        adj_.resize(static_cast<std::size_t>(n));
    }

    Vertex n() const { return static_cast<Vertex>(adj_.size()); }

    std::size_t edge_count() const { return edge_count_; }

    bool add_edge(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
        if (has_edge(u, v)) return false;
        insert_sorted(adj_[static_cast<std::size_t>(u)], v);
        insert_sorted(adj_[static_cast<std::size_t>(v)], u);
        ++edge_count_;
        return true;
    }

    bool has_edge(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& nu = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nu.begin(), nu.end(), v);
    }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(Vertex v) const {
        return static_cast<int>(neighbors(v).size());
    }

    int max_degree() const {
        std::size_t best = 0;
        for (const auto& nb : adj_) best = std::max(best, nb.size());
        return static_cast<int>(best);
    }

    // Canonical edge list: pairs (u, v) with u < v, lexicographically sorted.
    EdgeList edge_set() const {
        EdgeList edges;
        edges.reserve(edge_count_);
        for (Vertex u = 0; u < n(); ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) edges.emplace_back(u, v);
        return edges;  // already sorted by construction
    }

    bool is_connected() const;

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n())
            throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
    }

    static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
        list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    }

    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

// -- breadth-first search ----------------------------------------------------

// Hop distances from src to every vertex; -1 marks unreachable ones.
// Internal workhorse for the map-returning front end below.
inline std::vector<int> bfs_vector(const Graph& g, Vertex src) {
    if (src < 0 || src >= g.n()) throw std::out_of_range("bfs_vector: bad source");
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<Vertex> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        int du = dist[static_cast<std::size_t>(u)];
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

// Exact hop distances from src. Unreachable vertices are simply absent
// from the result; no sentinel value ever enters downstream arithmetic.
inline std::map<Vertex, int> bfs_distances(const Graph& g, Vertex src) {
    std::map<Vertex, int> out;
    std::vector<int> dist = bfs_vector(g, src);
    for (Vertex v = 0; v < g.n(); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0) out.emplace(v, dist[static_cast<std::size_t>(v)]);
    return out;
}

// Multi-source BFS; dist[v] = min over sources, capped at `radius` when
// radius >= 0 (vertices further away keep -1).
inline std::vector<int> bfs_multi_vector(const Graph& g, const VertexSet& sources, int radius) {
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<Vertex> q;
    for (Vertex s : sources) {
        if (s < 0 || s >= g.n()) throw std::out_of_range("bfs_multi_vector: bad source");
        if (dist[static_cast<std::size_t>(s)] != 0) {
            dist[static_cast<std::size_t>(s)] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        int du = dist[static_cast<std::size_t>(u)];
        if (radius >= 0 && du >= radius) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

inline bool Graph::is_connected() const {
    if (n() == 0) return false;
    std::vector<int> dist = bfs_vector(*this, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

// Closed neighborhood N^{<=radius}[A]: every vertex within the given hop
// radius of the set A. radius 0 returns A itself.
inline VertexSet neighborhood_closed(const Graph& g, const VertexSet& a, int radius) {
    if (radius < 0) throw std::invalid_argument("neighborhood_closed: negative radius");
    std::vector<int> dist = bfs_multi_vector(g, a, radius);
    VertexSet out;
    for (Vertex v = 0; v < g.n(); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0) out.push_back(v);
    return out;
}

// Connected components of the subgraph induced by `subset`. Each block is
// sorted and blocks are ordered by their smallest element.
inline std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& subset) {
    std::vector<char> in_subset(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : subset) {
        if (v < 0 || v >= g.n()) throw std::out_of_range("connected_components: bad vertex");
        in_subset[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<VertexSet> blocks;
    for (Vertex s : subset) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        VertexSet block;
        std::queue<Vertex> q;
        seen[static_cast<std::size_t>(s)] = 1;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            block.push_back(u);
            for (Vertex w : g.neighbors(u)) {
                if (in_subset[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
            }
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    // subset iterates ascending, so blocks already come out ordered by
    // their minimum element
    return blocks;
}

// -- induced subgraph ----------------------------------------------------

struct InducedSubgraph {
    Graph graph;            // vertices renumbered to 0..|subset|-1
    VertexSet to_original;  // new id -> original id (sorted by new id)

    Vertex to_new(Vertex original) const {
        auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
        if (it == to_original.end() || *it != original)
            throw std::out_of_range("InducedSubgraph: vertex not in subset");
        return static_cast<Vertex>(it - to_original.begin());
    }
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& subset) {
    InducedSubgraph out;
    out.to_original = subset;
    out.graph = Graph(static_cast<Vertex>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (Vertex w : g.neighbors(subset[i])) {
            if (w > subset[i] && set_contains(subset, w))
                out.graph.add_edge(static_cast<Vertex>(i), out.to_new(w));
        }
    }
    return out;
}

}  // namespace tlrecon
