#pragma once

// Seeded instance generators. Each family with a distance-bounded bag
// structure returns the decomposition it was built around, so tests get a
// certificate instead of trusting the construction. All draws go through
// rng.hpp helpers, which makes identical parameters bit-reproducible.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"
#include "tree_decomposition.hpp"

namespace tlrecon {

struct GenParams {
    std::string family;
    Vertex n = 0;
    int delta = 0;  // degree cap the instance was built under
    int k = 0;      // bag distance bound certified by the witness (0: none)
    std::uint64_t seed = 0;
    int rows = 0, cols = 0;  // grid only
};

struct GeneratedInstance {
    Graph graph;
    std::optional<TreeDecomposition> witness;
    GenParams params;
};

// -- random tree --------------------------------------------------------

// Uniform attachment among vertices with spare degree. Witness: one bag
// per edge, glued along the tree, so its length is exactly 1.
inline GeneratedInstance gen_random_tree(Vertex n, int delta, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random_tree: need n >= 1");
    if (delta < 2) throw std::invalid_argument("gen_random_tree: need delta >= 2");

    std::mt19937_64 rng(seed);
    Graph g(n);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    VertexSet open;  // vertices with degree < delta
    open.push_back(0);
    for (Vertex v = 1; v < n; ++v) {
        std::size_t idx = static_cast<std::size_t>(rand_below(rng, open.size()));
        Vertex p = open[idx];
        g.add_edge(p, v);
        parent[static_cast<std::size_t>(v)] = p;
        if (g.degree(p) >= delta) open.erase(open.begin() + static_cast<std::ptrdiff_t>(idx));
        if (g.degree(v) < delta) open.push_back(v);
    }

    TreeDecomposition td;
    if (n == 1) {
        td.tree.resize(1);
        td.bags.push_back({0});
    } else {
        // bag node v-1 holds {parent(v), v}; bags sharing a vertex are wired
        // into a star around that vertex, root children into a chain
        td.tree.resize(static_cast<std::size_t>(n - 1));
        td.bags.resize(static_cast<std::size_t>(n - 1));
        Vertex prev_root_child = -1;
        for (Vertex v = 1; v < n; ++v) {
            Vertex p = parent[static_cast<std::size_t>(v)];
            td.bags[static_cast<std::size_t>(v - 1)] = as_sorted_set({p, v});
            if (p != 0) {
                td.add_tree_edge(static_cast<int>(v - 1), static_cast<int>(p - 1));
            } else {
                if (prev_root_child >= 0)
                    td.add_tree_edge(static_cast<int>(v - 1), static_cast<int>(prev_root_child - 1));
                prev_root_child = v;
            }
        }
    }

    return {std::move(g), std::move(td), {"tree", n, delta, 1, seed, 0, 0}};
}

namespace detail {

// Shared clique-bag growth: every bag is a clique (induced diameter 1),
// each new bag borrows vertices from one existing bag and adds fresh ones.
inline GeneratedInstance clique_bag_instance(Vertex n, int delta, std::uint64_t seed,
                                             const std::string& family) {
    if (n < 1) throw std::invalid_argument(family + ": need n >= 1");
    if (delta < 2) throw std::invalid_argument(family + ": need delta >= 2");

    std::mt19937_64 rng(seed);
    Graph g(n);
    TreeDecomposition td;
    const int cap = std::min(delta + 1, 4);

    auto place_clique = [&](const VertexSet& shared, Vertex first_fresh, int fresh, int parent_node) {
        VertexSet bag = shared;
        for (int i = 0; i < fresh; ++i) bag.push_back(first_fresh + i);
        bag = as_sorted_set(bag);
        for (std::size_t i = 0; i < bag.size(); ++i)
            for (std::size_t j = i + 1; j < bag.size(); ++j) g.add_edge(bag[i], bag[j]);
        td.tree.emplace_back();
        td.bags.push_back(std::move(bag));
        if (parent_node >= 0) td.add_tree_edge(static_cast<int>(td.bags.size()) - 1, parent_node);
    };

    // seed bag; keep it growable (degrees < delta) when more vertices follow
    int s0 = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(n),
                                                      2 + rand_below(rng, static_cast<std::uint64_t>(cap - 1))));
    if (s0 < n) s0 = std::min(s0, delta);
    place_clique({}, 0, s0, -1);
    Vertex placed = static_cast<Vertex>(s0);

    while (placed < n) {
        const Vertex remaining = n - placed;
        bool done = false;
        for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            std::size_t b = static_cast<std::size_t>(rand_below(rng, td.bags.size()));
            int f = 1 + static_cast<int>(rand_below(
                            rng, std::min<std::uint64_t>(static_cast<std::uint64_t>(remaining),
                                                         static_cast<std::uint64_t>(cap - 1))));
            // keep the new bag growable unless it finishes the graph
            const int max_total = (remaining > f) ? std::min(cap, delta) : cap;
            if (f >= max_total) f = max_total - 1;
            if (f < 1) continue;
            VertexSet eligible;
            for (Vertex u : td.bags[b])
                if (g.degree(u) + f <= delta) eligible.push_back(u);
            if (eligible.empty()) continue;
            int sc = 1 + static_cast<int>(rand_below(
                             rng, std::min<std::uint64_t>(eligible.size(),
                                                          static_cast<std::uint64_t>(max_total - f))));
            VertexSet shared;
            for (int i = 0; i < sc; ++i) {
                std::size_t pick = static_cast<std::size_t>(rand_below(rng, eligible.size()));
                shared.push_back(eligible[pick]);
                eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
            }
            place_clique(as_sorted_set(std::move(shared)), placed, f, static_cast<int>(b));
            placed += f;
            done = true;
        }
        if (!done) {
            // deterministic fallback: one fresh vertex off the newest
            // growable bag (the construction keeps one available)
            bool placed_one = false;
            for (std::size_t b = td.bags.size(); b-- > 0 && !placed_one;) {
                for (Vertex u : td.bags[b]) {
                    if (g.degree(u) + 1 <= delta) {
                        place_clique({u}, placed, 1, static_cast<int>(b));
                        placed += 1;
                        placed_one = true;
                        break;
                    }
                }
            }
            if (!placed_one)
                throw std::runtime_error(family + ": stuck placing vertices (degree cap too tight)");
        }
    }

    return {std::move(g), std::move(td), {family, n, delta, 1, seed, 0, 0}};
}

}  // namespace detail

// Chordal instance: a random clique tree. Clique bags keep the witness
// length at 1 and the clique-tree structure makes the graph chordal.
inline GeneratedInstance gen_chordal(Vertex n, int delta, std::uint64_t seed) {
    return detail::clique_bag_instance(n, delta, seed, "chordal");
}

// Bag-tree instance with bag distance bound k. Bags hold at most k+1
// vertices and induce connected subgraphs, so distances inside a bag never
// exceed k. k = 1 degenerates to clique bags.
inline GeneratedInstance gen_bounded_treelength(Vertex n, int delta, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("gen_bounded_treelength: need k >= 1");
    if (k == 1) {
        GeneratedInstance inst = detail::clique_bag_instance(n, delta, seed, "treelength");
        inst.params.k = 1;
        return inst;
    }
    if (n < 1) throw std::invalid_argument("gen_bounded_treelength: need n >= 1");
    if (delta < 2) throw std::invalid_argument("gen_bounded_treelength: need delta >= 2");

    std::mt19937_64 rng(seed);
    Graph g(n);
    TreeDecomposition td;
    const int bag_cap = k + 1;

    // grows one bag: host vertex (or nothing for the seed bag) plus fresh
    // vertices wired by a random spanning tree and optional chords
    auto grow_bag = [&](Vertex host, Vertex first_fresh, int fresh, int parent_node) {
        VertexSet bag;
        if (host >= 0) bag.push_back(host);
        for (int i = 0; i < fresh; ++i) {
            Vertex v = first_fresh + i;
            if (!bag.empty()) {
                VertexSet candidates;
                for (Vertex u : bag)
                    if (g.degree(u) < delta) candidates.push_back(u);
                // a fresh chain always leaves a vertex with spare degree
                g.add_edge(rand_element(rng, candidates), v);
            }
            bag.push_back(v);
        }
        const Vertex last_fresh = fresh > 0 ? first_fresh + fresh - 1 : -1;
        const bool more_later = (first_fresh + fresh) < n;
        VertexSet sorted_bag = as_sorted_set(bag);
        for (std::size_t i = 0; i < sorted_bag.size(); ++i) {
            for (std::size_t j = i + 1; j < sorted_bag.size(); ++j) {
                Vertex x = sorted_bag[i], y = sorted_bag[j];
                if (g.has_edge(x, y) || rand_below(rng, 3) != 0) continue;
                if (g.degree(x) >= delta || g.degree(y) >= delta) continue;
                // keep the newest vertex below the cap while the graph is
                // unfinished, so the next bag always finds a host
                if (more_later && (x == last_fresh || y == last_fresh) &&
                    g.degree(last_fresh) == delta - 1)
                    continue;
                g.add_edge(x, y);
            }
        }
        td.tree.emplace_back();
        td.bags.push_back(std::move(sorted_bag));
        if (parent_node >= 0) td.add_tree_edge(static_cast<int>(td.bags.size()) - 1, parent_node);
    };

    int s0 = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(n),
                                                      2 + rand_below(rng, static_cast<std::uint64_t>(bag_cap - 1))));
    grow_bag(-1, 0, s0, -1);
    Vertex placed = static_cast<Vertex>(s0);

    while (placed < n) {
        const Vertex remaining = n - placed;
        bool done = false;
        for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            std::size_t b = static_cast<std::size_t>(rand_below(rng, td.bags.size()));
            VertexSet hosts;
            for (Vertex u : td.bags[b])
                if (g.degree(u) < delta) hosts.push_back(u);
            if (hosts.empty()) continue;
            Vertex host = rand_element(rng, hosts);
            int f = 1 + static_cast<int>(rand_below(
                            rng, std::min<std::uint64_t>(static_cast<std::uint64_t>(remaining),
                                                         static_cast<std::uint64_t>(bag_cap - 1))));
            grow_bag(host, placed, f, static_cast<int>(b));
            placed += f;
            done = true;
        }
        if (!done) {
            bool placed_one = false;
            for (std::size_t b = td.bags.size(); b-- > 0 && !placed_one;) {
                for (Vertex u : td.bags[b]) {
                    if (g.degree(u) < delta) {
                        grow_bag(u, placed, 1, static_cast<int>(b));
                        placed += 1;
                        placed_one = true;
                        break;
                    }
                }
            }
            if (!placed_one)
                throw std::runtime_error("gen_bounded_treelength: stuck placing vertices");
        }
    }

    return {std::move(g), std::move(td), {"treelength", n, delta, k, seed, 0, 0}};
}

// Plain cycle C_n; no witness (its best bag bound is left to measurement).
inline GeneratedInstance gen_cycle(Vertex n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: need n >= 3");
    Graph g(n);
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return {std::move(g), std::nullopt, {"cycle", n, 2, 0, 0, 0, 0}};
}

// random connected subset of target size: grow a random BFS-ish blob
inline VertexSet random_connected_subset(const Graph& g, Vertex target, std::mt19937_64& rng) {
    if (g.n() < 1) throw std::invalid_argument("random_connected_subset: empty graph");
    if (target < 1) target = 1;
    if (target > g.n()) target = g.n();
    VertexSet chosen{static_cast<Vertex>(rand_below(rng, static_cast<std::uint64_t>(g.n())))};
    VertexSet frontier;
    for (Vertex u : g.neighbors(chosen[0])) frontier.push_back(u);
    frontier = as_sorted_set(std::move(frontier));
    while (static_cast<Vertex>(chosen.size()) < target && !frontier.empty()) {
        std::size_t pick = static_cast<std::size_t>(rand_below(rng, frontier.size()));
        Vertex v = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        chosen.push_back(v);
        chosen = as_sorted_set(std::move(chosen));
        for (Vertex u : g.neighbors(v))
            if (!set_contains(chosen, u) && !set_contains(frontier, u)) {
                frontier.push_back(u);
                frontier = as_sorted_set(std::move(frontier));
            }
    }
    return as_sorted_set(std::move(chosen));
}

// deterministic mixed corpus for property sweeps: rotates through the
// witnessed families, sizes capped by max_n (>= 2)
inline GeneratedInstance gen_sweep_instance(std::uint64_t seed, int index, Vertex max_n = 60) {
    if (max_n < 2) throw std::invalid_argument("gen_sweep_instance: need max_n >= 2");
    std::uint64_t h = mix_seed(seed, static_cast<std::uint64_t>(index));
    Vertex n = 2 + static_cast<Vertex>(h % static_cast<std::uint64_t>(max_n - 1));
    std::uint64_t inst_seed = mix_seed(h, 0x9e3779b97f4a7c15ull);
    switch (index % 5) {
        case 0: return gen_random_tree(n, 3, inst_seed);
        case 1: return gen_chordal(n, 4, inst_seed);
        case 2: return gen_bounded_treelength(n, 4, 1, inst_seed);
        case 3: return gen_bounded_treelength(n, 4, 2, inst_seed);
        default: return gen_bounded_treelength(n, 4, 3, inst_seed);
    }
}

// rows x cols grid; vertex (r, c) gets id r*cols + c. No witness.
inline GeneratedInstance gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: need rows, cols >= 1");
    Vertex n = static_cast<Vertex>(rows) * static_cast<Vertex>(cols);
    Graph g(n);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Vertex v = static_cast<Vertex>(r * cols + c);
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + static_cast<Vertex>(cols));
        }
    }
    return {std::move(g), std::nullopt, {"grid", n, 4, 0, 0, rows, cols}};
}

}  // namespace tlrecon
