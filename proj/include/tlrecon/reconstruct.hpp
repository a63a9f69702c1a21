#pragma once

// Randomized reconstruction of a hidden bounded-degree, bounded-treelength
// graph from distance queries. Divide and conquer: sample vertex pairs to
// estimate a high-betweenness vertex z, cut out the ball around z as a
// separator, split the current component with a handful of batch queries,
// recurse, then glue across the separator. Small components are brute-forced.
//
// The recursion tracks (A, R^1..R^{3k}) where A is the current component and
// R^i holds the vertices at distance exactly i from A; every query a node
// issues stays inside A ∪ R^{<=3k}, which is what keeps the total query count
// near-linear on bounded-treelength inputs.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distance_table.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace tlrecon {

struct ReconstructionConfig {
    int k = 1;       // treelength bound of the hidden graph
    int delta = 3;   // max-degree bound of the hidden graph
    std::optional<double> sample_constant_override;  // else delta^k + 2
    std::optional<int> base_threshold_override;      // else max(2, floor(log2 n))
    int max_retries_per_node = 20;
    std::uint64_t rng_seed = 0;
};

inline void validate_config(const ReconstructionConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (cfg.delta < 2) throw std::invalid_argument("config: delta must be >= 2");
    if (cfg.max_retries_per_node < 1)
        throw std::invalid_argument("config: max_retries_per_node must be >= 1");
    if (cfg.sample_constant_override && *cfg.sample_constant_override <= 0.0)
        throw std::invalid_argument("config: sample constant override must be positive");
    if (cfg.base_threshold_override && *cfg.base_threshold_override < 1)
        throw std::invalid_argument("config: base threshold override must be >= 1");
}

// current component plus its exact boundary layers; layers[i-1] holds the
// vertices at distance exactly i from a, for i in [1, 3k]
struct RecursionState {
    VertexSet a;
    std::vector<VertexSet> layers;
    DistanceTable known;  // batch answers gathered at this node

    int k() const { return static_cast<int>(layers.size()) / 3; }

    VertexSet layers_up_to(int j) const {  // union of R^1..R^j
        VertexSet out;
        for (int i = 0; i < j && i < static_cast<int>(layers.size()); ++i)
            out = union_sets(out, layers[static_cast<std::size_t>(i)]);
        return out;
    }

    VertexSet all_layers() const { return layers_up_to(static_cast<int>(layers.size())); }

    VertexSet universe() const { return union_sets(a, all_layers()); }
};

struct ConfigEcho {
    int k = 0;
    int delta = 0;
    double sample_constant = 0.0;
    int base_threshold = 0;
    int max_retries_per_node = 0;
    std::uint64_t rng_seed = 0;
    double alpha = 0.0;
};

struct ReconstructionReport {
    EdgeList edges;
    OracleStats stats;
    int depth = 0;                // deepest recursion level reached
    std::map<int, int> retries;   // internal node id -> separator retry count
    int fallbacks = 0;            // nodes that exhausted retries and were brute-forced
    std::uint64_t extra_batch_pairs = 0;  // cost of the boundary-to-boundary batches
    ConfigEcho config_echo;
};

namespace detail {

// delta^k as a double, refused once it stops being trustworthy
inline double pow_guarded(int delta, int k, const char* who) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
        p *= static_cast<double>(delta);
        if (p > 1e15)
            throw std::overflow_error(std::string(who) +
                                      ": delta^k overflows; supply an explicit override");
    }
    return p;
}

}  // namespace detail

// pair-sample count multiplier; the default is always large enough for the
// betweenness guarantee on degree-delta, length-k instances
inline double sample_constant(int delta, int k) {
    return detail::pow_guarded(delta, k, "sample_constant") + 2.0;
}

inline double effective_sample_constant(const ReconstructionConfig& cfg) {
    if (cfg.sample_constant_override) return *cfg.sample_constant_override;
    return sample_constant(cfg.delta, cfg.k);
}

// balance factor the separator test uses: sqrt(1 - 1/(4(delta^k+1)))
inline double alpha(int delta, int k) {
    double p = detail::pow_guarded(delta, k, "alpha");
    return std::sqrt(1.0 - 1.0 / (4.0 * (p + 1.0)));
}

// components at or below this size are reconstructed by full pairwise scan
inline int base_threshold(Vertex n0, const ReconstructionConfig& cfg) {
    if (cfg.base_threshold_override) return *cfg.base_threshold_override;
    if (n0 < 1) throw std::invalid_argument("base_threshold: need n0 >= 1");
    int lg = 0;
    for (std::uint64_t v = static_cast<std::uint64_t>(n0); v > 1; v >>= 1) ++lg;
    return std::max(2, lg);
}

// full pairwise scan of a small component: edges are the distance-1 pairs
inline EdgeList brute_force_component(CountingOracle& oracle, const VertexSet& a) {
    EdgeList edges;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (oracle.query(a[i], a[j]) == 1) edges.push_back(make_edge(a[i], a[j]));
    return edges;  // i<j over a sorted set is already canonical
}

// Samples pairs {u,v} from A and counts, for every x in A ∪ R^{<=floor(3k/2)},
// how often x lands on a shortest u-v path. The true betweenness of the best
// vertex in that domain is bounded below on valid instances, so the argmax of
// the sampled counts is a good separator center with constant probability.
inline Vertex estimate_high_betweenness_vertex(CountingOracle& oracle, const RecursionState& state,
                                               const ReconstructionConfig& cfg,
                                               std::mt19937_64& rng) {
    if (state.a.size() < 2)
        throw std::invalid_argument("estimate_high_betweenness_vertex: need |A| >= 2");
    const int half = (3 * state.k()) / 2;
    const VertexSet domain = union_sets(state.a, state.layers_up_to(half));
    std::uint64_t r = 0;
    for (const VertexSet& layer : state.layers) r += layer.size();

    const double c = effective_sample_constant(cfg);
    const double raw = c * std::log2(static_cast<double>(state.a.size() + r));
    const std::uint64_t m = static_cast<std::uint64_t>(std::ceil(raw));

    std::vector<std::uint64_t> hits(domain.size(), 0);
    for (std::uint64_t s = 0; s < m; ++s) {
        auto [u, v] = rand_distinct_pair(rng, state.a);
        DistanceTable tu = oracle.query_batch({u}, domain);
        DistanceTable tv = oracle.query_batch({v}, domain);
        const int duv = tu.at(u, v);  // v ∈ A ⊆ domain
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (tu.at(u, domain[i]) + tv.at(v, domain[i]) == duv) ++hits[i];
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < hits.size(); ++i)
        if (hits[i] > hits[best]) best = i;  // ties keep the smallest id
    return domain[best];
}

// separator candidate: the radius-floor(3k/2) ball around z, clipped to the
// known universe (everything farther is provably irrelevant to A's paths)
inline VertexSet compute_separator(CountingOracle& oracle, const RecursionState& state, Vertex z) {
    const int half = (3 * state.k()) / 2;
    if (!set_contains(state.a, z) && !set_contains(state.layers_up_to(half), z))
        throw std::invalid_argument("compute_separator: z outside A and its near layers");
    const VertexSet univ = state.universe();
    DistanceTable t = oracle.query_batch({z}, univ);
    VertexSet s;
    for (Vertex v : univ)
        if (t.at(z, v) <= half) s.push_back(v);
    return s;  // univ sorted, so s is too
}

namespace detail {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx != ry) parent[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
    }
};

}  // namespace detail

// Splits A∖S into the connected components of the graph induced on A∖S,
// using queries only. B = A-vertices one step from S∪R^1; v joins b's set
// when d(v,b) <= d(v, S∪R^1) (such a shortest path cannot touch S∪R^1, and
// any walk out of A crosses R^1, so membership certifies same-component);
// overlapping sets are then merged. Exact, not heuristic.
inline std::vector<VertexSet> partition_components(CountingOracle& oracle,
                                                   const RecursionState& state,
                                                   const VertexSet& s) {
    const VertexSet boundary =
        state.layers.empty() ? s : union_sets(s, state.layers[0]);  // S ∪ R^1
    if (boundary.empty())
        throw std::invalid_argument("partition_components: separator and first layer both empty");
    const VertexSet rest = difference_sets(state.a, boundary);
    if (rest.empty()) return {};

    DistanceTable to_boundary = oracle.query_batch(state.a, boundary);
    std::vector<int> dist_to_sep(state.a.size(), 0);
    VertexSet b_set;
    for (std::size_t i = 0; i < state.a.size(); ++i) {
        int best = -1;
        for (Vertex sv : boundary) {
            int d = to_boundary.at(state.a[i], sv);
            if (best < 0 || d < best) best = d;
        }
        dist_to_sep[i] = best;
        if (best == 1) b_set.push_back(state.a[i]);
    }

    detail::Dsu dsu(rest.size());
    if (!b_set.empty()) {
        DistanceTable to_b = oracle.query_batch(state.a, b_set);
        // index of every rest vertex, and of the b vertices inside rest
        auto rest_index = [&](Vertex v) {
            return static_cast<int>(std::lower_bound(rest.begin(), rest.end(), v) - rest.begin());
        };
        auto a_index = [&](Vertex v) {
            return static_cast<std::size_t>(std::lower_bound(state.a.begin(), state.a.end(), v) -
                                            state.a.begin());
        };
        for (std::size_t i = 0; i < rest.size(); ++i) {
            const Vertex v = rest[i];
            const int dv = dist_to_sep[a_index(v)];
            for (Vertex b : b_set)
                if (to_b.at(v, b) <= dv) dsu.unite(static_cast<int>(i), rest_index(b));
        }
    }

    std::map<int, VertexSet> groups;  // root -> members, roots ascend with min member
    for (std::size_t i = 0; i < rest.size(); ++i)
        groups[dsu.find(static_cast<int>(i))].push_back(rest[i]);
    std::vector<VertexSet> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, members] : groups) {
        (void)root;
        blocks.push_back(std::move(members));  // rest sorted -> members sorted
    }
    return blocks;
}

inline bool is_alpha_balanced(const std::vector<VertexSet>& partition, double alpha_value,
                              std::size_t n_a) {
    for (const VertexSet& block : partition)
        if (static_cast<double>(block.size()) > alpha_value * static_cast<double>(n_a))
            return false;
    return true;
}

struct SeparatorSearch {
    bool success = false;
    VertexSet separator;
    std::vector<VertexSet> partition;
    int retries = 0;  // failed attempts before success; max_retries_per_node if exhausted
};

namespace detail {

inline bool separator_size_ok(std::size_t s_size, int delta, int k) {
    double cap = 1.0;
    const int half = (3 * k) / 2;
    for (int i = 0; i < half; ++i) {
        cap *= static_cast<double>(delta);
        if (cap > 1e15) return true;  // bound too large to be informative
    }
    return static_cast<double>(s_size) <= cap + 1.0;
}

}  // namespace detail

// retry loop around {estimate z, ball separator, partition, balance test};
// alpha_injection exists for tests that need to force the fallback path
inline SeparatorSearch find_balanced_separator(CountingOracle& oracle, const RecursionState& state,
                                               const ReconstructionConfig& cfg,
                                               std::mt19937_64& rng,
                                               std::optional<double> alpha_injection = {}) {
    const double alpha_value = alpha_injection ? *alpha_injection : alpha(cfg.delta, cfg.k);
    for (int attempt = 0; attempt < cfg.max_retries_per_node; ++attempt) {
        Vertex z = estimate_high_betweenness_vertex(oracle, state, cfg, rng);
        VertexSet s = compute_separator(oracle, state, z);
        assert(detail::separator_size_ok(s.size(), cfg.delta, cfg.k));
        std::vector<VertexSet> partition = partition_components(oracle, state, s);
        if (is_alpha_balanced(partition, alpha_value, state.a.size()))
            return {true, std::move(s), std::move(partition), attempt};
    }
    return {false, {}, {}, cfg.max_retries_per_node};
}

// Issues this node's bulk batches and merges them into state.known:
// (S ∪ all layers) × A, plus (S ∪ R^1) × (all layers) so that boundary-to-
// boundary distances needed by the child-layer formula exist. Returns the
// distinct-pair cost of the second batch (reported separately).
inline std::uint64_t node_batches(CountingOracle& oracle, RecursionState& state,
                                  const VertexSet& s) {
    const VertexSet layers = state.all_layers();
    state.known.merge(oracle.query_batch(union_sets(s, layers), state.a));
    std::uint64_t extra = 0;
    if (!layers.empty()) {
        const VertexSet boundary = union_sets(s, state.layers[0]);
        const std::uint64_t before = oracle.stats().distinct_pairs;
        DistanceTable t = oracle.query_batch(boundary, layers);
        extra = oracle.stats().distinct_pairs - before;
        state.known.merge(t);
    }
    return extra;
}

// Derives the recursion state of one component from this node's batches.
// For v outside the component, d(comp, v) = min over s in S∪R^1 of
// d(comp, s) + d(s, v): every path out of the component crosses S∪R^1.
inline RecursionState child_state(const RecursionState& state, const VertexSet& s,
                                  const VertexSet& comp) {
    assert(comp.size() < state.a.size());
    const VertexSet boundary =
        state.layers.empty() ? s : union_sets(s, state.layers[0]);
    const VertexSet candidates = difference_sets(state.universe(), comp);

    std::vector<int> d_comp(boundary.size(), -1);
    for (std::size_t i = 0; i < boundary.size(); ++i)
        for (Vertex a : comp) {
            int d = state.known.at(boundary[i], a);
            if (d_comp[i] < 0 || d < d_comp[i]) d_comp[i] = d;
        }

    RecursionState child;
    child.a = comp;
    child.layers.assign(state.layers.size(), {});
    const int span = static_cast<int>(state.layers.size());  // 3k
    for (Vertex v : candidates) {
        int dv = -1;
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            int d = d_comp[i] + state.known.at(boundary[i], v);
            if (dv < 0 || d < dv) dv = d;
        }
        assert(dv >= 1);
        if (dv <= span) child.layers[static_cast<std::size_t>(dv - 1)].push_back(v);
    }
    return child;  // candidates sorted -> each layer sorted
}

// union of the children's edges plus every edge incident to S∩A inside A;
// no other edges of G[A] exist, because distinct components never touch
inline EdgeList glue(const RecursionState& state, const VertexSet& s,
                     const std::vector<EdgeList>& child_edges) {
    EdgeList out;
    for (const EdgeList& edges : child_edges) out.insert(out.end(), edges.begin(), edges.end());
    for (Vertex sv : intersect_sets(s, state.a))
        for (Vertex a : state.a)
            if (a != sv && state.known.at(sv, a) == 1) out.push_back(make_edge(sv, a));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// test hooks: alpha_override swaps the balance threshold (0 forces the retry
// fallback), on_node observes every recursion state before it is processed
struct ReconstructionHooks {
    std::optional<double> alpha_override;
    std::function<void(const RecursionState&, int depth)> on_node;
};

namespace detail {

struct RunContext {
    const ReconstructionConfig& cfg;
    const ReconstructionHooks& hooks;
    CountingOracle& oracle;
    std::mt19937_64 rng;
    int threshold = 2;
    ReconstructionReport report;
    int next_node_id = 0;
};

inline EdgeList reconstruct_node(RunContext& ctx, RecursionState state, int depth) {
    ctx.report.depth = std::max(ctx.report.depth, depth);
    ctx.oracle.set_depth(depth);
    if (ctx.hooks.on_node) ctx.hooks.on_node(state, depth);
    if (static_cast<int>(state.a.size()) <= ctx.threshold)
        return brute_force_component(ctx.oracle, state.a);

    const int node_id = ctx.next_node_id++;
    SeparatorSearch search =
        find_balanced_separator(ctx.oracle, state, ctx.cfg, ctx.rng, ctx.hooks.alpha_override);
    ctx.report.retries[node_id] = search.retries;
    if (!search.success) {
        ++ctx.report.fallbacks;
        return brute_force_component(ctx.oracle, state.a);
    }

    ctx.report.extra_batch_pairs += node_batches(ctx.oracle, state, search.separator);
    std::vector<EdgeList> child_edges;
    child_edges.reserve(search.partition.size());
    for (const VertexSet& block : search.partition) {
        if (static_cast<int>(block.size()) <= ctx.threshold) {
            ctx.report.depth = std::max(ctx.report.depth, depth + 1);
            ctx.oracle.set_depth(depth + 1);
            child_edges.push_back(brute_force_component(ctx.oracle, block));
            ctx.oracle.set_depth(depth);
        } else {
            child_edges.push_back(
                reconstruct_node(ctx, child_state(state, search.separator, block), depth + 1));
            ctx.oracle.set_depth(depth);
        }
    }
    return glue(state, search.separator, child_edges);
}

}  // namespace detail

// Reconstructs the hidden graph on vertices 0..n-1 behind the oracle.
// Requires a fresh oracle (counters are reset here; a warm memo would skew
// the reported costs). Deterministic given the hidden graph and the config.
inline ReconstructionReport reconstruct(CountingOracle& oracle, Vertex n,
                                        const ReconstructionConfig& cfg,
                                        const ReconstructionHooks& hooks = {}) {
    validate_config(cfg);
    if (n < 1) throw std::invalid_argument("reconstruct: need n >= 1");
    if (n != oracle.n())
        throw std::invalid_argument("reconstruct: vertex universe does not match the oracle");

    detail::RunContext ctx{cfg, hooks, oracle, std::mt19937_64(cfg.rng_seed), 2, {}, 0};
    ctx.threshold = base_threshold(n, cfg);
    const double c = effective_sample_constant(cfg);
    const double alpha_value = hooks.alpha_override ? *hooks.alpha_override
                                                    : alpha(cfg.delta, cfg.k);
    oracle.reset_counters();

    RecursionState root;
    root.a = range_set(n);
    root.layers.assign(static_cast<std::size_t>(3 * cfg.k), {});
    ctx.report.edges = detail::reconstruct_node(ctx, std::move(root), 0);
    ctx.report.stats = oracle.stats();
    ctx.report.config_echo = {cfg.k,
                              cfg.delta,
                              c,
                              ctx.threshold,
                              cfg.max_retries_per_node,
                              cfg.rng_seed,
                              alpha_value};
    return ctx.report;
}

}  // namespace tlrecon
