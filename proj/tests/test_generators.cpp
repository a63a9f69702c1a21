#include <stdexcept>

#include "catch2/catch_amalgamated.hpp"

#include "test_util.hpp"
#include "tlrecon/generators.hpp"

using namespace tlrecon;

namespace {

// Independent chordality scan: an induced cycle of length >= 4 is a
// connected vertex subset on which every member has induced degree two.
bool has_induced_long_cycle(const Graph& g) {
    const int n = g.n();
    REQUIRE(n <= 20);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 4) continue;
        VertexSet subset;
        for (Vertex v = 0; v < n; ++v)
            if (mask & (1u << v)) subset.push_back(v);
        bool all_degree_two = true;
        for (Vertex v : subset) {
            int deg = 0;
            for (Vertex u : g.neighbors(v)) deg += set_contains(subset, u) ? 1 : 0;
            if (deg != 2) {
                all_degree_two = false;
                break;
            }
        }
        if (all_degree_two && connected_components(g, subset).size() == 1) return true;
    }
    return false;
}

void require_certified(const GeneratedInstance& inst) {
    CAPTURE(inst.params.family, inst.params.n, inst.params.delta, inst.params.k, inst.params.seed);
    REQUIRE(inst.graph.is_connected());
    REQUIRE(inst.graph.max_degree() <= inst.params.delta);
    REQUIRE(inst.witness.has_value());
    ValidityReport report = validate_decomposition(inst.graph, *inst.witness);
    CAPTURE(report.violations);
    REQUIRE(report.ok());
    REQUIRE(decomposition_length(inst.graph, *inst.witness) <= inst.params.k);
}

}  // namespace

TEST_CASE("generators are bit-reproducible for equal parameters") {
    auto a = gen_random_tree(60, 3, 99);
    auto b = gen_random_tree(60, 3, 99);
    REQUIRE(a.graph.edge_set() == b.graph.edge_set());
    REQUIRE(a.witness->bags == b.witness->bags);
    REQUIRE(a.witness->tree_edges() == b.witness->tree_edges());
    REQUIRE(gen_random_tree(60, 3, 100).graph.edge_set() != a.graph.edge_set());

    auto c = gen_chordal(40, 5, 7);
    auto d = gen_chordal(40, 5, 7);
    REQUIRE(c.graph.edge_set() == d.graph.edge_set());
    REQUIRE(c.witness->bags == d.witness->bags);

    auto e = gen_bounded_treelength(45, 4, 3, 13);
    auto f = gen_bounded_treelength(45, 4, 3, 13);
    REQUIRE(e.graph.edge_set() == f.graph.edge_set());
    REQUIRE(e.witness->bags == f.witness->bags);
}

TEST_CASE("random trees are trees under the degree cap") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (Vertex n : {1, 2, 3, 7, 33, 150}) {
            auto inst = gen_random_tree(n, 3, seed);
            require_certified(inst);
            REQUIRE(inst.graph.edge_count() == n - 1);
            REQUIRE(inst.params.k == 1);
        }
    }
    auto tiny = gen_random_tree(1, 3, 5);
    REQUIRE(tiny.graph.n() == 1);
    REQUIRE(tiny.witness->bags == std::vector<VertexSet>{{0}});
    auto pair = gen_random_tree(2, 2, 5);
    REQUIRE(pair.graph.has_edge(0, 1));
    REQUIRE_THROWS_AS(gen_random_tree(0, 3, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_random_tree(5, 1, 1), std::invalid_argument);
}

TEST_CASE("chordal instances carry clique bags and no long induced cycles") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto inst = gen_chordal(12, 4, seed);
        require_certified(inst);
        REQUIRE_FALSE(has_induced_long_cycle(inst.graph));
        for (const VertexSet& bag : inst.witness->bags) {
            REQUIRE(bag.size() <= 4);
            for (std::size_t i = 0; i < bag.size(); ++i)
                for (std::size_t j = i + 1; j < bag.size(); ++j)
                    REQUIRE(inst.graph.has_edge(bag[i], bag[j]));
        }
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (Vertex n : {1, 2, 5, 30, 120}) require_certified(gen_chordal(n, 6, seed));
    }
}

TEST_CASE("bounded-length instances respect bag size and distance bounds") {
    for (int k : {2, 3}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            for (Vertex n : {1, 2, 6, 25, 80}) {
                auto inst = gen_bounded_treelength(n, 4, k, seed);
                require_certified(inst);
                REQUIRE(inst.params.k == k);
                for (const VertexSet& bag : inst.witness->bags)
                    REQUIRE(static_cast<int>(bag.size()) <= k + 1);
            }
        }
    }
    // k = 1 reduces to clique bags under the treelength label
    auto flat = gen_bounded_treelength(20, 4, 1, 3);
    REQUIRE(flat.params.family == "treelength");
    REQUIRE(flat.params.k == 1);
    require_certified(flat);
    for (const VertexSet& bag : flat.witness->bags)
        for (std::size_t i = 0; i < bag.size(); ++i)
            for (std::size_t j = i + 1; j < bag.size(); ++j)
                REQUIRE(flat.graph.has_edge(bag[i], bag[j]));
    REQUIRE_THROWS_AS(gen_bounded_treelength(5, 4, 0, 1), std::invalid_argument);
}

TEST_CASE("fixed-shape families") {
    auto c5 = gen_cycle(5);
    REQUIRE(c5.graph.edge_set() ==
            EdgeList{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});
    REQUIRE_FALSE(c5.witness.has_value());
    REQUIRE_THROWS_AS(gen_cycle(2), std::invalid_argument);

    auto grid = gen_grid(2, 3);
    REQUIRE(grid.graph.n() == 6);
    REQUIRE(grid.graph.edge_set() ==
            EdgeList{{0, 1}, {0, 3}, {1, 2}, {1, 4}, {2, 5}, {3, 4}, {4, 5}});
    REQUIRE(grid.params.rows == 2);
    REQUIRE(grid.params.cols == 3);
    REQUIRE_THROWS_AS(gen_grid(0, 3), std::invalid_argument);
}

TEST_CASE("sweep corpus rotates families deterministically") {
    const char* expected_family[5] = {"tree", "chordal", "treelength", "treelength", "treelength"};
    const int expected_k[5] = {1, 1, 1, 2, 3};
    for (int index = 0; index < 25; ++index) {
        auto inst = gen_sweep_instance(42, index);
        REQUIRE(inst.params.family == expected_family[index % 5]);
        REQUIRE(inst.params.k == expected_k[index % 5]);
        REQUIRE(inst.params.n >= 2);
        REQUIRE(inst.params.n <= 60);
        require_certified(inst);
        auto again = gen_sweep_instance(42, index);
        REQUIRE(again.graph.edge_set() == inst.graph.edge_set());
    }
    auto small = gen_sweep_instance(7, 0, 5);
    REQUIRE(small.params.n <= 5);
    REQUIRE_THROWS_AS(gen_sweep_instance(7, 0, 1), std::invalid_argument);
}

TEST_CASE("random connected subsets are connected and correctly sized") {
    std::mt19937_64 rng(314);
    Graph g = gen_grid(5, 6).graph;
    for (int trial = 0; trial < 40; ++trial) {
        Vertex target = static_cast<Vertex>(1 + rand_below(rng, 30));
        VertexSet subset = random_connected_subset(g, target, rng);
        REQUIRE(std::is_sorted(subset.begin(), subset.end()));
        REQUIRE(static_cast<Vertex>(subset.size()) == target);
        REQUIRE(connected_components(g, subset).size() == 1);
        for (Vertex v : subset) {
            REQUIRE(v >= 0);
            REQUIRE(v < g.n());
        }
    }
    REQUIRE(random_connected_subset(g, 0, rng).size() == 1);
    REQUIRE(random_connected_subset(g, 1000, rng).size() == 30);
}
