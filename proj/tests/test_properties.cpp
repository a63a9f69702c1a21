#include <stdexcept>

#include "catch2/catch_amalgamated.hpp"

#include "test_util.hpp"
#include "tlrecon/generators.hpp"
#include "tlrecon/properties.hpp"

using namespace tlrecon;

namespace {

TreeDecomposition path_witness(int n) {
    TreeDecomposition td;
    for (Vertex v = 0; v + 1 < n; ++v) td.bags.push_back({v, static_cast<Vertex>(v + 1)});
    td.tree.resize(td.bags.size());
    for (int t = 0; t + 1 < td.nodes(); ++t) td.add_tree_edge(t, t + 1);
    return td;
}

}  // namespace

TEST_CASE("rational arithmetic") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(3, -6) == Rational(-1, 2));
    REQUIRE(Rational(0, 5) == Rational(0, 7));
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(-1, 2) < Rational(0, 1));
    REQUIRE(Rational(2, 3) <= Rational(2, 3));
    REQUIRE(Rational(5, 4) > Rational(1, 1));
    REQUIRE(Rational(7, 2).to_double() == Catch::Approx(3.5));
    REQUIRE(Rational(8, 10).str() == "4/5");
    REQUIRE_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("exact betweenness on fixed shapes") {
    Graph p5 = testutil::path_graph(5);
    VertexSet all = range_set(5);
    REQUIRE(exact_betweenness(p5, all, 2) == Rational(4, 5));
    REQUIRE(exact_betweenness(p5, all, 0) == Rational(2, 5));
    REQUIRE(exact_betweenness(p5, all, 1) == Rational(7, 10));

    Graph star(5);
    for (Vertex leaf = 1; leaf < 5; ++leaf) star.add_edge(0, leaf);
    REQUIRE(exact_betweenness(star, range_set(5), 0) == Rational(1, 1));
    REQUIRE(exact_betweenness(star, range_set(5), 1) == Rational(2, 5));

    // every member of A is on all its own pairs: at least (|A|-1) hits
    std::mt19937_64 rng(5);
    Graph g = testutil::random_connected_graph(rng, 12, 0.3);
    VertexSet a = random_connected_subset(g, 7, rng);
    for (Vertex v : a)
        REQUIRE(exact_betweenness(g, a, v) >= Rational(6, 21));

    REQUIRE_THROWS_AS(exact_betweenness(p5, {2}, 0), std::invalid_argument);
    Graph split(3);
    split.add_edge(0, 1);
    REQUIRE_THROWS_AS(exact_betweenness(split, {0, 1}, 0), std::invalid_argument);
}

TEST_CASE("exact layer states") {
    Graph p7 = testutil::path_graph(7);
    RecursionState st = exact_state(p7, {0, 1, 2}, 1);
    REQUIRE(st.a == VertexSet{0, 1, 2});
    REQUIRE(st.layers == std::vector<VertexSet>{{3}, {4}, {5}});
    REQUIRE(st.k() == 1);
    REQUIRE(st.layers_up_to(2) == VertexSet{3, 4});
    REQUIRE(st.universe() == VertexSet{0, 1, 2, 3, 4, 5});

    RecursionState whole = exact_state(p7, range_set(7), 1);
    for (const VertexSet& layer : whole.layers) REQUIRE(layer.empty());

    RecursionState deep = exact_state(p7, {0}, 2);
    REQUIRE(deep.layers ==
            std::vector<VertexSet>{{1}, {2}, {3}, {4}, {5}, {6}});
    REQUIRE_THROWS_AS(exact_state(p7, {0}, 0), std::invalid_argument);
}

TEST_CASE("graphs with short decompositions expose a high-betweenness vertex") {
    SECTION("an edge and a path") {
        Graph k2(2);
        k2.add_edge(0, 1);
        TreeDecomposition bag;
        bag.bags = {{0, 1}};
        bag.tree.resize(1);
        REQUIRE(check_betweenness_bound(k2, bag, 1, 2).ok());

        Graph p5 = testutil::path_graph(5);
        REQUIRE(check_betweenness_bound(p5, path_witness(5), 1, 2).ok());
    }
    SECTION("single vertex is vacuous") {
        Graph g(1);
        TreeDecomposition bag;
        bag.bags = {{0}};
        bag.tree.resize(1);
        PropertyReport rep = check_betweenness_bound(g, bag, 1, 2);
        REQUIRE(rep.ok());
        REQUIRE(rep.instances_checked == 1);
    }
    SECTION("hypothesis violations are rejected up front") {
        Graph c6 = testutil::cycle_graph(6);
        TreeDecomposition whole;
        whole.bags = {range_set(6)};
        whole.tree.resize(1);
        // witness is valid but has length 3 > k = 1
        REQUIRE_THROWS_AS(check_betweenness_bound(c6, whole, 1, 2), std::invalid_argument);
        TreeDecomposition broken;
        broken.bags = {{0, 1}};
        broken.tree.resize(1);
        REQUIRE_THROWS_AS(check_betweenness_bound(c6, broken, 3, 2), std::invalid_argument);
    }
    SECTION("generated corpus passes") {
        for (int index = 0; index < 15; ++index) {
            auto inst = gen_sweep_instance(554, index, 30);
            PropertyReport rep = check_betweenness_bound(inst.graph, *inst.witness,
                                                         inst.params.k, inst.params.delta);
            CAPTURE(index, inst.params.family, inst.params.n);
            REQUIRE(rep.ok());
        }
    }
}

TEST_CASE("shortest paths between near vertices avoid the far region") {
    Graph p7 = testutil::path_graph(7);
    PropertyReport rep = check_path_confinement(p7, 1, {0, 1, 2});
    REQUIRE(rep.ok());
    REQUIRE(rep.instances_checked == 9);  // z in {4,5,6} x 3 pairs

    // whole-set target: nothing is far, nothing to check
    PropertyReport whole = check_path_confinement(p7, 1, range_set(7));
    REQUIRE(whole.ok());
    REQUIRE(whole.instances_checked == 0);

    Graph split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    REQUIRE_THROWS_AS(check_path_confinement(split, 1, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("confinement fails on a long cycle, which has no short decomposition") {
    // negative control: in C8 the antipode of A lies on a shortest path
    Graph c8 = testutil::cycle_graph(8);
    PropertyReport rep = check_path_confinement(c8, 1, {0, 1, 2, 3, 4});
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.failures.front().second.find("detour") != std::string::npos);
}

TEST_CASE("balance recheck helper") {
    Graph p6 = testutil::path_graph(6);
    VertexSet all = range_set(6);
    REQUIRE(separator_balanced_check(p6, all, all, 0.1));        // nothing left
    REQUIRE(separator_balanced_check(p6, all, {2, 3}, 0.5));     // two pairs
    REQUIRE_FALSE(separator_balanced_check(p6, all, {}, 0.9));   // one big block
    REQUIRE(separator_balanced_check(p6, all, {}, 1.0));
}

TEST_CASE("some bag always halves the target set") {
    Graph p5 = testutil::path_graph(5);
    REQUIRE(check_bag_separator(p5, path_witness(5), range_set(5)).ok());
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = gen_sweep_instance(88, trial, 25);
        VertexSet a = random_connected_subset(
            inst.graph, static_cast<Vertex>(1 + rand_below(rng, static_cast<std::uint64_t>(inst.graph.n()))),
            rng);
        PropertyReport rep = check_bag_separator(inst.graph, *inst.witness, a);
        CAPTURE(trial, inst.params.family, inst.params.n);
        REQUIRE(rep.ok());
    }
}

TEST_CASE("balls around popular vertices separate the target set") {
    SECTION("one edge, trivially") {
        Graph k2(2);
        k2.add_edge(0, 1);
        TreeDecomposition bag;
        bag.bags = {{0, 1}};
        bag.tree.resize(1);
        PropertyReport rep = check_ball_separator(k2, bag, 1, 2, {0, 1});
        REQUIRE(rep.ok());
        REQUIRE(rep.instances_checked == 2);
    }
    SECTION("paths and the generated corpus") {
        Graph p7 = testutil::path_graph(7);
        REQUIRE(check_ball_separator(p7, path_witness(7), 1, 2, range_set(7)).ok());
        REQUIRE(check_ball_separator(p7, path_witness(7), 1, 2, {2, 3, 4}).ok());

        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 12; ++trial) {
            auto inst = gen_sweep_instance(31, trial, 22);
            VertexSet a = random_connected_subset(
                inst.graph,
                static_cast<Vertex>(2 + rand_below(rng, static_cast<std::uint64_t>(inst.graph.n()))),
                rng);
            PropertyReport rep = check_ball_separator(inst.graph, *inst.witness, inst.params.k,
                                                      inst.params.delta, a);
            CAPTURE(trial, inst.params.family, inst.params.n);
            REQUIRE(rep.ok());
        }
    }
    SECTION("singleton target is vacuous") {
        Graph p3 = testutil::path_graph(3);
        PropertyReport rep = check_ball_separator(p3, path_witness(3), 1, 2, {1});
        REQUIRE(rep.ok());
        REQUIRE(rep.instances_checked == 0);
    }
}

TEST_CASE("query-driven partition equals ground truth") {
    Graph p5 = testutil::path_graph(5);
    REQUIRE(check_partition_equivalence(p5, 1, range_set(5), 2).ok());

    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = gen_sweep_instance(46, trial, 30);
        const Graph& g = inst.graph;
        VertexSet a = random_connected_subset(
            g, static_cast<Vertex>(1 + rand_below(rng, static_cast<std::uint64_t>(g.n()))), rng);
        const int half = (3 * inst.params.k) / 2;
        Vertex z = rand_element(rng, neighborhood_closed(g, a, half));
        PropertyReport rep = check_partition_equivalence(g, inst.params.k, a, z);
        CAPTURE(trial, inst.params.family, inst.params.n);
        REQUIRE(rep.ok());
    }
}

TEST_CASE("sampled centers usually reach half the best betweenness") {
    auto inst = gen_random_tree(40, 3, 5);
    const Graph& g = inst.graph;
    VertexSet all = range_set(40);
    Rational best(0, 1);
    for (Vertex v = 0; v < 40; ++v) {
        Rational b = exact_betweenness(g, all, v);
        if (best < b) best = b;
    }
    ReconstructionConfig cfg;  // delta 3, k 1: the instance's own bounds
    RecursionState root;
    root.a = all;
    root.layers.assign(3, {});
    int good = 0;
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        std::mt19937_64 rng(trial);
        CountingOracle oracle(g, 1u << 20);
        Vertex z = estimate_high_betweenness_vertex(oracle, root, cfg, rng);
        Rational pz = exact_betweenness(g, all, z);
        if (Rational(2 * pz.num, pz.den) >= best) ++good;
    }
    // each trial independently succeeds with probability at least 2/3;
    // 176 is three standard deviations below that expectation
    REQUIRE(good >= 176);
}

TEST_CASE("property reports aggregate") {
    PropertyReport a{"demo", 2, {}};
    PropertyReport b{"demo", 3, {{"i", "bad"}}};
    a.absorb(b);
    REQUIRE(a.instances_checked == 5);
    REQUIRE_FALSE(a.ok());
    REQUIRE(a.failures.size() == 1);
}
