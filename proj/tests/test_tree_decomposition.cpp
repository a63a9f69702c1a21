#include <stdexcept>
#include <string>

#include "catch2/catch_amalgamated.hpp"

#include "test_util.hpp"
#include "tlrecon/tree_decomposition.hpp"

using namespace tlrecon;

namespace {

bool mentions(const ValidityReport& report, const std::string& needle) {
    for (const std::string& v : report.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

// Path graph 0-1-...-(n-1) with one bag per edge, bags chained in order.
TreeDecomposition path_decomposition(int n) {
    TreeDecomposition td;
    td.bags.reserve(static_cast<std::size_t>(n - 1));
    for (Vertex v = 0; v + 1 < n; ++v) td.bags.push_back({v, static_cast<Vertex>(v + 1)});
    td.tree.resize(td.bags.size());
    for (int t = 0; t + 1 < td.nodes(); ++t) td.add_tree_edge(t, t + 1);
    return td;
}

}  // namespace

TEST_CASE("hand-built decompositions validate") {
    SECTION("triangle in a single bag") {
        Graph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        TreeDecomposition td;
        td.bags = {{0, 1, 2}};
        td.tree.resize(1);
        REQUIRE(validate_decomposition(g, td).ok());
        REQUIRE(decomposition_length(g, td) == 1);
    }
    SECTION("path with per-edge bags") {
        Graph g = testutil::path_graph(5);
        TreeDecomposition td = path_decomposition(5);
        REQUIRE(validate_decomposition(g, td).ok());
        REQUIRE(decomposition_length(g, td) == 1);
        REQUIRE(td.tree_edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    }
}

TEST_CASE("validator reports each broken condition") {
    Graph g = testutil::path_graph(3);

    SECTION("uncovered edge") {
        TreeDecomposition td;
        td.bags = {{0, 1}, {2}};
        td.tree.resize(2);
        td.add_tree_edge(0, 1);
        ValidityReport report = validate_decomposition(g, td);
        REQUIRE_FALSE(report.ok());
        REQUIRE(mentions(report, "covered by no bag"));
    }
    SECTION("vertex in no bag") {
        TreeDecomposition td;
        td.bags = {{0, 1}, {0, 1}};
        td.tree.resize(2);
        td.add_tree_edge(0, 1);
        ValidityReport report = validate_decomposition(g, td);
        REQUIRE(mentions(report, "appears in no bag"));
    }
    SECTION("occupancy not a subtree") {
        TreeDecomposition td;
        td.bags = {{0, 1}, {1, 2}, {0, 2}};
        td.tree.resize(3);
        td.add_tree_edge(0, 1);
        td.add_tree_edge(1, 2);
        ValidityReport report = validate_decomposition(g, td);
        REQUIRE(report.violations.size() == 1);
        REQUIRE(mentions(report, "not a subtree"));
    }
    SECTION("node graph must be a tree") {
        TreeDecomposition td;
        td.bags = {{0, 1}, {1, 2}};
        td.tree.resize(2);  // no edges: wrong count and disconnected
        ValidityReport report = validate_decomposition(g, td);
        REQUIRE_FALSE(report.ok());
        REQUIRE(mentions(report, "expected 1"));
        REQUIRE(mentions(report, "disconnected"));
    }
    SECTION("bags must be sorted sets over known vertices") {
        TreeDecomposition td;
        td.bags = {{1, 0}, {1, 2}};
        td.tree.resize(2);
        td.add_tree_edge(0, 1);
        REQUIRE(mentions(validate_decomposition(g, td), "not a sorted set"));
        td.bags = {{0, 1}, {1, 5}};
        REQUIRE(mentions(validate_decomposition(g, td), "unknown vertex"));
    }
    SECTION("empty decomposition") {
        TreeDecomposition td;
        REQUIRE(mentions(validate_decomposition(g, td), "no nodes"));
    }
}

TEST_CASE("decomposition length is the widest bag in graph distance") {
    Graph c6 = testutil::cycle_graph(6);
    TreeDecomposition all_in_one;
    all_in_one.bags = {range_set(6)};
    all_in_one.tree.resize(1);
    REQUIRE(decomposition_length(c6, all_in_one) == 3);

    // length checks validity first
    TreeDecomposition bad;
    bad.bags = {{0, 1}};
    bad.tree.resize(1);
    REQUIRE_THROWS_AS(decomposition_length(c6, bad), std::invalid_argument);
}

TEST_CASE("a bag that halves the target set is found by smallest id") {
    Graph g = testutil::path_graph(5);
    TreeDecomposition td = path_decomposition(5);

    // removing {0,1} leaves {2,3,4}: too big; {1,2} leaves {0} and {3,4}
    REQUIRE(bag_half_separator(g, td, range_set(5)) == 1);
    // a sparse target is split by the very first bag
    REQUIRE(bag_half_separator(g, td, {0, 4}) == 0);
    REQUIRE_THROWS_AS(bag_half_separator(g, td, {}), std::invalid_argument);

    TreeDecomposition whole;
    whole.bags = {range_set(5)};
    whole.tree.resize(1);
    REQUIRE(bag_half_separator(g, whole, range_set(5)) == 0);

    // star: the first bag contains the center, splitting everything
    Graph star(5);
    for (Vertex leaf = 1; leaf < 5; ++leaf) star.add_edge(0, leaf);
    TreeDecomposition std_star;
    std_star.bags = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    std_star.tree.resize(4);
    for (int t = 0; t + 1 < 4; ++t) std_star.add_tree_edge(t, t + 1);
    REQUIRE(validate_decomposition(star, std_star).ok());
    REQUIRE(bag_half_separator(star, std_star, range_set(5)) == 0);
}

TEST_CASE("exact treelength on small graphs") {
    SECTION("trees and cliques have length one") {
        REQUIRE(exact_treelength(testutil::path_graph(5)) == 1);
        Graph k3(3);
        k3.add_edge(0, 1);
        k3.add_edge(1, 2);
        k3.add_edge(0, 2);
        REQUIRE(exact_treelength(k3) == 1);
        Graph single(1);
        REQUIRE(exact_treelength(single) == 0);
    }
    SECTION("cycles need a third of their length") {
        REQUIRE(exact_treelength(testutil::cycle_graph(4)) == 2);
        REQUIRE(exact_treelength(testutil::cycle_graph(5)) == 2);
        REQUIRE(exact_treelength(testutil::cycle_graph(6)) == 2);
        REQUIRE(exact_treelength(testutil::cycle_graph(9)) == 3);
    }
    SECTION("input guards") {
        REQUIRE_THROWS_AS(exact_treelength(testutil::path_graph(10)), std::invalid_argument);
        Graph disconnected(2);
        REQUIRE_THROWS_AS(exact_treelength(disconnected), std::invalid_argument);
    }
}
