#include <catch_amalgamated.hpp>

#include "bsep/bounds.hpp"
#include "helpers.hpp"

using namespace bsep;
using namespace bsep::testutil;

TEST_CASE("bound report on the unit clique K4") {
    WeightedGraph g = complete_graph(4);
    BoundReport r = bounds_report(g);
    REQUIRE(r.best_lower() == 2);
    REQUIRE(r.best_upper() == 2);

    DistanceMatrix dm = all_pairs_distances(g);
    REQUIRE(hamilton_path_weight(dm) == 3);
    REQUIRE(hamilton_cycle_weight(dm) == 4);
    auto find = [&](const std::vector<BoundEntry>& v, const std::string& rule) {
        for (const auto& e : v)
            if (e.rule == rule) return e.value;
        FAIL("missing rule " + rule);
        return Rational(0);
    };
    REQUIRE(find(r.upper, "hamilton_path") == 3);
    REQUIRE(find(r.upper, "half_hamilton_cycle") == 2);
    REQUIRE(find(r.upper, "bottleneck_tree") == 3);  // t = 1, n - 1 = 3
    REQUIRE(find(r.lower, "log2_vertices") == 2);
    REQUIRE(find(r.lower, "triangle_halfsum") == 2);
    REQUIRE(find(r.beta_lower, "subset_plotkin_frac") == Rational(3, 2));
    REQUIRE(find(r.beta_lower, "plotkin_full") == Rational(6, 4));
}

TEST_CASE("bound report on the unit hexagon") {
    WeightedGraph g = cycle_graph({1, 1, 1, 1, 1, 1});
    BoundReport r = bounds_report(g);
    REQUIRE(r.best_lower() == 3);
    REQUIRE(r.best_lower_rule() == "diameter");
    REQUIRE(r.best_upper() == 3);  // half the hamilton cycle, and half the cycle weight
    DistanceMatrix dm = all_pairs_distances(g);
    REQUIRE(hamilton_cycle_weight(dm) == 6);
    REQUIRE(triangle_halfsum_bound(dm) == 3);
    REQUIRE(subset_plotkin_bound(dm) == 3);
}

TEST_CASE("weighted path bounds collapse to the diameter") {
    WeightedGraph g = path_graph({2, 3});
    BoundReport r = bounds_report(g);
    REQUIRE(r.best_lower() == 5);
    REQUIRE(r.best_upper() == 5);
    auto has = [&](const std::vector<BoundEntry>& v, const std::string& rule) {
        for (const auto& e : v)
            if (e.rule == rule) return true;
        return false;
    };
    REQUIRE(has(r.upper, "tree_weight"));
}

TEST_CASE("bottleneck spanning tree minimizes the maximum edge") {
    WeightedGraph g{4, {{0, 1, 4}, {1, 2, 3}, {2, 3, 2}, {0, 3, 5}, {0, 2, 6}}};
    BottleneckTree bt = bottleneck_spanning_tree(g);
    REQUIRE(bt.t == 4);
    REQUIRE(bt.tree.size() == 3);
    WeightedGraph split{3, {{0, 1, 1}}};
    REQUIRE_THROWS_AS(bottleneck_spanning_tree(split), DisconnectedError);
}

TEST_CASE("hamilton bounds respect the size cap") {
    WeightedGraph big = star_graph(17);
    REQUIRE_THROWS_AS(hamilton_path_weight(all_pairs_distances(big)), SizeLimit);
    // the report omits the capped rules instead of failing
    BoundReport r = upper_bounds(cycle_graph({1, 1, 1, 1, 1, 1}), 4);
    for (const auto& e : r.upper) {
        REQUIRE(e.rule != "hamilton_path");
        REQUIRE(e.rule != "half_hamilton_cycle");
    }
    REQUIRE_FALSE(r.upper.empty());
}

TEST_CASE("plotkin bounds are exact rationals") {
    DistanceMatrix dm = all_pairs_distances(complete_graph(5));
    REQUIRE(full_plotkin_bound(dm) == Rational(10, 6));
    REQUIRE(subset_plotkin_bound(dm) == Rational(10, 6));
    DistanceMatrix p = all_pairs_distances(path_graph({1, 1, 1}));
    // best subset of the unit path P4 is {0,1,2,3}: sum 10 over floor(16/4)
    REQUIRE(full_plotkin_bound(p) == Rational(10, 4));
}
