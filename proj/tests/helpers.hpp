#pragma once

#include <random>
#include <vector>

#include "bsep/graph.hpp"

namespace bsep::testutil {

inline WeightedGraph path_graph(const std::vector<long long>& w) {
    WeightedGraph g;
    g.n = static_cast<int>(w.size()) + 1;
    for (size_t i = 0; i < w.size(); ++i)
        g.edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), w[i]});
    return g;
}

inline WeightedGraph cycle_graph(const std::vector<long long>& w) {
    WeightedGraph g;
    g.n = static_cast<int>(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        g.edges.push_back({static_cast<int>(i), static_cast<int>((i + 1) % w.size()), w[i]});
    return g;
}

inline WeightedGraph complete_graph(int n, long long w = 1) {
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, w});
    return g;
}

inline WeightedGraph star_graph(int leaves, long long w = 1) {
    WeightedGraph g;
    g.n = leaves + 1;
    for (int i = 1; i <= leaves; ++i) g.edges.push_back({0, i, w});
    return g;
}

/// Replaces every edge weight by the shortest-path distance between its
/// endpoints. The result is weight-minimal with the same metric.
inline WeightedGraph weight_minimal_repair(const WeightedGraph& g) {
    DistanceMatrix dm = all_pairs_distances(g);
    WeightedGraph out = g;
    for (auto& e : out.edges) e.w = dm.at(e.u, e.v);
    return out;
}

/// Random connected graph: a random attachment tree plus extra edges, with
/// weights repaired to be weight-minimal.
inline WeightedGraph random_connected(std::mt19937& rng, int n, long long max_w) {
    std::uniform_int_distribution<long long> weight(1, max_w);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    WeightedGraph g;
    g.n = n;
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        int u = pick(rng);
        g.edges.push_back({u, v, weight(rng)});
        present[u][v] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!present[i][j] && coin(rng) < 0.35) {
                g.edges.push_back({i, j, weight(rng)});
                present[i][j] = true;
            }
    return weight_minimal_repair(g);
}

}  // namespace bsep::testutil
