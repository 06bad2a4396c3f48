#pragma once

#include <algorithm>
#include <climits>
#include <numeric>
#include <string>
#include <vector>

#include "bsep/errors.hpp"
#include "bsep/graph.hpp"
#include "bsep/rational.hpp"

namespace bsep {

constexpr int kDefaultSubsetCap = 6;
constexpr int kDefaultHeldKarpCap = 16;

struct BoundEntry {
    std::string rule;
    Rational value;
};

/// Closed-form bounds on c(G, w). `lower` and `upper` bound c itself;
/// `beta_lower` entries bound the asymptotic stretch beta(G, w) and are kept
/// un-ceiled.
struct BoundReport {
    std::vector<BoundEntry> lower;
    std::vector<BoundEntry> upper;
    std::vector<BoundEntry> beta_lower;

    long long best_lower() const {
        long long best = 0;
        for (const auto& e : lower) best = std::max(best, ceil_to_int64(e.value));
        return best;
    }
    long long best_upper() const {
        long long best = LLONG_MAX;
        for (const auto& e : upper) best = std::min(best, ceil_to_int64(e.value));
        return best;
    }
    /// Rule name realizing best_lower, ties broken alphabetically.
    std::string best_lower_rule() const {
        long long best = best_lower();
        std::string name;
        for (const auto& e : lower)
            if (ceil_to_int64(e.value) == best && (name.empty() || e.rule < name)) name = e.rule;
        return name;
    }
};

/// Minimax edge weight over spanning trees, with the tree realizing it.
/// A minimum spanning tree minimizes the maximum edge, so Kruskal does.
struct BottleneckTree {
    long long t = 0;
    std::vector<Edge> tree;
};

inline BottleneckTree bottleneck_spanning_tree(const WeightedGraph& g) {
    validate_graph(g);
    std::vector<Edge> sorted = g.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });
    std::vector<int> root(g.n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    BottleneckTree result;
    for (const Edge& e : sorted) {
        int a = find(e.u), b = find(e.v);
        if (a == b) continue;
        root[a] = b;
        result.tree.push_back(e);
        result.t = std::max(result.t, e.w);
    }
    if (static_cast<int>(result.tree.size()) != g.n - 1) throw DisconnectedError();
    return result;
}

namespace detail {

// Held-Karp over the metric closure. Returns the minimum weight of a
// Hamilton path (anywhere to anywhere) or Hamilton cycle.
inline long long held_karp(const DistanceMatrix& dm, bool cycle) {
    int n = dm.n;
    if (n == 1) return 0;
    if (n == 2) return cycle ? 2 * dm.at(0, 1) : dm.at(0, 1);
    const long long INF = LLONG_MAX / 4;
    size_t full = 1ULL << n;
    // dp[mask][v]: cheapest walk visiting exactly `mask`, ending at v,
    // starting from vertex 0 for cycles and from anywhere for paths.
    std::vector<long long> dp(full * n, INF);
    if (cycle)
        dp[(1ULL << 0) * n + 0] = 0;
    else
        for (int v = 0; v < n; ++v) dp[(1ULL << v) * n + v] = 0;
    for (size_t mask = 1; mask < full; ++mask)
        for (int v = 0; v < n; ++v) {
            long long cur = dp[mask * n + v];
            if (cur == INF || !(mask & (1ULL << v))) continue;
            for (int u = 0; u < n; ++u) {
                if (mask & (1ULL << u)) continue;
                size_t next = mask | (1ULL << u);
                long long cand = cur + dm.at(v, u);
                if (cand < dp[next * n + u]) dp[next * n + u] = cand;
            }
        }
    long long best = INF;
    for (int v = 0; v < n; ++v) {
        long long cur = dp[(full - 1) * n + v];
        if (cur == INF) continue;
        best = std::min(best, cycle ? cur + dm.at(v, 0) : cur);
    }
    return best;
}

}  // namespace detail

/// Minimum Hamilton path weight of the metric closure.
inline long long hamilton_path_weight(const DistanceMatrix& dm, int cap = kDefaultHeldKarpCap) {
    if (dm.n > cap) throw SizeLimit("held-karp limited to " + std::to_string(cap) + " vertices");
    return detail::held_karp(dm, false);
}

/// Minimum Hamilton cycle weight of the metric closure.
inline long long hamilton_cycle_weight(const DistanceMatrix& dm, int cap = kDefaultHeldKarpCap) {
    if (dm.n > cap) throw SizeLimit("held-karp limited to " + std::to_string(cap) + " vertices");
    return detail::held_karp(dm, true);
}

namespace detail {

// Best ratio sum_{pairs in B} d / floor(|B|^2 / 4) over subsets B of at most
// `cap` vertices, enumerated incrementally.
inline void subset_plotkin_rec(const DistanceMatrix& dm, std::vector<int>& chosen, int next,
                               long long pair_sum, int cap, Rational& best) {
    int sz = static_cast<int>(chosen.size());
    if (sz >= 2) {
        Rational v(pair_sum, static_cast<long long>(sz) * sz / 4);
        if (v > best) best = v;
    }
    if (sz == cap) return;
    for (int u = next; u < dm.n; ++u) {
        long long add = 0;
        for (int c : chosen) add += dm.at(c, u);
        chosen.push_back(u);
        subset_plotkin_rec(dm, chosen, u + 1, pair_sum + add, cap, best);
        chosen.pop_back();
    }
}

}  // namespace detail

/// Maximum over vertex subsets B (2 <= |B| <= cap) of
/// sum of pairwise distances within B / floor(|B|^2 / 4). Lower bound on beta.
inline Rational subset_plotkin_bound(const DistanceMatrix& dm, int cap = kDefaultSubsetCap) {
    Rational best = 0;
    std::vector<int> chosen;
    detail::subset_plotkin_rec(dm, chosen, 0, 0, std::min(cap, dm.n), best);
    return best;
}

/// sum of all pairwise distances / floor(n^2 / 4); the full-vertex-set
/// member of the subset bound family, valid for any n.
inline Rational full_plotkin_bound(const DistanceMatrix& dm) {
    if (dm.n < 2) return 0;
    long long sum = 0;
    for (int i = 0; i < dm.n; ++i)
        for (int j = i + 1; j < dm.n; ++j) sum += dm.at(i, j);
    return Rational(sum, static_cast<long long>(dm.n) * dm.n / 4);
}

/// Max over vertex triples of ceil(half the pairwise distance sum); the
/// optimal length for the triple alone, hence a lower bound for G.
inline long long triangle_halfsum_bound(const DistanceMatrix& dm) {
    long long best = 0;
    for (int i = 0; i < dm.n; ++i)
        for (int j = i + 1; j < dm.n; ++j)
            for (int k = j + 1; k < dm.n; ++k)
                best = std::max(best, (dm.at(i, j) + dm.at(i, k) + dm.at(j, k) + 1) / 2);
    return best;
}

inline BoundReport lower_bounds(const WeightedGraph& g, int subset_cap = kDefaultSubsetCap) {
    DistanceMatrix dm = all_pairs_distances(g);
    BoundReport r;
    r.lower.push_back({"diameter", Rational(diameter(dm))});
    r.lower.push_back({"log2_vertices", Rational(log2_ceil(g.n))});
    if (g.n >= 3) r.lower.push_back({"triangle_halfsum", Rational(triangle_halfsum_bound(dm))});
    if (g.n >= 2) {
        Rational sub = subset_plotkin_bound(dm, subset_cap);
        r.lower.push_back({"subset_plotkin", Rational(ceil_rat(sub))});
        r.beta_lower.push_back({"subset_plotkin_frac", sub});
        r.beta_lower.push_back({"plotkin_full", full_plotkin_bound(dm)});
    }
    return r;
}

inline BoundReport upper_bounds(const WeightedGraph& g, int held_karp_cap = kDefaultHeldKarpCap) {
    DistanceMatrix dm = all_pairs_distances(g);
    BoundReport r;
    // Hamilton bounds are omitted, not approximated, past the cap.
    if (g.n <= held_karp_cap) {
        r.upper.push_back({"hamilton_path", Rational(detail::held_karp(dm, false))});
        r.upper.push_back(
            {"half_hamilton_cycle", Rational((detail::held_karp(dm, true) + 1) / 2)});
    }
    BottleneckTree bt = bottleneck_spanning_tree(g);
    r.upper.push_back({"bottleneck_tree", Rational(bt.t * (g.n - 1))});
    if (is_tree_graph(g)) {
        long long total = 0;
        for (const Edge& e : g.edges) total += e.w;
        r.upper.push_back({"tree_weight", Rational(total)});
    }
    if (is_cycle_graph(g)) {
        long long total = 0, wmax = 0;
        for (const Edge& e : g.edges) {
            total += e.w;
            wmax = std::max(wmax, e.w);
        }
        // Realized by the rolling-ones cycle addressing, which needs every
        // edge to be a shortest path.
        if (2 * wmax <= total) r.upper.push_back({"half_cycle_weight", Rational((total + 1) / 2)});
    }
    return r;
}

/// Lower and upper closed-form bounds in one report.
inline BoundReport bounds_report(const WeightedGraph& g, int subset_cap = kDefaultSubsetCap,
                                 int held_karp_cap = kDefaultHeldKarpCap) {
    BoundReport r = lower_bounds(g, subset_cap);
    BoundReport u = upper_bounds(g, held_karp_cap);
    r.upper = std::move(u.upper);
    return r;
}

}  // namespace bsep
