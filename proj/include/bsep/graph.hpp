#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bsep/errors.hpp"

namespace bsep {

struct Edge {
    int u = 0;
    int v = 0;
    long long w = 1;
};

/// Simple undirected graph with positive integer edge weights.
/// Vertices are 0..n-1; parallel edges and self-loops are rejected.
struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;
};

struct DistanceMatrix {
    int n = 0;
    std::vector<long long> d;

    DistanceMatrix() = default;
    explicit DistanceMatrix(int size) : n(size), d(static_cast<size_t>(size) * size, 0) {}

    long long at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
    long long& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
};

inline void validate_graph(const WeightedGraph& g) {
    if (g.n < 1) throw ValidationError("vertex count must be at least 1");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : g.edges) {
        if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
            throw ValidationError("vertex index out of range: " + std::to_string(e.u) + " " +
                                  std::to_string(e.v));
        if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
        if (e.w < 1) throw ValidationError("edge weight must be a positive integer");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw ValidationError("duplicate edge " + std::to_string(key.first) + "-" +
                                  std::to_string(key.second));
    }
}

/// Parses the plain text graph format:
///   n m
///   u v w        (m such lines)
/// Lines starting with '#' and blank lines are skipped.
inline WeightedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    WeightedGraph g;
    long long m = -1;
    long long edges_read = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::istringstream ls(line);
        if (!header_seen) {
            long long n = 0;
            if (!(ls >> n >> m)) throw ParseError("expected header 'n m'", line_no);
            std::string extra;
            if (ls >> extra) throw ParseError("trailing tokens after header", line_no);
            if (n < 1) throw ValidationError("vertex count must be at least 1");
            if (n > 100000) throw SizeLimit("vertex count " + std::to_string(n) + " is too large");
            if (m < 0) throw ParseError("edge count must be nonnegative", line_no);
            g.n = static_cast<int>(n);
            header_seen = true;
        } else {
            if (edges_read == m) throw ParseError("more edge lines than declared", line_no);
            Edge e;
            if (!(ls >> e.u >> e.v >> e.w)) throw ParseError("expected edge 'u v w'", line_no);
            std::string extra;
            if (ls >> extra) throw ParseError("trailing tokens after edge", line_no);
            g.edges.push_back(e);
            ++edges_read;
        }
    }
    if (!header_seen) throw ParseError("empty graph description");
    if (edges_read != m) throw ParseError("fewer edge lines than declared");
    validate_graph(g);
    return g;
}

inline std::string format_graph(const WeightedGraph& g) {
    std::ostringstream out;
    out << g.n << " " << g.edges.size() << "\n";
    for (const Edge& e : g.edges) out << e.u << " " << e.v << " " << e.w << "\n";
    return out.str();
}

inline std::vector<std::vector<std::pair<int, long long>>> adjacency(const WeightedGraph& g) {
    std::vector<std::vector<std::pair<int, long long>>> adj(g.n);
    for (const Edge& e : g.edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    return adj;
}

inline bool is_connected(const WeightedGraph& g) {
    if (g.n <= 1) return true;
    auto adj = adjacency(g);
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, w] : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == g.n;
}

/// All-pairs shortest path distances (Floyd-Warshall on a dense matrix).
/// Throws DisconnectedError when some pair is unreachable.
inline DistanceMatrix all_pairs_distances(const WeightedGraph& g) {
    validate_graph(g);
    const long long INF = LLONG_MAX / 4;
    DistanceMatrix dm(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) dm.at(i, j) = i == j ? 0 : INF;
    for (const Edge& e : g.edges) {
        dm.at(e.u, e.v) = std::min(dm.at(e.u, e.v), e.w);
        dm.at(e.v, e.u) = std::min(dm.at(e.v, e.u), e.w);
    }
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i) {
            if (dm.at(i, k) == INF) continue;
            for (int j = 0; j < g.n; ++j) {
                long long via = dm.at(i, k) + dm.at(k, j);
                if (via < dm.at(i, j)) dm.at(i, j) = via;
            }
        }
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (dm.at(i, j) >= INF) throw DisconnectedError();
    return dm;
}

/// True when every edge is a shortest path between its endpoints.
inline bool is_weight_minimal(const WeightedGraph& g) {
    DistanceMatrix dm = all_pairs_distances(g);
    for (const Edge& e : g.edges)
        if (dm.at(e.u, e.v) != e.w) return false;
    return true;
}

inline long long diameter(const DistanceMatrix& dm) {
    long long best = 0;
    for (int i = 0; i < dm.n; ++i)
        for (int j = i + 1; j < dm.n; ++j) best = std::max(best, dm.at(i, j));
    return best;
}

inline long long diameter(const WeightedGraph& g) { return diameter(all_pairs_distances(g)); }

/// Complete graph on the same vertices with w(u,v) = d_G(u,v).
inline WeightedGraph metric_closure(const WeightedGraph& g) {
    DistanceMatrix dm = all_pairs_distances(g);
    WeightedGraph h;
    h.n = g.n;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) h.edges.push_back({i, j, dm.at(i, j)});
    return h;
}

/// Cartesian product. Vertex (i, j) of g1 x g2 is numbered i * g2.n + j.
inline WeightedGraph cartesian_product(const WeightedGraph& g1, const WeightedGraph& g2) {
    validate_graph(g1);
    validate_graph(g2);
    WeightedGraph p;
    p.n = g1.n * g2.n;
    for (const Edge& e : g1.edges)
        for (int j = 0; j < g2.n; ++j) p.edges.push_back({e.u * g2.n + j, e.v * g2.n + j, e.w});
    for (int i = 0; i < g1.n; ++i)
        for (const Edge& e : g2.edges)
            p.edges.push_back({i * g2.n + e.u, i * g2.n + e.v, e.w});
    return p;
}

inline long long log2_ceil(long long n) {
    long long l = 0;
    while ((1LL << l) < n) ++l;
    return l;
}

inline std::vector<int> degrees(const WeightedGraph& g) {
    std::vector<int> deg(g.n, 0);
    for (const Edge& e : g.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

inline bool is_tree_graph(const WeightedGraph& g) {
    return static_cast<int>(g.edges.size()) == g.n - 1 && is_connected(g);
}

inline bool is_path_graph(const WeightedGraph& g) {
    if (!is_tree_graph(g)) return false;
    for (int d : degrees(g))
        if (d > 2) return false;
    return true;
}

inline bool is_cycle_graph(const WeightedGraph& g) {
    if (g.n < 3 || static_cast<int>(g.edges.size()) != g.n) return false;
    for (int d : degrees(g))
        if (d != 2) return false;
    return is_connected(g);
}

inline bool is_complete_graph(const WeightedGraph& g) {
    return static_cast<long long>(g.edges.size()) == static_cast<long long>(g.n) * (g.n - 1) / 2 &&
           g.n >= 1;
}

inline bool has_unit_weights(const WeightedGraph& g) {
    for (const Edge& e : g.edges)
        if (e.w != 1) return false;
    return true;
}

/// Vertices of a path graph in order, starting from the lower-numbered endpoint.
inline std::vector<int> path_order(const WeightedGraph& g) {
    if (!is_path_graph(g)) throw ValidationError("graph is not a path");
    if (g.n == 1) return {0};
    auto deg = degrees(g);
    int start = -1;
    for (int i = 0; i < g.n; ++i)
        if (deg[i] == 1) {
            start = i;
            break;
        }
    auto adj = adjacency(g);
    std::vector<int> order = {start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < g.n) {
        for (auto [nxt, w] : adj[cur])
            if (nxt != prev) {
                order.push_back(nxt);
                prev = cur;
                cur = nxt;
                break;
            }
    }
    return order;
}

/// Vertices of a cycle graph in cyclic order, starting at vertex 0 and
/// moving toward its lower-numbered neighbour.
inline std::vector<int> cycle_order(const WeightedGraph& g) {
    if (!is_cycle_graph(g)) throw ValidationError("graph is not a cycle");
    auto adj = adjacency(g);
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    std::vector<int> order = {0};
    int prev = -1, cur = 0;
    while (static_cast<int>(order.size()) < g.n) {
        for (auto [nxt, w] : adj[cur])
            if (nxt != prev) {
                order.push_back(nxt);
                prev = cur;
                cur = nxt;
                break;
            }
    }
    return order;
}

/// Weight of the edge between two adjacent vertices.
inline long long edge_weight(const WeightedGraph& g, int u, int v) {
    for (const Edge& e : g.edges)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return e.w;
    throw ValidationError("no edge " + std::to_string(u) + "-" + std::to_string(v));
}

}  // namespace bsep
