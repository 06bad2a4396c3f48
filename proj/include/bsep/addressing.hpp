#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bsep/errors.hpp"
#include "bsep/graph.hpp"

namespace bsep {

/// n binary rows of a common length. Row i is the address of vertex i.
struct Addressing {
    int n = 0;
    int length = 0;
    std::vector<uint8_t> bits;

    Addressing() = default;
    Addressing(int rows, int len)
        : n(rows), length(len), bits(static_cast<size_t>(rows) * len, 0) {}

    uint8_t bit(int i, int j) const { return bits[static_cast<size_t>(i) * length + j]; }
    void set_bit(int i, int j, uint8_t v) { bits[static_cast<size_t>(i) * length + j] = v; }

    long long hamming(int i, int j) const {
        long long h = 0;
        const uint8_t* a = bits.data() + static_cast<size_t>(i) * length;
        const uint8_t* b = bits.data() + static_cast<size_t>(j) * length;
        for (int t = 0; t < length; ++t) h += a[t] != b[t];
        return h;
    }

    std::string row_string(int i) const {
        std::string s(length, '0');
        for (int j = 0; j < length; ++j)
            if (bit(i, j)) s[j] = '1';
        return s;
    }
};

/// Text format: header "n l", then n rows over {0,1}. '#' lines are comments.
inline Addressing parse_addressing(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    int n = 0, len = 0, rows_read = 0;
    Addressing a;
    while (std::getline(in, line)) {
        ++line_no;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!header_seen) {
            std::istringstream ls(line);
            if (!(ls >> n >> len)) throw ParseError("expected header 'n l'", line_no);
            if (n < 1 || len < 0) throw ParseError("invalid addressing dimensions", line_no);
            a = Addressing(n, len);
            header_seen = true;
            if (len == 0) rows_read = n;
        } else {
            if (rows_read == n) throw ParseError("more rows than declared", line_no);
            std::string row = line.substr(first);
            while (!row.empty() && (row.back() == '\r' || row.back() == ' ')) row.pop_back();
            if (static_cast<int>(row.size()) != len)
                throw ParseError("row has wrong length", line_no);
            for (int j = 0; j < len; ++j) {
                if (row[j] != '0' && row[j] != '1') throw ParseError("row must be over {0,1}", line_no);
                a.set_bit(rows_read, j, row[j] == '1');
            }
            ++rows_read;
        }
    }
    if (!header_seen) throw ParseError("empty addressing description");
    if (rows_read != n) throw ParseError("fewer rows than declared");
    return a;
}

inline std::string format_addressing(const Addressing& a) {
    std::ostringstream out;
    out << a.n << " " << a.length << "\n";
    if (a.length > 0)
        for (int i = 0; i < a.n; ++i) out << a.row_string(i) << "\n";
    return out.str();
}

struct SlackReport {
    bool valid = true;
    bool has_pairs = false;
    long long min_slack = 0;  // min over pairs of hamming - lambda * d
    int worst_i = -1;
    int worst_j = -1;
};

/// Checks hamming(i, j) >= lambda * d(i, j) for every pair and reports the
/// tightest pair.
inline SlackReport slack_report(const Addressing& a, const DistanceMatrix& dm,
                                long long lambda = 1) {
    if (a.n != dm.n)
        throw DimensionMismatch("addressing has " + std::to_string(a.n) + " rows, graph has " +
                                std::to_string(dm.n) + " vertices");
    if (lambda < 1) throw ValidationError("lambda must be a positive integer");
    SlackReport r;
    for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j) {
            long long slack = a.hamming(i, j) - lambda * dm.at(i, j);
            if (!r.has_pairs || slack < r.min_slack) {
                r.has_pairs = true;
                r.min_slack = slack;
                r.worst_i = i;
                r.worst_j = j;
            }
        }
    r.valid = !r.has_pairs || r.min_slack >= 0;
    return r;
}

inline bool verify(const Addressing& a, const DistanceMatrix& dm, long long lambda = 1) {
    return slack_report(a, dm, lambda).valid;
}

/// Path on k+1 vertices with edge weights w_1..w_k: vertex i gets prefix sum
/// s_i ones at the right end of sum(w) columns. Pairwise distance is exact.
inline Addressing path_addressing(const std::vector<long long>& weights) {
    if (weights.empty()) throw EmptyInput("path needs at least one edge");
    for (long long w : weights)
        if (w < 1) throw ValidationError("edge weight must be a positive integer");
    long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
    Addressing a(static_cast<int>(weights.size()) + 1, static_cast<int>(total));
    long long s = 0;
    for (int i = 0; i < a.n; ++i) {
        for (long long j = 0; j < s; ++j) a.set_bit(i, a.length - 1 - static_cast<int>(j), 1);
        if (i < a.n - 1) s += weights[i];
    }
    return a;
}

namespace detail {

// Address of position k on the unit cycle of length S, written with
// L = ceil(S/2) columns: a growing run of ones from the right for k <= L,
// then a shrinking run of ones from the left.
inline void unit_cycle_row(Addressing& a, int row, long long k, long long L) {
    if (k <= L)
        for (long long j = 0; j < k; ++j) a.set_bit(row, static_cast<int>(L - 1 - j), 1);
    else
        for (long long j = 0; j < 2 * L - k; ++j)
            a.set_bit(row, static_cast<int>(j), 1);
}

}  // namespace detail

/// Weight-minimal cycle with weights w_0..w_{n-1} (edge i joins vertex i to
/// i+1 mod n): subdivide into the unit cycle of length S = sum(w) and keep
/// the rows at the original vertices. Length ceil(S/2), optimal by the
/// triangle lower bound.
inline Addressing cycle_addressing(const std::vector<long long>& weights) {
    if (weights.size() < 3) throw ValidationError("cycle needs at least 3 edges");
    long long S = 0;
    for (long long w : weights) {
        if (w < 1) throw ValidationError("edge weight must be a positive integer");
        S += w;
    }
    for (long long w : weights)
        if (2 * w > S)
            throw NotWeightMinimal("cycle edge of weight " + std::to_string(w) +
                                   " exceeds the rest of the cycle");
    long long L = (S + 1) / 2;
    Addressing a(static_cast<int>(weights.size()), static_cast<int>(L));
    long long pos = 0;
    for (int i = 0; i < a.n; ++i) {
        detail::unit_cycle_row(a, i, pos, L);
        pos += weights[i];
    }
    return a;
}

/// Triangle with side lengths a <= b <= c (c = d(v0,v1), b = d(v0,v2),
/// a = d(v1,v2)). Rows {0^k, 1^c 0^(k-c), 0^(k-b) 1^b} with
/// k = ceil((a+b+c)/2), which is optimal.
inline Addressing triangle_addressing(long long a, long long b, long long c) {
    if (a < 1) throw ValidationError("side lengths must be positive integers");
    if (!(a <= b && b <= c)) throw ValidationError("side lengths must satisfy a <= b <= c");
    if (c > a + b)
        throw TriangleViolation("side " + std::to_string(c) + " exceeds " + std::to_string(a) +
                                " + " + std::to_string(b));
    long long k = (a + b + c + 1) / 2;
    Addressing addr(3, static_cast<int>(k));
    for (long long j = 0; j < c; ++j) addr.set_bit(1, static_cast<int>(j), 1);
    for (long long j = k - b; j < k; ++j) addr.set_bit(2, static_cast<int>(j), 1);
    return addr;
}

/// Exact (isometric) addressing of a tree: one block of w(e) identical
/// columns per edge, set in row v iff e lies on the root-to-v path.
inline Addressing tree_addressing(const WeightedGraph& g) {
    validate_graph(g);
    if (!is_tree_graph(g)) throw NotATree("graph is not a tree");
    long long total = 0;
    std::vector<long long> offset(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        offset[e] = total;
        total += g.edges[e].w;
    }
    std::map<std::pair<int, int>, int> edge_id;
    for (size_t e = 0; e < g.edges.size(); ++e)
        edge_id[std::minmax(g.edges[e].u, g.edges[e].v)] = static_cast<int>(e);

    auto adj = adjacency(g);
    std::vector<int> parent(g.n, -1), order;
    std::vector<char> seen(g.n, 0);
    order.push_back(0);
    seen[0] = 1;
    for (size_t h = 0; h < order.size(); ++h) {
        int u = order[h];
        for (auto [v, w] : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                parent[v] = u;
                order.push_back(v);
            }
    }

    Addressing a(g.n, static_cast<int>(total));
    for (int v = 0; v < g.n; ++v)
        for (int cur = v; parent[cur] != -1; cur = parent[cur]) {
            int e = edge_id[std::minmax(cur, parent[cur])];
            for (long long j = 0; j < g.edges[e].w; ++j)
                a.set_bit(v, static_cast<int>(offset[e] + j), 1);
        }
    return a;
}

/// Unit complete graph on n vertices: distinct binary counter values of
/// ceil(log2 n) bits.
inline Addressing complete_graph_addressing(int n) {
    if (n < 1) throw ValidationError("vertex count must be at least 1");
    int len = 0;
    while ((1LL << len) < n) ++len;
    Addressing a(n, len);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < len; ++j) a.set_bit(i, j, (i >> (len - 1 - j)) & 1);
    return a;
}

/// Doubled binary Hadamard code from the order-2^k Sylvester matrix:
/// 2^(k+1) codewords of length 2^k. Codeword i < 2^k at position j is
/// parity(popcount(i & j)); codewords 2^k..2^(k+1)-1 are the complements.
/// Distinct non-complementary codewords are at distance exactly 2^(k-1).
inline Addressing hadamard_code(int k) {
    if (k < 0) throw ValidationError("order exponent must be nonnegative");
    if (k > 13) throw SizeLimit("hadamard order 2^" + std::to_string(k) + " is too large");
    long long len = 1LL << k;
    Addressing a(static_cast<int>(2 * len), static_cast<int>(len));
    for (long long i = 0; i < len; ++i)
        for (long long j = 0; j < len; ++j) {
            uint8_t bit = __builtin_parityll(i & j);
            a.set_bit(static_cast<int>(i), static_cast<int>(j), bit);
            a.set_bit(static_cast<int>(len + i), static_cast<int>(j), bit ^ 1);
        }
    return a;
}

/// Any graph, any stretch: n distinct rows of the Sylvester matrix of the
/// smallest order 2^k >= max(n, 2 * lambda * diam) give pairwise distance
/// 2^(k-1) >= lambda * diam. Length is below 2 * max(n, 2 * lambda * diam).
inline Addressing hadamard_addressing(const DistanceMatrix& dm, long long lambda = 1) {
    if (lambda < 1) throw ValidationError("lambda must be a positive integer");
    long long need = std::max<long long>(dm.n, 2 * lambda * diameter(dm));
    int k = 0;
    while ((1LL << k) < need) ++k;
    long long len = 1LL << k;
    if (k > 13) throw SizeLimit("required hadamard order 2^" + std::to_string(k) + " is too large");
    Addressing a(dm.n, static_cast<int>(len));
    for (int i = 0; i < dm.n; ++i)
        for (long long j = 0; j < len; ++j)
            a.set_bit(i, static_cast<int>(j), __builtin_parityll(static_cast<long long>(i) & j));
    return a;
}

namespace detail {

inline void require_metric(const DistanceMatrix& dm) {
    for (int i = 0; i < dm.n; ++i) {
        if (dm.at(i, i) != 0) throw ValidationError("distance matrix has nonzero diagonal");
        for (int j = 0; j < dm.n; ++j) {
            if (dm.at(i, j) != dm.at(j, i)) throw ValidationError("distance matrix not symmetric");
            if (i != j && dm.at(i, j) < 1)
                throw ValidationError("off-diagonal distances must be positive");
        }
    }
    for (int i = 0; i < dm.n; ++i)
        for (int j = 0; j < dm.n; ++j)
            for (int k = 0; k < dm.n; ++k)
                if (dm.at(i, j) > dm.at(i, k) + dm.at(k, j))
                    throw NotWeightMinimal("distances violate the triangle inequality");
}

}  // namespace detail

/// Optimal addressing of a 4-point metric, length max over the four
/// triangles of ceil(perimeter / 2). The maximum triangle is addressed as in
/// triangle_addressing; the fourth vertex gets the XOR of two triangle rows,
/// with gamma ones removed when its distance to the opposite triangle vertex
/// overshoots by gamma.
inline Addressing k4_addressing(const DistanceMatrix& dm) {
    if (dm.n != 4) throw WrongSize("k4_addressing needs exactly 4 vertices");
    detail::require_metric(dm);

    long long best = -1;
    int skip = -1;
    for (int x = 0; x < 4; ++x) {
        std::vector<int> tri;
        for (int i = 0; i < 4; ++i)
            if (i != x) tri.push_back(i);
        long long perim = dm.at(tri[0], tri[1]) + dm.at(tri[0], tri[2]) + dm.at(tri[1], tri[2]);
        if (perim > best) {
            best = perim;
            skip = x;
        }
    }
    std::vector<int> tri;
    for (int i = 0; i < 4; ++i)
        if (i != skip) tri.push_back(i);
    int x = skip;

    // At most one triangle vertex can be farther from x than its opposite
    // edge; make it z. Roles: c = d(u,v), b = d(u,z), a = d(v,z).
    int z = tri[2];
    for (int t = 0; t < 3; ++t) {
        long long opposite = dm.at(tri[(t + 1) % 3], tri[(t + 2) % 3]);
        if (dm.at(tri[t], x) > opposite) z = tri[t];
    }
    std::vector<int> uv;
    for (int t : tri)
        if (t != z) uv.push_back(t);
    int u = uv[0], v = uv[1];
    long long c = dm.at(u, v), b = dm.at(u, z), a = dm.at(v, z);
    long long gamma = std::max(0LL, dm.at(z, x) - c);
    long long k = (a + b + c + 1) / 2;

    Addressing addr(4, static_cast<int>(k));
    for (long long j = 0; j < c; ++j) addr.set_bit(v, static_cast<int>(j), 1);
    for (long long j = k - b; j < k; ++j) addr.set_bit(z, static_cast<int>(j), 1);
    // x = row(v) xor row(z), then clear gamma ones inside [c, k).
    for (long long j = 0; j < k; ++j)
        addr.set_bit(x, static_cast<int>(j),
                     addr.bit(v, static_cast<int>(j)) ^ addr.bit(z, static_cast<int>(j)));
    for (long long j = c; j < c + gamma; ++j) addr.set_bit(x, static_cast<int>(j), 0);

    if (!verify(addr, dm, 1))
        throw SolverSelfCheckError("k4_addressing produced an invalid addressing");
    return addr;
}

/// Addressing of a Cartesian product from factor addressings: the row of
/// product vertex (i, j) = i * a2.n + j is row i of a1 followed by row j
/// of a2.
inline Addressing concat(const Addressing& a1, const Addressing& a2) {
    Addressing a(a1.n * a2.n, a1.length + a2.length);
    for (int i = 0; i < a1.n; ++i)
        for (int j = 0; j < a2.n; ++j) {
            int row = i * a2.n + j;
            for (int t = 0; t < a1.length; ++t) a.set_bit(row, t, a1.bit(i, t));
            for (int t = 0; t < a2.length; ++t) a.set_bit(row, a1.length + t, a2.bit(j, t));
        }
    return a;
}

/// Column-wise concatenation of two addressings of the same vertex set.
inline Addressing append_columns(const Addressing& a1, const Addressing& a2) {
    if (a1.n != a2.n) throw DimensionMismatch("addressings have different vertex counts");
    Addressing a(a1.n, a1.length + a2.length);
    for (int i = 0; i < a1.n; ++i) {
        for (int t = 0; t < a1.length; ++t) a.set_bit(i, t, a1.bit(i, t));
        for (int t = 0; t < a2.length; ++t) a.set_bit(i, a1.length + t, a2.bit(i, t));
    }
    return a;
}

}  // namespace bsep
