#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "bsep/addressing.hpp"
#include "bsep/bounds.hpp"
#include "bsep/errors.hpp"
#include "bsep/exact.hpp"
#include "bsep/graph.hpp"
#include "bsep/rational.hpp"

namespace bsep {

/// Lower bound functionals that interact well with Cartesian products:
/// superadditive over factors, so matching the additive upper bound
/// certifies exactness.
struct ProperFunction {
    enum class Kind { LogVertices, Diameter, TrianglePlotkin, SubsetPlotkin };
    Kind kind = Kind::Diameter;
    int subset_size = 0;  // SubsetPlotkin only; even, between 4 and 6

    std::string name() const {
        switch (kind) {
            case Kind::LogVertices: return "log2_vertices";
            case Kind::Diameter: return "diameter";
            case Kind::TrianglePlotkin: return "triangle_plotkin";
            case Kind::SubsetPlotkin: return "subset_plotkin_" + std::to_string(subset_size);
        }
        return "unknown";
    }

    /// Lower bound on c implied by the value: beta-type bounds get a ceiling.
    bool integral() const { return kind == Kind::LogVertices || kind == Kind::Diameter; }
};

namespace detail {

inline void fixed_subset_best(const DistanceMatrix& dm, std::vector<int>& chosen, int next,
                              long long pair_sum, int size, Rational& best) {
    if (static_cast<int>(chosen.size()) == size) {
        Rational v(pair_sum, static_cast<long long>(size) * size / 4);
        if (v > best) best = v;
        return;
    }
    int needed = size - static_cast<int>(chosen.size());
    for (int u = next; u + needed <= dm.n; ++u) {
        long long add = 0;
        for (int c : chosen) add += dm.at(c, u);
        chosen.push_back(u);
        fixed_subset_best(dm, chosen, u + 1, pair_sum + add, size, best);
        chosen.pop_back();
    }
}

}  // namespace detail

/// Evaluates a proper function on metric closure distances.
inline Rational proper_value(const ProperFunction& f, const DistanceMatrix& dm) {
    switch (f.kind) {
        case ProperFunction::Kind::LogVertices:
            return Rational(log2_ceil(dm.n));
        case ProperFunction::Kind::Diameter:
            return Rational(diameter(dm));
        case ProperFunction::Kind::TrianglePlotkin: {
            Rational best = 0;
            for (int i = 0; i < dm.n; ++i)
                for (int j = i + 1; j < dm.n; ++j)
                    for (int k = j + 1; k < dm.n; ++k) {
                        Rational v(dm.at(i, j) + dm.at(i, k) + dm.at(j, k), 2);
                        if (v > best) best = v;
                    }
            return best;
        }
        case ProperFunction::Kind::SubsetPlotkin: {
            if (f.subset_size < 4 || f.subset_size > 6 || f.subset_size % 2 != 0)
                throw ValidationError("subset size must be 4 or 6");
            Rational best = 0;
            std::vector<int> chosen;
            detail::fixed_subset_best(dm, chosen, 0, 0, f.subset_size, best);
            return best;
        }
    }
    throw ValidationError("unknown proper function");
}

inline Rational proper_value(const ProperFunction& f, const WeightedGraph& g) {
    return proper_value(f, all_pairs_distances(g));
}

/// Concatenation addressing for an iterated Cartesian product, folding left
/// to match the product vertex numbering.
inline Addressing product_upper(const std::vector<Addressing>& addrs) {
    if (addrs.empty()) throw EmptyInput("no factor addressings");
    Addressing acc = addrs[0];
    for (size_t i = 1; i < addrs.size(); ++i) acc = concat(acc, addrs[i]);
    return acc;
}

struct FactorResult {
    long long c = 0;
    std::string method;  // "path", "cycle", "unit_clique", "four_vertex", "search", "trivial"
    Addressing addressing;
};

namespace detail {

inline Addressing remap_rows(const Addressing& a, const std::vector<int>& vertex_of_row) {
    Addressing out(a.n, a.length);
    for (int k = 0; k < a.n; ++k)
        for (int j = 0; j < a.length; ++j) out.set_bit(vertex_of_row[k], j, a.bit(k, j));
    return out;
}

}  // namespace detail

/// Exact c with an optimal addressing for one product factor. Recognized
/// families have closed forms; anything else small goes through the exact
/// solver.
inline FactorResult factor_exact(const WeightedGraph& g, const SearchConfig& cfg = SearchConfig()) {
    FactorResult r;
    if (g.n == 1) {
        r.c = 0;
        r.method = "trivial";
        r.addressing = Addressing(1, 0);
        return r;
    }
    if (is_path_graph(g)) {
        auto order = path_order(g);
        std::vector<long long> weights;
        for (size_t i = 0; i + 1 < order.size(); ++i)
            weights.push_back(edge_weight(g, order[i], order[i + 1]));
        Addressing a = path_addressing(weights);
        r.c = a.length;
        r.method = "path";
        r.addressing = detail::remap_rows(a, order);
        return r;
    }
    if (is_cycle_graph(g) && is_weight_minimal(g)) {
        auto order = cycle_order(g);
        std::vector<long long> weights;
        for (size_t i = 0; i < order.size(); ++i)
            weights.push_back(edge_weight(g, order[i], order[(i + 1) % order.size()]));
        Addressing a = cycle_addressing(weights);
        r.c = a.length;
        r.method = "cycle";
        r.addressing = detail::remap_rows(a, order);
        return r;
    }
    if (is_complete_graph(g) && has_unit_weights(g)) {
        r.addressing = complete_graph_addressing(g.n);
        r.c = r.addressing.length;
        r.method = "unit_clique";
        return r;
    }
    if (g.n == 4 && is_weight_minimal(g)) {
        r.addressing = k4_addressing(all_pairs_distances(g));
        r.c = r.addressing.length;
        r.method = "four_vertex";
        return r;
    }
    if (g.n > 12) throw SizeLimit("factor outside the recognized families is too large");
    ExactResult ex = branch_and_bound_c(all_pairs_distances(g), 1, cfg);
    r.c = ex.value;
    r.method = "search";
    r.addressing = ex.witness;
    return r;
}

struct ProductCertificate {
    bool certified = false;
    std::string rule;          // certifying proper function, or "none"
    Rational lower_value = 0;  // its value on the product
    long long upper = 0;       // sum of factor optima = concatenation length
    long long product_c = 0;   // exact value when certified
    std::vector<FactorResult> factors;
    Addressing witness;
};

/// Tries to certify c(product) = sum of factor optima by evaluating proper
/// functions on the product metric. A missing certificate is a valid
/// outcome: the inequality c <= sum always holds via the witness.
inline ProductCertificate certify_product_exact(const std::vector<WeightedGraph>& factors,
                                                const SearchConfig& cfg = SearchConfig()) {
    if (factors.empty()) throw EmptyInput("no factors");
    ProductCertificate cert;
    WeightedGraph product = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) product = cartesian_product(product, factors[i]);
    if (product.n > 4096) throw SizeLimit("product graph is too large");

    std::vector<Addressing> addrs;
    for (const auto& f : factors) {
        cert.factors.push_back(factor_exact(f, cfg));
        cert.upper += cert.factors.back().c;
        addrs.push_back(cert.factors.back().addressing);
    }
    cert.witness = product_upper(addrs);
    DistanceMatrix dm = all_pairs_distances(product);
    if (!verify(cert.witness, dm, 1))
        throw SolverSelfCheckError("concatenation witness failed verification");

    std::vector<ProperFunction> candidates = {
        {ProperFunction::Kind::LogVertices, 0},
        {ProperFunction::Kind::Diameter, 0},
        {ProperFunction::Kind::TrianglePlotkin, 0},
        {ProperFunction::Kind::SubsetPlotkin, 4},
        {ProperFunction::Kind::SubsetPlotkin, 6},
    };
    cert.rule = "none";
    for (const auto& f : candidates) {
        if (f.kind == ProperFunction::Kind::SubsetPlotkin && dm.n < f.subset_size) continue;
        Rational v = proper_value(f, dm);
        long long lower = f.integral() ? to_int64(numerator(v)) : ceil_to_int64(v);
        if (lower > cert.upper)
            throw SolverSelfCheckError("lower bound exceeds the concatenation upper bound");
        if (lower == cert.upper) {
            cert.certified = true;
            cert.rule = f.name();
            cert.lower_value = v;
            cert.product_c = cert.upper;
            break;
        }
    }
    return cert;
}

}  // namespace bsep
